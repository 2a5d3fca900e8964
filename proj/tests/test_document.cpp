#include <gtest/gtest.h>

#include "fpcohom/document.hpp"
#include "fpcohom/oracle.hpp"

using namespace fpcohom;

namespace {

std::string doc_with_entries(const std::string& entries, const std::string& ring = "Fp", int n = 1) {
    return R"({"schema_version":"1","p":3,"r":2,"n":)" + std::to_string(n) + R"(,"kind":"icochain","coeff_ring":")" +
           ring + R"(","entries":[)" + entries + "]}";
}

std::string error_of(const std::string& text) {
    try {
        parse_cochain(text);
    } catch (const DocumentError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(CochainDocument, RoundTrip) {
    for (auto [p, r] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {5, 1}}) {
        const GroupContext ctx(p, r);
        for (int n = 0; n <= 3; ++n) {
            const ICochain f = random_cochain(ctx, n, 10 + static_cast<std::uint64_t>(n));
            const std::string text = dump(to_json(f));
            const AnyCochain back = parse_cochain(text);
            ASSERT_TRUE(std::holds_alternative<ICochain>(back));
            EXPECT_EQ(std::get<ICochain>(back), f);
            EXPECT_EQ(dump(to_json(back)), text);

            const NormalizedCochain a = correspond_back(f);
            const AnyCochain back_a = parse_cochain(dump(to_json(a)));
            ASSERT_TRUE(std::holds_alternative<NormalizedCochain>(back_a));
            EXPECT_EQ(std::get<NormalizedCochain>(back_a), a);
        }
    }
}

TEST(CochainDocument, IntegerValues) {
    const GroupContext ctx(3, 1);
    const NormalizedCochain z = z_tilde_gen(ctx, 1).scaled(-4);
    const AnyCochain back = parse_cochain(dump(to_json(z)));
    EXPECT_EQ(std::get<NormalizedCochain>(back), z);
    EXPECT_NE(dump(to_json(z)).find("\"coeff_ring\": \"Z\""), std::string::npos);
}

TEST(CochainDocument, EntriesAreSorted) {
    const GroupContext ctx(3, 1);
    ICochain f(ctx, 2, CoeffRing::ModP);
    f.set({ctx.elem({2}), ctx.elem({1})}, 1);
    f.set({ctx.elem({1}), ctx.elem({2})}, 2);
    const Json j = to_json(f);
    EXPECT_EQ(j["entries"][0]["key"], Json::parse("[[1],[2]]"));
    EXPECT_EQ(j["entries"][1]["key"], Json::parse("[[2],[1]]"));
}

TEST(CochainDocument, Validation) {
    EXPECT_EQ(error_of(doc_with_entries(R"({"key":[[1,0]],"value":1})")), "");
    EXPECT_NE(error_of("{not json"), "");
    EXPECT_NE(error_of(R"({"p":3})").find("schema_version"), std::string::npos);
    EXPECT_NE(error_of(doc_with_entries(R"({"key":[[1,0]],"value":1},{"key":[[0,0]],"value":1})")).find("entries[1]"),
              std::string::npos);
    EXPECT_NE(error_of(doc_with_entries(R"({"key":[[1,0]],"value":1},{"key":[[1,0]],"value":2})")).find("duplicate"),
              std::string::npos);
    EXPECT_NE(error_of(doc_with_entries(R"({"key":[[1,0]],"value":0})")).find("entries[0]"), std::string::npos);
    EXPECT_NE(error_of(doc_with_entries(R"({"key":[[1,0]],"value":3})")).find("entries[0]"), std::string::npos);
    EXPECT_NE(error_of(doc_with_entries(R"({"key":[[1,0]],"value":-1})")).find("entries[0]"), std::string::npos);
    EXPECT_EQ(error_of(doc_with_entries(R"({"key":[[1,0]],"value":-7})", "Z")), "");
    EXPECT_NE(error_of(doc_with_entries(R"({"key":[[3,0]],"value":1})")).find("entries[0]"), std::string::npos);
    EXPECT_NE(error_of(doc_with_entries(R"({"key":[[1]],"value":1})")).find("entries[0]"), std::string::npos);
    EXPECT_NE(error_of(doc_with_entries(R"({"key":[[1,0],[1,0]],"value":1})")).find("entries[0]"), std::string::npos);
    EXPECT_NE(error_of(doc_with_entries(R"({"key":[[1,0]],"value":1,"extra":2})")).find("extra"), std::string::npos);
    EXPECT_NE(error_of(doc_with_entries("", "Q")).find("coeff_ring"), std::string::npos);
    EXPECT_NE(error_of(R"({"schema_version":"1","p":4,"r":1,"n":1,"kind":"icochain","coeff_ring":"Fp","entries":[]})"), "");
    EXPECT_NE(error_of(R"({"schema_version":"1","p":3,"r":1,"n":1,"kind":"bar","coeff_ring":"Fp","entries":[]})").find("kind"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"schema_version":"2","p":3,"r":1,"n":1,"kind":"icochain","coeff_ring":"Fp","entries":[]})"), "");
    EXPECT_NE(error_of(R"({"schema_version":"1","p":3,"r":1,"n":100,"kind":"icochain","coeff_ring":"Fp","entries":[]})"), "");
}

TEST(AlgebraDocument, RoundTripAndValidation) {
    const GroupContext ctx(5, 2);
    AlgebraElem e(ctx);
    e.add_term(MonomialSig{{2, 1}}, 3);
    e.add_term(MonomialSig{{0, 3}}, 4);
    const std::string text = dump(to_json(e));
    EXPECT_EQ(parse_algebra(text), e);
    EXPECT_EQ(dump(to_json(parse_algebra(text))), text);
    EXPECT_EQ(parse_algebra(R"({"schema_version":"1","p":5,"r":2,"entries":[]})"), AlgebraElem(ctx));
    EXPECT_THROW(parse_algebra(R"({"schema_version":"1","p":5,"r":2,"entries":[{"signature":[1,0],"coeff":5}]})"),
                 DocumentError);
    EXPECT_THROW(parse_algebra(R"({"schema_version":"1","p":5,"r":2,"entries":[{"signature":[1],"coeff":1}]})"),
                 DocumentError);
    EXPECT_THROW(parse_algebra(R"({"schema_version":"1","p":5,"r":2,"entries":[{"signature":[1,0],"coeff":1},{"signature":[1,0],"coeff":2}]})"),
                 DocumentError);
}
