#pragma once

// JSON interchange for cochains and algebra elements. Keys are tuples of
// exponent vectors; output is sorted so equal values serialize to equal bytes.

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fpcohom/algebra.hpp"
#include "fpcohom/cochain.hpp"

namespace fpcohom {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

// Malformed or invalid input document.
class DocumentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using AnyCochain = std::variant<NormalizedCochain, ICochain>;

namespace detail {

inline const Json& require_field(const Json& obj, const char* name, const std::string& where) {
    auto it = obj.find(name);
    if (it == obj.end()) throw DocumentError(where + ": missing field \"" + name + "\"");
    return *it;
}

inline std::int64_t require_int(const Json& obj, const char* name, const std::string& where) {
    const Json& v = require_field(obj, name, where);
    if (!v.is_number_integer()) throw DocumentError(where + ": field \"" + name + "\" must be an integer");
    return v.get<std::int64_t>();
}

inline void reject_unknown(const Json& obj, std::initializer_list<const char*> known, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw DocumentError(where + ": unknown field \"" + it.key() + "\"");
    }
}

inline GroupContext parse_context(const Json& doc) {
    const std::int64_t p = require_int(doc, "p", "document");
    const std::int64_t r = require_int(doc, "r", "document");
    if (p < 2 || p > (1 << 24) || r < 1 || r > 24) throw DocumentError("document: p or r out of range");
    try {
        return GroupContext(static_cast<int>(p), static_cast<int>(r));
    } catch (const std::exception& e) {
        throw DocumentError(std::string("document: ") + e.what());
    }
}

inline void check_header(const Json& doc) {
    if (!doc.is_object()) throw DocumentError("document: top level must be an object");
    const Json& v = require_field(doc, "schema_version", "document");
    if (!v.is_string() || v.get<std::string>() != kSchemaVersion)
        throw DocumentError(std::string("document: schema_version must be \"") + kSchemaVersion + "\"");
}

inline Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw DocumentError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace detail

// ---- cochains ----

template <CochainKind Kind>
Json to_json(const Cochain<Kind>& f) {
    const GroupContext& ctx = f.ctx();
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["p"] = ctx.p();
    doc["r"] = ctx.r();
    doc["n"] = f.degree();
    doc["kind"] = Kind == CochainKind::I ? "icochain" : "normalized";
    doc["coeff_ring"] = to_string(f.ring());
    Json entries = Json::array();
    for (const auto& [key, value] : f.sorted_entries()) {
        Json k = Json::array();
        for (GroupElem g : f.codec().decode(key)) k.push_back(ctx.exponents(g));
        Json e;
        e["key"] = std::move(k);
        e["value"] = value;
        entries.push_back(std::move(e));
    }
    doc["entries"] = std::move(entries);
    return doc;
}

inline Json to_json(const AnyCochain& f) {
    return std::visit([](const auto& c) { return to_json(c); }, f);
}

inline AnyCochain cochain_from_json(const Json& doc) {
    detail::check_header(doc);
    detail::reject_unknown(doc, {"schema_version", "p", "r", "n", "kind", "coeff_ring", "entries"}, "document");
    const GroupContext ctx = detail::parse_context(doc);
    const std::int64_t n = detail::require_int(doc, "n", "document");
    if (n < 0 || n > 64) throw DocumentError("document: n out of range");

    const Json& kind_j = detail::require_field(doc, "kind", "document");
    const std::string kind = kind_j.is_string() ? kind_j.get<std::string>() : "";
    if (kind != "normalized" && kind != "icochain")
        throw DocumentError("document: kind must be \"normalized\" or \"icochain\"");

    const Json& ring_j = detail::require_field(doc, "coeff_ring", "document");
    const std::string ring_s = ring_j.is_string() ? ring_j.get<std::string>() : "";
    if (ring_s != "Z" && ring_s != "Fp") throw DocumentError("document: coeff_ring must be \"Z\" or \"Fp\"");
    const CoeffRing ring = ring_s == "Z" ? CoeffRing::Integers : CoeffRing::ModP;

    ICochain f = [&] {
        try {
            return ICochain(ctx, static_cast<int>(n), ring);
        } catch (const std::exception& e) {
            throw DocumentError(std::string("document: ") + e.what());
        }
    }();

    const Json& entries = detail::require_field(doc, "entries", "document");
    if (!entries.is_array()) throw DocumentError("document: entries must be an array");
    std::vector<GroupElem> tuple(static_cast<std::size_t>(n));
    for (std::size_t idx = 0; idx < entries.size(); ++idx) {
        const std::string where = "entries[" + std::to_string(idx) + "]";
        const Json& e = entries[idx];
        if (!e.is_object()) throw DocumentError(where + ": must be an object");
        detail::reject_unknown(e, {"key", "value"}, where);
        const Json& key = detail::require_field(e, "key", where);
        if (!key.is_array() || key.size() != static_cast<std::size_t>(n))
            throw DocumentError(where + ": key must list " + std::to_string(n) + " exponent vectors");
        for (std::size_t j = 0; j < key.size(); ++j) {
            const Json& vec = key[j];
            if (!vec.is_array() || vec.size() != static_cast<std::size_t>(ctx.r()))
                throw DocumentError(where + ": key[" + std::to_string(j) + "] must have " + std::to_string(ctx.r()) +
                                    " exponents");
            std::vector<int> exps;
            for (const Json& x : vec) {
                if (!x.is_number_integer() || x.get<std::int64_t>() < 0 || x.get<std::int64_t>() >= ctx.p())
                    throw DocumentError(where + ": exponents must be integers in [0, " + std::to_string(ctx.p()) + ")");
                exps.push_back(x.get<int>());
            }
            tuple[j] = ctx.elem(exps);
            if (tuple[j].is_identity()) throw DocumentError(where + ": key[" + std::to_string(j) + "] is the identity");
        }
        const Json& v = detail::require_field(e, "value", where);
        if (!v.is_number_integer()) throw DocumentError(where + ": value must be an integer");
        const std::int64_t value = v.get<std::int64_t>();
        if (value == 0) throw DocumentError(where + ": value must be nonzero");
        if (ring == CoeffRing::ModP && (value < 0 || value >= ctx.p()))
            throw DocumentError(where + ": value must lie in [1, " + std::to_string(ctx.p()) + ")");
        const std::uint64_t k = f.codec().encode(tuple);
        if (f.value_at(k) != 0) throw DocumentError(where + ": duplicate key");
        f.add_at(k, value);
    }
    if (kind == "icochain") return f;
    return correspond_back(f);
}

inline AnyCochain parse_cochain(const std::string& text) { return cochain_from_json(detail::parse_text(text)); }

// ---- algebra elements ----

inline Json to_json(const AlgebraElem& e) {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["p"] = e.ctx().p();
    doc["r"] = e.ctx().r();
    Json entries = Json::array();
    for (const auto& [sig, c] : e.terms()) {
        Json t;
        t["signature"] = sig.n;
        t["coeff"] = c;
        entries.push_back(std::move(t));
    }
    doc["entries"] = std::move(entries);
    return doc;
}

inline AlgebraElem algebra_from_json(const Json& doc) {
    detail::check_header(doc);
    detail::reject_unknown(doc, {"schema_version", "p", "r", "entries"}, "document");
    const GroupContext ctx = detail::parse_context(doc);
    AlgebraElem out(ctx);
    const Json& entries = detail::require_field(doc, "entries", "document");
    if (!entries.is_array()) throw DocumentError("document: entries must be an array");
    std::set<MonomialSig> seen;
    for (std::size_t idx = 0; idx < entries.size(); ++idx) {
        const std::string where = "entries[" + std::to_string(idx) + "]";
        const Json& e = entries[idx];
        if (!e.is_object()) throw DocumentError(where + ": must be an object");
        detail::reject_unknown(e, {"signature", "coeff"}, where);
        const Json& s = detail::require_field(e, "signature", where);
        if (!s.is_array() || s.size() != static_cast<std::size_t>(ctx.r()))
            throw DocumentError(where + ": signature must have " + std::to_string(ctx.r()) + " entries");
        MonomialSig sig;
        for (const Json& x : s) {
            if (!x.is_number_integer() || x.get<std::int64_t>() < 0 || x.get<std::int64_t>() > 64)
                throw DocumentError(where + ": signature entries must be integers in [0, 64]");
            sig.n.push_back(x.get<int>());
        }
        const std::int64_t c = detail::require_int(e, "coeff", where);
        if (c < 1 || c >= ctx.p()) throw DocumentError(where + ": coeff must lie in [1, " + std::to_string(ctx.p()) + ")");
        if (!seen.insert(sig).second) throw DocumentError(where + ": duplicate signature");
        out.add_term(std::move(sig), c);
    }
    return out;
}

inline AlgebraElem parse_algebra(const std::string& text) { return algebra_from_json(detail::parse_text(text)); }

// Canonical text form: two-space indentation and a trailing newline.
inline std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DocumentError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace fpcohom
