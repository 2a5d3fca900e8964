// fpcohom: command-line front end. Results go to stdout, diagnostics to
// stderr. Exit codes: 0 ok, 1 invalid input, 2 not a cocycle, 3 over budget,
// 64 bad usage.

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fpcohom.hpp"
#include "fpcohom/acceptance.hpp"

using namespace fpcohom;

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitNotCocycle = 2;
constexpr int kExitBudget = 3;
constexpr int kExitUsage = 64;

ICochain as_icochain(const AnyCochain& c) {
    if (const auto* f = std::get_if<ICochain>(&c)) return *f;
    return correspond(std::get<NormalizedCochain>(c));
}

MonomialSig parse_sig(const std::string& text, int r) {
    MonomialSig sig;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = -1;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || v < 0 || v > 64) throw DocumentError("--sig: bad entry \"" + item + "\"");
        sig.n.push_back(v);
    }
    if (static_cast<int>(sig.n.size()) != r)
        throw DocumentError("--sig has " + std::to_string(sig.n.size()) + " entries, expected r = " + std::to_string(r));
    return sig;
}

// Shared by `invert` and `selftest`.
AlgebraElem invert_document(const AnyCochain& doc, bool normalized_route, bool unchecked) {
    ICochain f = as_icochain(doc);
    if (f.ring() == CoeffRing::Integers) f = f.reduced_mod_p();
    if (!unchecked && !coboundary_I(f).is_zero())
        throw NotACocycle("input is not a cocycle (its coboundary has " + std::to_string(coboundary_I(f).size()) +
                          " nonzero entries)");
    return normalized_route ? theta_normalized(correspond_back(f)) : theta(f);
}

// Every basis signature of degree <= 4 at each desk context, through the
// document layer: tau -> JSON -> parse -> invert -> JSON -> parse.
acceptance::Result cli_round_trip() {
    acceptance::Result res{9, "document round trip invert(tau(sig)) = sig", true, "", 0};
    std::uint64_t count = 0;
    try {
        for (const auto c : acceptance::desk_contexts()) {
            const GroupContext ctx(c.p, c.r);
            for (int n = 0; n <= 4 && res.passed; ++n)
                for (const MonomialSig& s : basis_monomials(c.r, n)) {
                    ++count;
                    for (bool normalized : {false, true}) {
                        const ICochain t = tau_monomial(ctx, s);
                        const std::string text =
                            normalized ? dump(to_json(correspond_back(t))) : dump(to_json(t));
                        const AlgebraElem back =
                            parse_algebra(dump(to_json(invert_document(parse_cochain(text), normalized, false))));
                        if (!(back == AlgebraElem::monomial(ctx, s))) {
                            res.passed = false;
                            res.detail = "mismatch at p=" + std::to_string(c.p) + " r=" + std::to_string(c.r) +
                                         " sig " + acceptance::detail::sig_str(s);
                        }
                    }
                }
        }
    } catch (const std::exception& e) {
        res.passed = false;
        res.detail = std::string("exception: ") + e.what();
    }
    if (res.passed) res.detail = std::to_string(count) + " signatures";
    return res;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mod-p cohomology of elementary abelian p-groups at cochain level"};
    app.require_subcommand(1);

    std::string in_path;
    bool as_normalized = false, use_icochain = false, unchecked = false;
    auto* invert = app.add_subcommand("invert", "Apply the inverse map to a cocycle document");
    invert->add_option("--in", in_path, "Cochain document")->required();
    auto* norm_flag = invert->add_flag("--normalized", as_normalized, "Use the normalized-cochain formula");
    invert->add_flag("--icochain", use_icochain, "Use the I-cochain formula")->excludes(norm_flag);
    invert->add_flag("--unchecked", unchecked, "Skip the cocycle check");

    std::string sig_text, kind = "icochain";
    int p = 0, r = 0, n = 0, max_n = 0;
    auto* tau_cmd = app.add_subcommand("tau", "Cocycle representing a basis monomial");
    tau_cmd->add_option("--sig", sig_text, "Comma-separated signature n_1,...,n_r")->required();
    tau_cmd->add_option("--p", p, "Prime")->required();
    tau_cmd->add_option("--r", r, "Rank")->required();
    tau_cmd->add_option("--kind", kind, "Output kind")->check(CLI::IsMember({"icochain", "normalized"}));

    std::vector<std::string> cup_in;
    auto* cup_cmd = app.add_subcommand("cup", "Cup product of two cochains");
    cup_cmd->add_option("--in", cup_in, "Cochain document (give twice)")->required()->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

    auto* d_cmd = app.add_subcommand("d", "Coboundary of a cochain");
    d_cmd->add_option("--in", in_path, "Cochain document")->required();

    auto* check_cmd = app.add_subcommand("check-cocycle", "Exit 0 for a cocycle, 2 otherwise");
    check_cmd->add_option("--in", in_path, "Cochain document")->required();

    std::uint64_t budget = kDefaultBudget;
    auto* dims_cmd = app.add_subcommand("dims", "Cohomology dimensions from matrix ranks");
    dims_cmd->add_option("--p", p, "Prime")->required();
    dims_cmd->add_option("--r", r, "Rank")->required();
    dims_cmd->add_option("--max-n", max_n, "Largest degree")->required()->check(CLI::Range(0, 64));
    dims_cmd->add_option("--budget", budget, "Largest matrix (rows or stored entries) to build");

    bool closed_form = false;
    auto* count_cmd = app.add_subcommand("count-terms", "Number of evaluations in the normalized inverse formula");
    count_cmd->add_option("--p", p, "Prime")->required();
    count_cmd->add_option("--r", r, "Rank")->required();
    count_cmd->add_option("--n", n, "Degree")->required()->check(CLI::Range(0, 64));
    count_cmd->add_flag("--closed-form", closed_form, "Also print the closed-form value");

    auto* selftest = app.add_subcommand("selftest", "Run the acceptance checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "fpcohom: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*invert) {
            const AnyCochain doc = parse_cochain(read_file(in_path));
            const bool normalized = as_normalized || (!use_icochain && std::holds_alternative<NormalizedCochain>(doc));
            std::cout << dump(to_json(invert_document(doc, normalized, unchecked)));
        } else if (*tau_cmd) {
            const GroupContext ctx(p, r);
            const ICochain t = tau_monomial(ctx, parse_sig(sig_text, r));
            std::cout << (kind == "normalized" ? dump(to_json(correspond_back(t))) : dump(to_json(t)));
        } else if (*cup_cmd) {
            if (cup_in.size() != 2) {
                std::cerr << "fpcohom: cup needs exactly two --in documents\n";
                return kExitUsage;
            }
            const AnyCochain a = parse_cochain(read_file(cup_in[0]));
            const AnyCochain b = parse_cochain(read_file(cup_in[1]));
            if (a.index() != b.index()) throw DocumentError("cup operands must have the same kind");
            std::visit(
                [&](const auto& f) {
                    using C = std::decay_t<decltype(f)>;
                    std::cout << dump(to_json(cup(f, std::get<C>(b))));
                },
                a);
        } else if (*d_cmd) {
            const AnyCochain doc = parse_cochain(read_file(in_path));
            if (const auto* f = std::get_if<ICochain>(&doc))
                std::cout << dump(to_json(coboundary_I(*f)));
            else
                std::cout << dump(to_json(coboundary_bar(std::get<NormalizedCochain>(doc))));
        } else if (*check_cmd) {
            const ICochain f = as_icochain(parse_cochain(read_file(in_path)));
            if (!coboundary_I(f).is_zero()) {
                std::cout << "not a cocycle\n";
                return kExitNotCocycle;
            }
            std::cout << "cocycle\n";
        } else if (*dims_cmd) {
            const GroupContext ctx(p, r);
            std::cout << std::setw(3) << "n" << std::setw(14) << "dim_C" << std::setw(14) << "dim_Z" << std::setw(14)
                      << "dim_B" << std::setw(8) << "dim_H" << std::setw(14) << "expected_H" << "\n";
            for (int k = 0; k <= max_n; ++k) {
                const CohomologyReport rep = cohomology_dim(ctx, k, budget);
                std::cout << std::setw(3) << k << std::setw(14) << rep.dim_cochains << std::setw(14) << rep.dim_ker_dn
                          << std::setw(14) << rep.rank_prev << std::setw(8) << rep.dim_H << std::setw(14)
                          << rep.expected_dim_H << std::endl;
            }
        } else if (*count_cmd) {
            const GroupContext ctx(p, r);
            std::cout << count_terms(ctx.p(), ctx.r(), n) << "\n";
            if (closed_form) std::cout << std::setprecision(17) << count_terms_closed_form(ctx.p(), ctx.r(), n) << "\n";
        } else if (*selftest) {
            bool ok = true;
            for (const auto& res : acceptance::run_library_criteria()) {
                acceptance::print(std::cout, res);
                ok = ok && res.passed;
            }
            const auto rt = cli_round_trip();
            acceptance::print(std::cout, rt);
            ok = ok && rt.passed;
            std::cout << (ok ? "selftest passed" : "selftest FAILED") << "\n";
            return ok ? 0 : kExitInvalid;
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "fpcohom: " << e.what() << "\n";
        return kExitBudget;
    } catch (const NotACocycle& e) {
        std::cerr << "fpcohom: " << e.what() << "\n";
        return kExitNotCocycle;
    } catch (const std::exception& e) {
        std::cerr << "fpcohom: " << e.what() << "\n";
        return kExitInvalid;
    }
    return 0;
}
