#pragma once

// The target algebra F_2[x_1..x_r] (p = 2) or Lambda(x_1..x_r) (x) F_p[y_1..y_r]
// (p > 2) in the basis x_1^{(n_1)} ... x_r^{(n_r)}, the forward map tau into
// I-cochains, and its inverse theta on cochains.
//
// For p > 2, x^{(2k)} = y^k and x^{(2k+1)} = x y^k; for p = 2 the signature
// (n_1..n_r) is the ordinary monomial x_1^{n_1} ... x_r^{n_r}.

#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpcohom/cochain.hpp"
#include "fpcohom/generators.hpp"

namespace fpcohom {

struct MonomialSig {
    std::vector<int> n;

    int degree() const {
        int d = 0;
        for (int v : n) d += v;
        return d;
    }

    // Number of odd exponents, i.e. the exterior length.
    int odd_count() const {
        int l = 0;
        for (int v : n) l += v % 2;
        return l;
    }

    auto operator<=>(const MonomialSig&) const = default;
};

struct MonomialProduct {
    int sign;  // -1, 0 or +1
    MonomialSig sig;
};

// Per variable x^{(m)} x^{(m')} = x^{(m+m')} unless m m' is odd (then 0, p > 2).
// Moving x_j^{(b_j)} left past x_i^{(a_i)} for i > j costs (-1)^{a_i b_j}.
inline MonomialProduct monomial_mul(int p, const MonomialSig& a, const MonomialSig& b) {
    if (a.n.size() != b.n.size()) throw std::invalid_argument("monomial rank mismatch");
    MonomialProduct out{1, MonomialSig{std::vector<int>(a.n.size())}};
    for (std::size_t i = 0; i < a.n.size(); ++i) out.sig.n[i] = a.n[i] + b.n[i];
    if (p == 2) return out;
    int inversions = 0;
    for (std::size_t i = 0; i < a.n.size(); ++i) {
        if (a.n[i] % 2 != 0 && b.n[i] % 2 != 0) return {0, out.sig};
        for (std::size_t j = 0; j < i; ++j) inversions += (a.n[i] % 2) * (b.n[j] % 2);
    }
    out.sign = inversions % 2 == 0 ? 1 : -1;
    return out;
}

class AlgebraElem {
public:
    using Terms = std::map<MonomialSig, Coeff>;

    explicit AlgebraElem(GroupContext ctx) : ctx_(ctx) {}

    static AlgebraElem monomial(const GroupContext& ctx, MonomialSig sig, Coeff c = 1) {
        AlgebraElem out(ctx);
        out.add_term(std::move(sig), c);
        return out;
    }

    const GroupContext& ctx() const { return ctx_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Coeff coeff(const MonomialSig& sig) const {
        auto it = terms_.find(sig);
        return it == terms_.end() ? 0 : it->second;
    }

    void add_term(MonomialSig sig, Coeff c) {
        if (static_cast<int>(sig.n.size()) != ctx_.r()) throw std::invalid_argument("signature length does not match rank");
        for (int v : sig.n)
            if (v < 0) throw std::invalid_argument("negative exponent in signature");
        const Coeff p = ctx_.p();
        c = mod_reduce(c, p);
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(sig), c);
        if (!inserted) {
            it->second = mod_reduce(it->second + c, p);
            if (it->second == 0) terms_.erase(it);
        }
    }

    // Degree when homogeneous and nonzero.
    std::optional<int> homogeneous_degree() const {
        std::optional<int> d;
        for (const auto& [sig, c] : terms_) {
            if (d && *d != sig.degree()) return std::nullopt;
            d = sig.degree();
        }
        return d;
    }

    AlgebraElem& operator+=(const AlgebraElem& other) {
        check_same_context(ctx_, other.ctx_);
        for (const auto& [sig, c] : other.terms_) add_term(sig, c);
        return *this;
    }

    friend AlgebraElem operator+(AlgebraElem a, const AlgebraElem& b) { return a += b; }

    friend AlgebraElem operator*(const AlgebraElem& a, const AlgebraElem& b) {
        check_same_context(a.ctx_, b.ctx_);
        AlgebraElem out(a.ctx_);
        for (const auto& [sa, ca] : a.terms_)
            for (const auto& [sb, cb] : b.terms_) {
                const MonomialProduct prod = monomial_mul(a.ctx_.p(), sa, sb);
                if (prod.sign != 0) out.add_term(prod.sig, prod.sign * ca % a.ctx_.p() * cb);
            }
        return out;
    }

    bool operator==(const AlgebraElem& other) const { return ctx_ == other.ctx_ && terms_ == other.terms_; }

private:
    GroupContext ctx_;
    Terms terms_;
};

// All (n_1..n_r) with sum n, in lexicographic order. These index a basis of
// the degree-n part for every p.
inline std::vector<MonomialSig> basis_monomials(int r, int n) {
    std::vector<MonomialSig> out;
    std::vector<int> cur(static_cast<std::size_t>(r), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == r - 1) {
            cur[static_cast<std::size_t>(pos)] = left;
            out.push_back(MonomialSig{cur});
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[static_cast<std::size_t>(pos)] = v;
            rec(pos + 1, left - v);
        }
    };
    if (r >= 1 && n >= 0) rec(0, n);
    return out;
}

// The (n_1..n_r)-shuffles: permutations sigma of {0..n-1} increasing on each
// consecutive block. Generated block by block as choices of image positions.
class ShuffleSet {
public:
    explicit ShuffleSet(std::vector<int> block_sizes) : sizes_(std::move(block_sizes)) {
        int n = 0;
        for (int s : sizes_) {
            if (s < 0) throw std::invalid_argument("negative block size");
            n += s;
        }
        std::vector<int> images(static_cast<std::size_t>(n));
        std::vector<bool> used(static_cast<std::size_t>(n), false);
        fill(0, 0, 0, -1, images, used);
    }

    const std::vector<int>& block_sizes() const { return sizes_; }
    std::size_t size() const { return perms_.size(); }
    auto begin() const { return perms_.begin(); }
    auto end() const { return perms_.end(); }

private:
    // Assign sigma(start + h) for block `block`, element h, above `last`.
    void fill(std::size_t block, int start, int h, int last, std::vector<int>& images, std::vector<bool>& used) {
        if (block == sizes_.size()) {
            perms_.emplace_back(images);
            return;
        }
        if (h == sizes_[block]) {
            fill(block + 1, start + sizes_[block], 0, -1, images, used);
            return;
        }
        for (int pos = last + 1; pos < static_cast<int>(images.size()); ++pos) {
            if (used[static_cast<std::size_t>(pos)]) continue;
            used[static_cast<std::size_t>(pos)] = true;
            images[static_cast<std::size_t>(start + h)] = pos;
            fill(block, start, h + 1, pos, images, used);
            used[static_cast<std::size_t>(pos)] = false;
        }
    }

    std::vector<int> sizes_;
    std::vector<Permutation> perms_;
};

inline ShuffleSet shuffles(std::vector<int> block_sizes) { return ShuffleSet(std::move(block_sizes)); }

inline Coeff koszul_block_sign(const MonomialSig& sig) {
    const int l = sig.odd_count();
    return (l * (l - 1) / 2) % 2 == 0 ? 1 : -1;
}

// tau of one basis monomial: f_{1,n_1} u ... u f_{r,n_r}.
inline ICochain tau_monomial(const GroupContext& ctx, const MonomialSig& sig) {
    if (static_cast<int>(sig.n.size()) != ctx.r()) throw std::invalid_argument("signature length does not match rank");
    std::vector<ICochain> factors;
    for (int i = 1; i <= ctx.r(); ++i) factors.push_back(f_im(ctx, i, sig.n[static_cast<std::size_t>(i - 1)]));
    return cup_many<CochainKind::I>(std::span<const ICochain>(factors), ctx, CoeffRing::ModP);
}

// Linear extension of tau_monomial. The zero element needs an explicit degree.
inline ICochain tau(const AlgebraElem& e, std::optional<int> degree = std::nullopt) {
    const std::optional<int> d = e.homogeneous_degree();
    if (!e.is_zero() && !d) throw std::invalid_argument("tau needs a homogeneous element");
    if (!d && !degree) throw std::invalid_argument("tau of zero needs an explicit degree");
    if (d && degree && *d != *degree) throw std::invalid_argument("element degree does not match requested degree");
    ICochain out(e.ctx(), d ? *d : *degree, CoeffRing::ModP);
    for (const auto& [sig, c] : e.terms()) out += tau_monomial(e.ctx(), sig).scaled(c);
    return out;
}

namespace detail {

inline void require_mod_p(CoeffRing ring) {
    if (ring != CoeffRing::ModP) throw std::invalid_argument("the inverse map is defined on F_p-cochains only");
}

}  // namespace detail

// Shuffle form valid for every p:
//   c_{n_1..n_r} = (-1)^{l(l-1)/2} sum_{sigma in Sh} (sigma f)(t_{1,n_1} x ... x t_{r,n_r}),
// with sigma f evaluated on t-monomial tensors by multilinear expansion.
inline AlgebraElem theta_shuffle_form(const ICochain& f) {
    detail::require_mod_p(f.ring());
    const GroupContext& ctx = f.ctx();
    const RingArith ar = f.arith();
    const int n = f.degree();
    AlgebraElem out(ctx);
    for (const MonomialSig& sig : basis_monomials(ctx.r(), n)) {
        std::vector<DifferenceExpansion> alpha;
        for (int i = 1; i <= ctx.r(); ++i) {
            const Tensor t = t_im(ctx, i, sig.n[static_cast<std::size_t>(i - 1)]);
            for (const RingElem& factor : t.factors()) alpha.push_back(expand_factor(factor));
        }
        std::vector<const DifferenceExpansion*> ordered(alpha.size());
        Coeff c = 0;
        for (const Permutation& sigma : shuffles(sig.n)) {
            // Slot k receives alpha_{sigma^-1(k)}, i.e. slot sigma(j) receives alpha_j.
            for (int j = 0; j < n; ++j) ordered[static_cast<std::size_t>(sigma(j))] = &alpha[static_cast<std::size_t>(j)];
            const Coeff v = detail::eval_expanded(f, ordered);
            c = ar.add(c, ar.mul(sigma.sign(), v));
        }
        out.add_term(sig, ar.mul(koszul_block_sign(sig), c));
    }
    return out;
}

// p = 2: sum over (i_1..i_n) of f(t_{i_1} x ... x t_{i_n}) x_{i_1} ... x_{i_n}.
inline AlgebraElem theta_p2_direct(const ICochain& f) {
    detail::require_mod_p(f.ring());
    const GroupContext& ctx = f.ctx();
    if (ctx.p() != 2) throw std::invalid_argument("direct index-sum form applies to p = 2 only");
    const int n = f.degree(), r = ctx.r();
    std::vector<DifferenceExpansion> ts;
    for (int i = 1; i <= r; ++i) ts.push_back(expand_factor(RingElem::t(ctx, i)));
    AlgebraElem out(ctx);
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    std::vector<const DifferenceExpansion*> ordered(static_cast<std::size_t>(n));
    while (true) {
        MonomialSig sig{std::vector<int>(static_cast<std::size_t>(r), 0)};
        for (int j = 0; j < n; ++j) {
            ordered[static_cast<std::size_t>(j)] = &ts[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
            ++sig.n[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
        }
        out.add_term(std::move(sig), detail::eval_expanded(f, ordered));
        int pos = n - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == r - 1) idx[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
    }
    return out;
}

// The inverse map on arbitrary F_p I-cochains: index-sum form for p = 2,
// shuffle form for p > 2.
inline AlgebraElem theta(const ICochain& f) {
    return f.ctx().p() == 2 ? theta_p2_direct(f) : theta_shuffle_form(f);
}

// Number of stored-value lookups made by theta_normalized.
struct EvalCounter {
    std::uint64_t evaluations = 0;
};

// Shuffle form on normalized cochains, valid for every p:
//   c = (-1)^{l(l-1)/2} sum_{sigma in Sh} sum_{q} (sigma a)(s_{1,n_1,q_1}, ..., s_{r,n_r,q_r}).
inline AlgebraElem theta_normalized_shuffle_form(const NormalizedCochain& a, EvalCounter* counter = nullptr) {
    detail::require_mod_p(a.ring());
    const GroupContext& ctx = a.ctx();
    const RingArith ar = a.arith();
    const int n = a.degree(), r = ctx.r();
    AlgebraElem out(ctx);
    std::vector<GroupElem> u(static_cast<std::size_t>(n)), permuted(static_cast<std::size_t>(n));
    for (const MonomialSig& sig : basis_monomials(r, n)) {
        std::vector<std::vector<std::vector<int>>> q_choices;
        for (int i = 0; i < r; ++i) q_choices.push_back(all_q_sequences(ctx.p(), sig.n[static_cast<std::size_t>(i)] / 2));
        const ShuffleSet sh = shuffles(sig.n);
        Coeff c = 0;
        std::vector<std::size_t> qi(static_cast<std::size_t>(r), 0);
        while (true) {
            std::size_t pos = 0;
            for (int i = 0; i < r; ++i) {
                const auto block = s_imq(ctx, i + 1, sig.n[static_cast<std::size_t>(i)],
                                         q_choices[static_cast<std::size_t>(i)][qi[static_cast<std::size_t>(i)]]);
                for (GroupElem g : block) u[pos++] = g;
            }
            for (const Permutation& sigma : sh) {
                for (int j = 0; j < n; ++j) permuted[static_cast<std::size_t>(sigma(j))] = u[static_cast<std::size_t>(j)];
                if (counter) ++counter->evaluations;
                const Coeff v = a.value(permuted);
                if (v != 0) c = ar.add(c, ar.mul(sigma.sign(), v));
            }
            int k = r - 1;
            while (k >= 0 && qi[static_cast<std::size_t>(k)] + 1 == q_choices[static_cast<std::size_t>(k)].size())
                qi[static_cast<std::size_t>(k--)] = 0;
            if (k < 0) break;
            ++qi[static_cast<std::size_t>(k)];
        }
        out.add_term(sig, ar.mul(koszul_block_sign(sig), c));
    }
    return out;
}

// p = 2: sum over (i_1..i_n) of a(s_{i_1}, ..., s_{i_n}) x_{i_1} ... x_{i_n}.
inline AlgebraElem theta_normalized_p2_direct(const NormalizedCochain& a, EvalCounter* counter = nullptr) {
    detail::require_mod_p(a.ring());
    const GroupContext& ctx = a.ctx();
    if (ctx.p() != 2) throw std::invalid_argument("direct index-sum form applies to p = 2 only");
    const int n = a.degree(), r = ctx.r();
    AlgebraElem out(ctx);
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    std::vector<GroupElem> u(static_cast<std::size_t>(n));
    while (true) {
        MonomialSig sig{std::vector<int>(static_cast<std::size_t>(r), 0)};
        for (int j = 0; j < n; ++j) {
            u[static_cast<std::size_t>(j)] = ctx.generator(idx[static_cast<std::size_t>(j)] + 1);
            ++sig.n[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
        }
        if (counter) ++counter->evaluations;
        out.add_term(std::move(sig), a.value(u));
        int pos = n - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == r - 1) idx[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
    }
    return out;
}

// The inverse computed directly from normalized-cochain values.
inline AlgebraElem theta_normalized(const NormalizedCochain& a, EvalCounter* counter = nullptr) {
    return a.ctx().p() == 2 ? theta_normalized_p2_direct(a, counter) : theta_normalized_shuffle_form(a, counter);
}

// Class-level inverse: rejects cochains that are not cocycles.
inline AlgebraElem theta_class(const ICochain& f) {
    detail::require_mod_p(f.ring());
    if (!coboundary_I(f).is_zero())
        throw NotACocycle("degree " + std::to_string(f.degree()) + " cochain is not a cocycle");
    return theta(f);
}

inline AlgebraElem theta_normalized_class(const NormalizedCochain& a) {
    detail::require_mod_p(a.ring());
    if (!coboundary_bar(a).is_zero())
        throw NotACocycle("degree " + std::to_string(a.degree()) + " cochain is not a cocycle");
    return theta_normalized(a);
}

// N_n = sum over compositions of multinomial(n; n_1..n_r) (p-1)^{sum floor(n_i/2)}.
inline std::uint64_t count_terms(int p, int r, int n) {
    if (n < 0 || r < 1 || p < 2) throw std::invalid_argument("invalid count_terms arguments");
    std::uint64_t total = 0;
    for (const MonomialSig& sig : basis_monomials(r, n)) {
        std::uint64_t term = 1;
        int remaining = n;
        int halves = 0;
        for (int ni : sig.n) {
            term = static_cast<std::uint64_t>(checked_mul(static_cast<Coeff>(term), detail::binomial_exact(remaining, ni)));
            remaining -= ni;
            halves += ni / 2;
        }
        for (int h = 0; h < halves; ++h) term = static_cast<std::uint64_t>(checked_mul(static_cast<Coeff>(term), p - 1));
        total = static_cast<std::uint64_t>(checked_add(static_cast<Coeff>(total), static_cast<Coeff>(term)));
    }
    return total;
}

// N_n = sum_k C(r,k) A^{r-k} B^k ((r - 2k) sqrt(p-1))^n with
// A = (1 + 1/sqrt(p-1))/2, B = (1 - 1/sqrt(p-1))/2.
inline double count_terms_closed_form(int p, int r, int n) {
    const double root = std::sqrt(static_cast<double>(p - 1));
    const double A = 0.5 * (1.0 + 1.0 / root), B = 0.5 * (1.0 - 1.0 / root);
    double total = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= r; ++k) {
        total += binom * std::pow(A, r - k) * std::pow(B, k) * std::pow((r - 2 * k) * root, n);
        binom = binom * (r - k) / (k + 1);
    }
    return total;
}

}  // namespace fpcohom
