#pragma once

// Exact arithmetic in Z[G] and F_p[G] for G = F_p^r written multiplicatively
// with basis s_1, ..., s_r, together with the augmentation map and the
// t-monomial basis t^k = (s_1 - 1)^{k_1} ... (s_r - 1)^{k_r}.

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpcohom/arith.hpp"

namespace fpcohom {

// An element s^k of G. `code` packs the exponent vector in base p with k_1 as
// the most significant digit, so numeric order is lexicographic order of the
// exponent vectors and the identity has code 0.
struct GroupElem {
    std::uint32_t code = 0;

    bool is_identity() const { return code == 0; }
    auto operator<=>(const GroupElem&) const = default;
};

class GroupContext {
public:
    // Largest supported |G|; cochain spaces are indexed by G^n.
    static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 24;

    GroupContext(int p, int r) : p_(p), r_(r) {
        if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
        if (r < 1) throw std::invalid_argument("rank r must be at least 1");
        std::uint64_t order = 1;
        for (int i = 0; i < r; ++i) {
            order *= static_cast<std::uint64_t>(p);
            if (order > kMaxOrder)
                throw std::invalid_argument("group order p^r exceeds " + std::to_string(kMaxOrder));
        }
        order_ = static_cast<std::uint32_t>(order);
    }

    int p() const { return p_; }
    int r() const { return r_; }
    std::uint32_t order() const { return order_; }
    std::uint32_t nonidentity_count() const { return order_ - 1; }

    bool operator==(const GroupContext& other) const { return p_ == other.p_ && r_ == other.r_; }

    GroupElem identity() const { return {}; }

    // s_i for i in [1, r].
    GroupElem generator(int i) const {
        check_index(i);
        return {place_value(i)};
    }

    GroupElem elem(std::span<const int> exponents) const {
        if (static_cast<int>(exponents.size()) != r_)
            throw std::invalid_argument("exponent vector has length " +
                                        std::to_string(exponents.size()) + ", expected " +
                                        std::to_string(r_));
        std::uint32_t code = 0;
        for (int k : exponents) {
            if (k < 0 || k >= p_)
                throw std::invalid_argument("exponent " + std::to_string(k) + " outside [0, p)");
            code = code * static_cast<std::uint32_t>(p_) + static_cast<std::uint32_t>(k);
        }
        return {code};
    }

    GroupElem elem(std::initializer_list<int> exponents) const {
        return elem(std::span<const int>(exponents.begin(), exponents.size()));
    }

    GroupElem from_code(std::uint32_t code) const {
        if (code >= order_) throw std::invalid_argument("group element code out of range");
        return {code};
    }

    // k_i of s^k, i in [1, r].
    int exponent(GroupElem g, int i) const {
        check_index(i);
        return static_cast<int>((g.code / place_value(i)) % static_cast<std::uint32_t>(p_));
    }

    std::vector<int> exponents(GroupElem g) const {
        std::vector<int> out(static_cast<std::size_t>(r_));
        for (int i = 1; i <= r_; ++i) out[static_cast<std::size_t>(i - 1)] = exponent(g, i);
        return out;
    }

    GroupElem mul(GroupElem a, GroupElem b) const {
        std::uint32_t code = 0;
        const auto p = static_cast<std::uint32_t>(p_);
        std::uint32_t place = 1;
        std::uint32_t x = a.code, y = b.code;
        for (int i = 0; i < r_; ++i) {
            code += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        return {code};
    }

    GroupElem pow(GroupElem g, std::int64_t k) const {
        const auto p = static_cast<std::int64_t>(p_);
        const auto e = static_cast<std::uint32_t>(mod_reduce(k, p));
        std::uint32_t code = 0;
        std::uint32_t place = 1;
        std::uint32_t x = g.code;
        for (int i = 0; i < r_; ++i) {
            code += ((x % static_cast<std::uint32_t>(p_)) * e % static_cast<std::uint32_t>(p_)) * place;
            x /= static_cast<std::uint32_t>(p_);
            place *= static_cast<std::uint32_t>(p_);
        }
        return {code};
    }

    GroupElem inverse(GroupElem g) const { return pow(g, -1); }

private:
    void check_index(int i) const {
        if (i < 1 || i > r_)
            throw std::out_of_range("generator index " + std::to_string(i) + " outside [1, " +
                                    std::to_string(r_) + "]");
    }

    std::uint32_t place_value(int i) const {
        std::uint32_t v = 1;
        for (int j = i; j < r_; ++j) v *= static_cast<std::uint32_t>(p_);
        return v;
    }

    int p_;
    int r_;
    std::uint32_t order_ = 1;
};

// Label k = (k_1, ..., k_r) of the monomial t^k. Entries may exceed p - 1 when
// used as an argument of t_monomial.
struct MultiIndex {
    std::vector<int> k;

    auto operator<=>(const MultiIndex&) const = default;
    bool is_zero() const {
        for (int v : k)
            if (v != 0) return false;
        return true;
    }
};

inline void check_same_context(const GroupContext& a, const GroupContext& b) {
    if (!(a == b)) throw std::invalid_argument("group context mismatch");
}

// Sparse element of Z[G] or F_p[G] in the group basis. No zero coefficient is
// ever stored; ModP coefficients live in [0, p).
class RingElem {
public:
    using Terms = std::map<GroupElem, Coeff>;

    RingElem(GroupContext ctx, CoeffRing ring) : ctx_(ctx), ring_(ring) {}

    static RingElem zero(GroupContext ctx, CoeffRing ring = CoeffRing::Integers) { return {ctx, ring}; }

    static RingElem unit(GroupContext ctx, CoeffRing ring = CoeffRing::Integers) {
        return basis(ctx, ctx.identity(), ring);
    }

    static RingElem basis(GroupContext ctx, GroupElem g, CoeffRing ring = CoeffRing::Integers) {
        RingElem out(ctx, ring);
        out.add_term(g, 1);
        return out;
    }

    // u - 1.
    static RingElem difference(GroupContext ctx, GroupElem u, CoeffRing ring = CoeffRing::Integers) {
        RingElem out(ctx, ring);
        out.add_term(u, 1);
        out.add_term(ctx.identity(), -1);
        return out;
    }

    // t_i = s_i - 1.
    static RingElem t(GroupContext ctx, int i, CoeffRing ring = CoeffRing::Integers) {
        return difference(ctx, ctx.generator(i), ring);
    }

    const GroupContext& ctx() const { return ctx_; }
    CoeffRing ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Coeff coeff(GroupElem g) const {
        auto it = terms_.find(g);
        return it == terms_.end() ? 0 : it->second;
    }

    void add_term(GroupElem g, Coeff c) {
        const RingArith ar = arith();
        c = ar.normalize(c);
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(g, c);
        if (!inserted) {
            it->second = ar.add(it->second, c);
            if (it->second == 0) terms_.erase(it);
        }
    }

    RingArith arith() const { return {ring_, ctx_.p()}; }

    RingElem reduced_mod_p() const {
        RingElem out(ctx_, CoeffRing::ModP);
        for (const auto& [g, c] : terms_) out.add_term(g, c);
        return out;
    }

    RingElem operator-() const {
        RingElem out(ctx_, ring_);
        for (const auto& [g, c] : terms_) out.add_term(g, arith().neg(c));
        return out;
    }

    RingElem& operator+=(const RingElem& other) {
        check_compatible(other);
        for (const auto& [g, c] : other.terms_) add_term(g, c);
        return *this;
    }

    RingElem& operator-=(const RingElem& other) { return *this += -other; }

    RingElem scaled(Coeff c) const {
        RingElem out(ctx_, ring_);
        for (const auto& [g, v] : terms_) out.add_term(g, arith().mul(v, c));
        return out;
    }

    friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
    friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }

    bool operator==(const RingElem& other) const {
        return ctx_ == other.ctx_ && ring_ == other.ring_ && terms_ == other.terms_;
    }

    void check_compatible(const RingElem& other) const {
        check_same_context(ctx_, other.ctx_);
        if (ring_ != other.ring_) throw std::invalid_argument("coefficient ring mismatch");
    }

private:
    GroupContext ctx_;
    CoeffRing ring_;
    Terms terms_;
};

// Convolution product induced by s^k s^l = s^{k+l mod p}.
inline RingElem mul(const RingElem& a, const RingElem& b) {
    a.check_compatible(b);
    RingElem out(a.ctx(), a.ring());
    const RingArith ar = a.arith();
    for (const auto& [g, x] : a.terms())
        for (const auto& [h, y] : b.terms()) out.add_term(a.ctx().mul(g, h), ar.mul(x, y));
    return out;
}

inline RingElem operator*(const RingElem& a, const RingElem& b) { return mul(a, b); }

// Sum of coefficients (reduced mod p for F_p[G]).
inline Coeff augmentation(const RingElem& a) {
    Coeff sum = 0;
    const RingArith ar = a.arith();
    for (const auto& [g, c] : a.terms()) sum = ar.add(sum, c);
    return sum;
}

inline RingElem power(const RingElem& a, int k) {
    if (k < 0) throw std::invalid_argument("negative power in group ring");
    RingElem out = RingElem::unit(a.ctx(), a.ring());
    for (int j = 0; j < k; ++j) out = mul(out, a);
    return out;
}

// t^k expanded in the group basis over Z. Exponents k_i >= p are allowed.
inline RingElem t_monomial(const GroupContext& ctx, const MultiIndex& k) {
    if (static_cast<int>(k.k.size()) != ctx.r())
        throw std::invalid_argument("multi-index length does not match rank");
    RingElem out = RingElem::unit(ctx);
    for (int i = 1; i <= ctx.r(); ++i) {
        const int e = k.k[static_cast<std::size_t>(i - 1)];
        if (e < 0) throw std::invalid_argument("negative t-exponent");
        out = mul(out, power(RingElem::t(ctx, i), e));
    }
    return out;
}

// Element of Z[G] or F_p[G] written in the t-monomial basis.
class TPolynomial {
public:
    using Terms = std::map<MultiIndex, Coeff>;

    TPolynomial(GroupContext ctx, CoeffRing ring) : ctx_(ctx), ring_(ring) {}

    const GroupContext& ctx() const { return ctx_; }
    CoeffRing ring() const { return ring_; }
    const Terms& terms() const { return terms_; }

    Coeff coeff(const MultiIndex& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? 0 : it->second;
    }

    void add_term(const MultiIndex& k, Coeff c) {
        if (static_cast<int>(k.k.size()) != ctx_.r())
            throw std::invalid_argument("multi-index length does not match rank");
        for (int v : k.k)
            if (v < 0 || v >= ctx_.p()) throw std::invalid_argument("t-basis index outside [0, p)");
        const RingArith ar{ring_, ctx_.p()};
        c = ar.normalize(c);
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second = ar.add(it->second, c);
            if (it->second == 0) terms_.erase(it);
        }
    }

    bool operator==(const TPolynomial& other) const {
        return ctx_ == other.ctx_ && ring_ == other.ring_ && terms_ == other.terms_;
    }

private:
    GroupContext ctx_;
    CoeffRing ring_;
    Terms terms_;
};

namespace detail {

inline Coeff binomial_exact(int n, int k) {
    if (k < 0 || k > n) return 0;
    Coeff out = 1;
    for (int j = 1; j <= k; ++j) out = checked_mul(out, n - k + j) / j;
    return out;
}

}  // namespace detail

// Substitutes s^m = prod_i (1 + t_i)^{m_i} and expands binomially.
inline TPolynomial to_t_basis(const RingElem& a) {
    const GroupContext& ctx = a.ctx();
    const RingArith ar = a.arith();
    TPolynomial out(ctx, a.ring());
    for (const auto& [g, c] : a.terms()) {
        const std::vector<int> m = ctx.exponents(g);
        // Odometer over 0 <= j_i <= m_i.
        MultiIndex j{std::vector<int>(m.size(), 0)};
        while (true) {
            Coeff term = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                term = ar.mul(term, detail::binomial_exact(m[i], j.k[i]));
            out.add_term(j, term);
            std::size_t pos = 0;
            while (pos < m.size() && j.k[pos] == m[pos]) j.k[pos++] = 0;
            if (pos == m.size()) break;
            ++j.k[pos];
        }
    }
    return out;
}

inline RingElem from_t_basis(const TPolynomial& q) {
    RingElem out(q.ctx(), q.ring());
    const RingArith ar{q.ring(), q.ctx().p()};
    for (const auto& [k, c] : q.terms()) {
        RingElem term = t_monomial(q.ctx(), k);
        for (const auto& [g, v] : term.terms()) out.add_term(g, ar.mul(v, c));
    }
    return out;
}

inline bool in_augmentation_ideal(const RingElem& a) { return augmentation(a) == 0; }

// Coefficients c_u with a = sum_{u != 1} c_u (u - 1); c_u is the group-basis
// coefficient of u.
inline std::map<GroupElem, Coeff> as_difference_basis(const RingElem& a) {
    if (!in_augmentation_ideal(a))
        throw std::invalid_argument("element is not in the augmentation ideal (augmentation " +
                                    std::to_string(augmentation(a)) + ")");
    std::map<GroupElem, Coeff> out;
    for (const auto& [g, c] : a.terms())
        if (!g.is_identity()) out.emplace(g, c);
    return out;
}

}  // namespace fpcohom
