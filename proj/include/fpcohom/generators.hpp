#pragma once

// Explicit generator cocycles: f_i (representing x_i), the Bockstein carry
// cocycles z~_i / z_i and their I-cochain forms h_i, the cup powers f_{i,m},
// and the test tensors t_{i,m}, t_{i,m,q}.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpcohom/cochain.hpp"
#include "fpcohom/group_ring.hpp"

namespace fpcohom {

// C(n, k) mod p from the base-p digits of n and k (Lucas).
inline Coeff binom_mod_p(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
    if (p < 2) throw std::invalid_argument("modulus must be at least 2");
    Coeff result = 1;
    const auto pc = static_cast<Coeff>(p);
    while (n > 0 || k > 0) {
        const std::uint64_t nd = n % p, kd = k % p;
        if (kd > nd) return 0;
        // C(nd, kd) mod p with nd < p, via factorials mod p.
        Coeff num = 1, den = 1;
        for (std::uint64_t j = 0; j < kd; ++j) {
            num = num * static_cast<Coeff>((nd - j) % p) % pc;
            den = den * static_cast<Coeff>((j + 1) % p) % pc;
        }
        result = result * num % pc * mod_inverse(den, pc) % pc;
        n /= p;
        k /= p;
    }
    return result;
}

namespace detail {

inline void check_generator_index(const GroupContext& ctx, int i) {
    if (i < 1 || i > ctx.r())
        throw std::out_of_range("generator index " + std::to_string(i) + " outside [1, " +
                                std::to_string(ctx.r()) + "]");
}

}  // namespace detail

// f_i(u - 1) = x_i(u), the i-th exponent of u.
inline ICochain f_gen(const GroupContext& ctx, int i) {
    detail::check_generator_index(ctx, i);
    ICochain f(ctx, 1, CoeffRing::ModP);
    for (std::uint32_t u = 1; u < ctx.order(); ++u) {
        const GroupElem g{u};
        f.set({g}, ctx.exponent(g, i));
    }
    return f;
}

// z~_i(u, v) = [(k_i + l_i) / p] over Z.
inline NormalizedCochain z_tilde_gen(const GroupContext& ctx, int i) {
    detail::check_generator_index(ctx, i);
    NormalizedCochain z(ctx, 2, CoeffRing::Integers);
    for (std::uint32_t u = 1; u < ctx.order(); ++u)
        for (std::uint32_t v = 1; v < ctx.order(); ++v)
            if (ctx.exponent(GroupElem{u}, i) + ctx.exponent(GroupElem{v}, i) >= ctx.p())
                z.set({GroupElem{u}, GroupElem{v}}, 1);
    return z;
}

// Mod-p reduction of z~_i; its class is y_i = beta(x_i).
inline NormalizedCochain z_gen(const GroupContext& ctx, int i) { return z_tilde_gen(ctx, i).reduced_mod_p(); }

inline ICochain h_gen(const GroupContext& ctx, int i) { return correspond(z_gen(ctx, i)); }

// h~_i(t_i^k x t_i^l) = sum_{h=p}^{k+l} (-1)^{k+l-h} C(k+l, h) for k + l >= p, else 0.
inline Coeff h_tilde_eval(const GroupContext& ctx, int i, int k, int l) {
    detail::check_generator_index(ctx, i);
    const int p = ctx.p();
    if (k < 1 || k > p - 1 || l < 1 || l > p - 1)
        throw std::out_of_range("t-exponents must lie in [1, p-1]");
    if (k + l < p) return 0;
    Coeff sum = 0;
    for (int h = p; h <= k + l; ++h) {
        const Coeff term = detail::binomial_exact(k + l, h);
        sum = ((k + l - h) % 2 == 0) ? checked_add(sum, term) : checked_sub(sum, term);
    }
    return sum;
}

// f_{i,m}: h_i u ... u h_i (m = 2k) or f_i u h_i u ... u h_i (m = 2k + 1).
inline ICochain f_im(const GroupContext& ctx, int i, int m) {
    detail::check_generator_index(ctx, i);
    if (m < 0) throw std::invalid_argument("negative degree");
    std::vector<ICochain> factors;
    if (m % 2 == 1) factors.push_back(f_gen(ctx, i));
    if (m >= 2) {
        const ICochain h = h_gen(ctx, i);
        for (int j = 0; j < m / 2; ++j) factors.push_back(h);
    }
    return cup_many<CochainKind::I>(std::span<const ICochain>(factors), ctx, CoeffRing::ModP);
}

// t_{i,m} = (t_i^{p-1} x t_i)^{x k} for m = 2k, t_i x (t_i^{p-1} x t_i)^{x k} for m = 2k + 1.
inline Tensor t_im(const GroupContext& ctx, int i, int m) {
    detail::check_generator_index(ctx, i);
    if (m < 0) throw std::invalid_argument("negative degree");
    MultiIndex top{std::vector<int>(static_cast<std::size_t>(ctx.r()), 0)};
    top.k[static_cast<std::size_t>(i - 1)] = ctx.p() - 1;
    const RingElem ti = RingElem::t(ctx, i);
    const RingElem ti_top = t_monomial(ctx, top);
    std::vector<RingElem> factors;
    if (m % 2 == 1) factors.push_back(ti);
    for (int j = 0; j < m / 2; ++j) {
        factors.push_back(ti_top);
        factors.push_back(ti);
    }
    return {ctx, std::move(factors)};
}

namespace detail {

inline void check_q(const GroupContext& ctx, int m, const std::vector<int>& q) {
    if (m < 0) throw std::invalid_argument("negative degree");
    if (static_cast<int>(q.size()) != m / 2)
        throw std::invalid_argument("q-sequence has length " + std::to_string(q.size()) + ", expected " +
                                    std::to_string(m / 2));
    for (int v : q)
        if (v < 1 || v > ctx.p() - 1) throw std::invalid_argument("q-entry " + std::to_string(v) + " outside [1, p-1]");
}

}  // namespace detail

// s_{i,m,q} = (s_i^{q_1}, s_i, ..., s_i^{q_k}, s_i), preceded by s_i when m is odd.
inline std::vector<GroupElem> s_imq(const GroupContext& ctx, int i, int m, const std::vector<int>& q) {
    detail::check_generator_index(ctx, i);
    detail::check_q(ctx, m, q);
    const GroupElem s = ctx.generator(i);
    std::vector<GroupElem> out;
    out.reserve(static_cast<std::size_t>(m));
    if (m % 2 == 1) out.push_back(s);
    for (int qj : q) {
        out.push_back(ctx.pow(s, qj));
        out.push_back(s);
    }
    return out;
}

inline Tensor t_imq(const GroupContext& ctx, int i, int m, const std::vector<int>& q) {
    const auto tuple = s_imq(ctx, i, m, q);
    return Tensor::from_tuple(ctx, tuple);
}

// All sequences in [1, p-1]^k in lexicographic order.
inline std::vector<std::vector<int>> all_q_sequences(int p, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> q(static_cast<std::size_t>(k), 1);
    while (true) {
        out.push_back(q);
        int pos = k - 1;
        while (pos >= 0 && q[static_cast<std::size_t>(pos)] == p - 1) q[static_cast<std::size_t>(pos--)] = 1;
        if (pos < 0) break;
        ++q[static_cast<std::size_t>(pos)];
    }
    return out;
}

}  // namespace fpcohom
