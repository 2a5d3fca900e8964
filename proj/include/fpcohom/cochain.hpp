#pragma once

// Normalized cochains a: G^n -> M and I-cochains f: T^n(I) -> M for M = Z or
// F_p. Both are stored by their values on tuples of nonidentity elements:
// a(u_1, ..., u_n) and f((u_1 - 1) x ... x (u_n - 1)) respectively, which is
// what makes the correspondence between them a relabeling.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fpcohom/arith.hpp"
#include "fpcohom/group_ring.hpp"

namespace fpcohom {

// Packs an n-tuple of group elements into one integer, base |G|, first entry
// most significant. Numeric order of keys is lexicographic tuple order.
class TupleCodec {
public:
    TupleCodec(const GroupContext& ctx, int degree) : base_(ctx.order()), degree_(degree) {
        if (degree < 0) throw std::invalid_argument("negative cochain degree");
        std::uint64_t span = 1;
        for (int j = 0; j < degree; ++j) {
            if (span > (std::uint64_t{1} << 63) / base_)
                throw std::length_error("cochain degree " + std::to_string(degree) +
                                        " too large to index for |G| = " + std::to_string(base_));
            span *= base_;
        }
    }

    int degree() const { return degree_; }
    std::uint64_t base() const { return base_; }

    std::uint64_t encode(std::span<const GroupElem> tuple) const {
        if (static_cast<int>(tuple.size()) != degree_)
            throw std::invalid_argument("tuple length " + std::to_string(tuple.size()) +
                                        " does not match degree " + std::to_string(degree_));
        std::uint64_t key = 0;
        for (GroupElem g : tuple) key = key * base_ + g.code;
        return key;
    }

    void decode(std::uint64_t key, std::span<GroupElem> out) const {
        for (int j = degree_ - 1; j >= 0; --j) {
            out[static_cast<std::size_t>(j)] = GroupElem{static_cast<std::uint32_t>(key % base_)};
            key /= base_;
        }
    }

    std::vector<GroupElem> decode(std::uint64_t key) const {
        std::vector<GroupElem> out(static_cast<std::size_t>(degree_));
        decode(key, out);
        return out;
    }

private:
    std::uint64_t base_;
    int degree_;
};

enum class CochainKind { Normalized, I };

template <CochainKind Kind>
class Cochain {
public:
    using Storage = std::unordered_map<std::uint64_t, Coeff>;

    Cochain(GroupContext ctx, int degree, CoeffRing ring)
        : ctx_(ctx), codec_(ctx, degree), ring_(ring) {}

    const GroupContext& ctx() const { return ctx_; }
    int degree() const { return codec_.degree(); }
    CoeffRing ring() const { return ring_; }
    const TupleCodec& codec() const { return codec_; }
    const Storage& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    bool is_zero() const { return values_.empty(); }
    RingArith arith() const { return {ring_, ctx_.p()}; }

    // Value on a tuple; zero whenever an entry is the identity.
    Coeff value(std::span<const GroupElem> tuple) const {
        for (GroupElem g : tuple)
            if (g.is_identity()) {
                check_arity(tuple.size());
                return 0;
            }
        return value_at(codec_.encode(tuple));
    }

    Coeff value(std::initializer_list<GroupElem> tuple) const {
        return value(std::span<const GroupElem>(tuple.begin(), tuple.size()));
    }

    Coeff value_at(std::uint64_t key) const {
        auto it = values_.find(key);
        return it == values_.end() ? 0 : it->second;
    }

    void set(std::span<const GroupElem> tuple, Coeff v) {
        v = arith().normalize(v);
        check_nonidentity(tuple, v);
        const std::uint64_t key = codec_.encode(tuple);
        if (v == 0)
            values_.erase(key);
        else
            values_[key] = v;
    }

    void set(std::initializer_list<GroupElem> tuple, Coeff v) {
        set(std::span<const GroupElem>(tuple.begin(), tuple.size()), v);
    }

    void add(std::span<const GroupElem> tuple, Coeff v) {
        v = arith().normalize(v);
        if (v == 0) return;
        check_nonidentity(tuple, v);
        add_at(codec_.encode(tuple), v);
    }

    void add(std::initializer_list<GroupElem> tuple, Coeff v) {
        add(std::span<const GroupElem>(tuple.begin(), tuple.size()), v);
    }

    // Caller guarantees the key encodes a tuple of nonidentity elements.
    void add_at(std::uint64_t key, Coeff v) {
        const RingArith ar = arith();
        v = ar.normalize(v);
        if (v == 0) return;
        auto [it, inserted] = values_.try_emplace(key, v);
        if (!inserted) {
            it->second = ar.add(it->second, v);
            if (it->second == 0) values_.erase(it);
        }
    }

    // Entries ordered lexicographically by tuple.
    std::vector<std::pair<std::uint64_t, Coeff>> sorted_entries() const {
        std::vector<std::pair<std::uint64_t, Coeff>> out(values_.begin(), values_.end());
        std::sort(out.begin(), out.end());
        return out;
    }

    Cochain reduced_mod_p() const {
        Cochain out(ctx_, degree(), CoeffRing::ModP);
        for (const auto& [k, v] : values_) out.add_at(k, v);
        return out;
    }

    Cochain scaled(Coeff c) const {
        Cochain out(ctx_, degree(), ring_);
        const RingArith ar = arith();
        for (const auto& [k, v] : values_) out.add_at(k, ar.mul(v, c));
        return out;
    }

    Cochain operator-() const { return scaled(-1); }

    Cochain& operator+=(const Cochain& other) {
        check_compatible(other);
        for (const auto& [k, v] : other.values_) add_at(k, v);
        return *this;
    }

    Cochain& operator-=(const Cochain& other) {
        check_compatible(other);
        const RingArith ar = arith();
        for (const auto& [k, v] : other.values_) add_at(k, ar.neg(v));
        return *this;
    }

    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }

    bool operator==(const Cochain& other) const {
        return ctx_ == other.ctx_ && degree() == other.degree() && ring_ == other.ring_ &&
               values_ == other.values_;
    }

    void check_compatible(const Cochain& other) const {
        check_same_context(ctx_, other.ctx_);
        if (degree() != other.degree()) throw std::invalid_argument("cochain degree mismatch");
        if (ring_ != other.ring_) throw std::invalid_argument("coefficient ring mismatch");
    }

private:
    template <CochainKind To, CochainKind From>
    friend Cochain<To> relabel(const Cochain<From>& c);

    void check_arity(std::size_t n) const {
        if (static_cast<int>(n) != degree())
            throw std::invalid_argument("tuple length " + std::to_string(n) +
                                        " does not match degree " + std::to_string(degree()));
    }

    void check_nonidentity(std::span<const GroupElem> tuple, Coeff v) const {
        check_arity(tuple.size());
        for (GroupElem g : tuple) {
            if (g.code >= ctx_.order()) throw std::invalid_argument("group element out of range");
            if (g.is_identity() && v != 0)
                throw std::invalid_argument("normalized cochains vanish on tuples containing 1");
        }
    }

    GroupContext ctx_;
    TupleCodec codec_;
    CoeffRing ring_;
    Storage values_;
};

using NormalizedCochain = Cochain<CochainKind::Normalized>;
using ICochain = Cochain<CochainKind::I>;

template <CochainKind To, CochainKind From>
Cochain<To> relabel(const Cochain<From>& c) {
    Cochain<To> out(c.ctx(), c.degree(), c.ring());
    out.values_ = c.values_;
    return out;
}

// a(u_1..u_n) = f((u_1 - 1) x ... x (u_n - 1)).
inline ICochain correspond(const NormalizedCochain& a) {
    return relabel<CochainKind::I>(a);
}

inline NormalizedCochain correspond_back(const ICochain& f) {
    return relabel<CochainKind::Normalized>(f);
}

// Calls fn(tuple) for every n-tuple of nonidentity elements, in lexicographic
// order.
template <class Fn>
void for_each_nonidentity_tuple(const GroupContext& ctx, int n, Fn&& fn) {
    std::vector<GroupElem> tuple(static_cast<std::size_t>(n), GroupElem{1});
    if (ctx.order() < 2 && n > 0) return;
    while (true) {
        fn(std::span<const GroupElem>(tuple));
        int pos = n - 1;
        while (pos >= 0 && tuple[static_cast<std::size_t>(pos)].code + 1 == ctx.order())
            tuple[static_cast<std::size_t>(pos--)].code = 1;
        if (pos < 0) break;
        ++tuple[static_cast<std::size_t>(pos)].code;
    }
}

// The n-fold tensor alpha_1 x ... x alpha_n of elements of the augmentation
// ideal.
class Tensor {
public:
    Tensor(GroupContext ctx, std::vector<RingElem> factors) : ctx_(ctx), factors_(std::move(factors)) {
        for (std::size_t j = 0; j < factors_.size(); ++j) {
            check_same_context(ctx_, factors_[j].ctx());
            if (!in_augmentation_ideal(factors_[j]))
                throw std::invalid_argument("tensor factor " + std::to_string(j) +
                                            " is not in the augmentation ideal");
        }
    }

    // (u_1 - 1) x ... x (u_n - 1).
    static Tensor from_tuple(const GroupContext& ctx, std::span<const GroupElem> tuple) {
        std::vector<RingElem> factors;
        factors.reserve(tuple.size());
        for (GroupElem u : tuple) factors.push_back(RingElem::difference(ctx, u));
        return {ctx, std::move(factors)};
    }

    const GroupContext& ctx() const { return ctx_; }
    const std::vector<RingElem>& factors() const { return factors_; }
    std::size_t size() const { return factors_.size(); }

    Tensor concat(const Tensor& other) const {
        check_same_context(ctx_, other.ctx_);
        std::vector<RingElem> all = factors_;
        all.insert(all.end(), other.factors_.begin(), other.factors_.end());
        return {ctx_, std::move(all)};
    }

private:
    GroupContext ctx_;
    std::vector<RingElem> factors_;
};

// One tensor factor rewritten in the difference basis {u - 1 : u != 1}.
using DifferenceExpansion = std::vector<std::pair<GroupElem, Coeff>>;

inline DifferenceExpansion expand_factor(const RingElem& a) {
    const auto m = as_difference_basis(a);
    return {m.begin(), m.end()};
}

namespace detail {

// f evaluated on factors[0] x ... x factors[n-1] by multilinear expansion.
// `calls` counts stored-value lookups when non-null.
inline Coeff eval_expanded(const ICochain& f, std::span<const DifferenceExpansion* const> factors,
                           std::uint64_t* calls = nullptr) {
    const RingArith ar = f.arith();
    const std::size_t n = factors.size();
    if (static_cast<int>(n) != f.degree())
        throw std::invalid_argument("tensor has " + std::to_string(n) + " factors, cochain degree is " +
                                    std::to_string(f.degree()));
    if (n == 0) {
        if (calls) ++*calls;
        return f.value_at(0);
    }
    for (const DifferenceExpansion* e : factors)
        if (e->empty()) return 0;
    std::vector<std::size_t> idx(n, 0);
    const std::uint64_t base = f.codec().base();
    Coeff total = 0;
    while (true) {
        std::uint64_t key = 0;
        Coeff weight = 1;
        for (std::size_t j = 0; j < n; ++j) {
            const auto& [u, c] = (*factors[j])[idx[j]];
            key = key * base + u.code;
            weight = ar.mul(weight, c);
        }
        if (calls) ++*calls;
        const Coeff v = f.value_at(key);
        if (v != 0) total = ar.add(total, ar.mul(weight, v));
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < factors[pos]->size()) break;
            idx[pos] = 0;
            if (pos == 0) return total;
        }
    }
}

}  // namespace detail

// Multilinear extension of f from the difference basis to all of T^n(I).
inline Coeff eval(const ICochain& f, const Tensor& t) {
    check_same_context(f.ctx(), t.ctx());
    if (static_cast<int>(t.size()) != f.degree())
        throw std::invalid_argument("tensor has " + std::to_string(t.size()) +
                                    " factors, cochain degree is " + std::to_string(f.degree()));
    std::vector<DifferenceExpansion> expansions;
    expansions.reserve(t.size());
    for (const RingElem& factor : t.factors()) {
        if (factor.ring() == CoeffRing::ModP && f.ring() == CoeffRing::Integers)
            throw std::invalid_argument("cannot evaluate an integral cochain on a mod-p tensor");
        expansions.push_back(expand_factor(factor));
    }
    std::vector<const DifferenceExpansion*> ptrs;
    for (const auto& e : expansions) ptrs.push_back(&e);
    return detail::eval_expanded(f, ptrs);
}

// G acting on Z (or F_2) through a sign character u -> (-1)^{<c, x(u)>}.
// A nontrivial sign action of an elementary abelian p-group needs p = 2.
class SignAction {
public:
    static SignAction trivial(const GroupContext& ctx) {
        return {ctx, std::vector<int>(static_cast<std::size_t>(ctx.r()), 0)};
    }

    SignAction(const GroupContext& ctx, std::vector<int> character) : ctx_(ctx), character_(std::move(character)) {
        if (static_cast<int>(character_.size()) != ctx.r())
            throw std::invalid_argument("character length does not match rank");
        bool nontrivial = false;
        for (int& c : character_) {
            c = static_cast<int>(mod_reduce(c, 2));
            nontrivial = nontrivial || c != 0;
        }
        if (nontrivial && ctx.p() != 2)
            throw std::invalid_argument("a nontrivial sign action requires p = 2");
    }

    bool is_trivial() const {
        return std::all_of(character_.begin(), character_.end(), [](int c) { return c == 0; });
    }

    // The scalar by which u acts.
    Coeff sign(GroupElem u) const {
        int parity = 0;
        for (int i = 1; i <= ctx_.r(); ++i)
            parity += character_[static_cast<std::size_t>(i - 1)] * ctx_.exponent(u, i);
        return parity % 2 == 0 ? 1 : -1;
    }

private:
    GroupContext ctx_;
    std::vector<int> character_;
};

// Classical normalized bar coboundary
//   b(u_1..u_{n+1}) = u_1 a(u_2..) + sum_j (-1)^j a(.., u_j u_{j+1}, ..) + (-1)^{n+1} a(u_1..u_n),
// computed tuple by tuple.
inline NormalizedCochain coboundary_bar(const NormalizedCochain& a, const SignAction& action) {
    const GroupContext& ctx = a.ctx();
    const int n = a.degree();
    const RingArith ar = a.arith();
    NormalizedCochain b(ctx, n + 1, a.ring());
    std::vector<GroupElem> sub(static_cast<std::size_t>(n));
    for_each_nonidentity_tuple(ctx, n + 1, [&](std::span<const GroupElem> u) {
        Coeff total = ar.mul(action.sign(u[0]), a.value(u.subspan(1)));
        for (int j = 1; j <= n; ++j) {
            std::size_t w = 0;
            for (int m = 0; m <= n; ++m) {
                if (m == j) continue;
                sub[w++] = (m == j - 1) ? ctx.mul(u[static_cast<std::size_t>(m)], u[static_cast<std::size_t>(m + 1)])
                                        : u[static_cast<std::size_t>(m)];
            }
            const Coeff v = a.value(sub);
            total = (j % 2 == 0) ? ar.add(total, v) : ar.sub(total, v);
        }
        const Coeff last = a.value(u.subspan(0, static_cast<std::size_t>(n)));
        total = ((n + 1) % 2 == 0) ? ar.add(total, last) : ar.sub(total, last);
        if (total != 0) b.add(u, total);
    });
    return b;
}

inline NormalizedCochain coboundary_bar(const NormalizedCochain& a) {
    return coboundary_bar(a, SignAction::trivial(a.ctx()));
}

// The I-cochain coboundary
//   g(a_1 x .. x a_{n+1}) = a_1 f(a_2 x ..) + sum_{i=1}^n (-1)^i f(.. x a_i a_{i+1} x ..).
// Products (u-1)(v-1) of difference-basis elements are expanded once per
// context; the map is then applied entry by entry of f.
class CoboundaryOperator {
public:
    explicit CoboundaryOperator(const GroupContext& ctx) : ctx_(ctx), splits_(ctx.order()) {
        for (std::uint32_t u = 1; u < ctx.order(); ++u)
            for (std::uint32_t v = 1; v < ctx.order(); ++v) {
                const RingElem prod = mul(RingElem::difference(ctx, GroupElem{u}),
                                          RingElem::difference(ctx, GroupElem{v}));
                for (const auto& [w, c] : as_difference_basis(prod))
                    splits_[w.code].push_back({GroupElem{u}, GroupElem{v}, c});
            }
    }

    const GroupContext& ctx() const { return ctx_; }

    // Pairs (u, v) whose product (u-1)(v-1) has coefficient c on (w-1).
    struct Split {
        GroupElem u, v;
        Coeff c;
    };
    const std::vector<Split>& splits(GroupElem w) const { return splits_[w.code]; }

    ICochain apply(const ICochain& f, const SignAction& action) const {
        check_same_context(ctx_, f.ctx());
        // Dense only pays off when the scatter touches a good share of the target.
        const std::uint64_t target = dense_size(f.degree() + 1);
        const std::uint64_t work = f.size() * static_cast<std::uint64_t>(f.degree() + 1) * 3 * ctx_.nonidentity_count();
        if (f.ring() == CoeffRing::ModP && target <= kDenseLimit && work >= target / 4) return apply_dense(f, action);
        const int n = f.degree();
        const RingArith ar = f.arith();
        ICochain g(ctx_, n + 1, f.ring());
        const std::uint64_t base = ctx_.order();
        std::vector<GroupElem> w(static_cast<std::size_t>(n));
        std::vector<std::uint64_t> place(static_cast<std::size_t>(n + 2), 1);
        for (int j = n; j >= 0; --j) place[static_cast<std::size_t>(j)] = place[static_cast<std::size_t>(j + 1)] * base;
        // place[j] = base^{n+1-j}; key of an (n+1)-tuple is sum_j code_j * place[j+1].
        const bool trivial = action.is_trivial();
        for (const auto& [key, val] : f.values()) {
            f.codec().decode(key, w);
            if (!trivial) {
                for (std::uint32_t u = 1; u < ctx_.order(); ++u) {
                    const Coeff s = action.sign(GroupElem{u}) - 1;
                    if (s != 0) g.add_at(u * place[1] + key, ar.mul(s, val));
                }
            }
            for (int i = 1; i <= n; ++i) {
                // Slot i of f receives the product of g-slots i and i+1.
                const std::uint64_t prefix = key / place[static_cast<std::size_t>(i)] * place[static_cast<std::size_t>(i)] * base;
                const std::uint64_t suffix = key % place[static_cast<std::size_t>(i + 1)];
                const Coeff sign = (i % 2 == 0) ? 1 : -1;
                for (const Split& s : splits_[w[static_cast<std::size_t>(i - 1)].code]) {
                    const std::uint64_t k2 = prefix + s.u.code * place[static_cast<std::size_t>(i)] +
                                             s.v.code * place[static_cast<std::size_t>(i + 1)] + suffix;
                    g.add_at(k2, ar.mul(sign * s.c, val));
                }
            }
        }
        return g;
    }

    ICochain apply(const ICochain& f) const { return apply(f, SignAction::trivial(ctx_)); }

private:
    static constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 23;

    std::uint64_t dense_size(int degree) const {
        std::uint64_t size = 1;
        for (int j = 0; j < degree; ++j) {
            if (size > kDenseLimit) return size;
            size *= ctx_.nonidentity_count();
        }
        return size;
    }

    // Same scatter over F_p into a flat array indexed in base |G| - 1 with
    // digit code - 1; cancellation happens in place rather than in a hash map.
    ICochain apply_dense(const ICochain& f, const SignAction& action) const {
        const int n = f.degree();
        const Coeff p = ctx_.p();
        const std::uint64_t base = ctx_.order(), dbase = ctx_.nonidentity_count();
        std::vector<Coeff> acc(dense_size(n + 1), 0);
        std::vector<GroupElem> w(static_cast<std::size_t>(n));
        std::vector<std::uint64_t> place(static_cast<std::size_t>(n + 2), 1);
        for (int j = n; j >= 0; --j) place[static_cast<std::size_t>(j)] = place[static_cast<std::size_t>(j + 1)] * dbase;
        const bool trivial = action.is_trivial();
        for (const auto& [key, val] : f.values()) {
            f.codec().decode(key, w);
            std::uint64_t idx = 0;
            for (GroupElem g : w) idx = idx * dbase + (g.code - 1);
            if (!trivial) {
                for (std::uint32_t u = 1; u < ctx_.order(); ++u) {
                    const Coeff s = action.sign(GroupElem{u}) - 1;
                    if (s != 0) {
                        Coeff& slot = acc[(u - 1) * place[1] + idx];
                        slot = (slot + s * val) % p;
                    }
                }
            }
            for (int i = 1; i <= n; ++i) {
                const std::uint64_t prefix = idx / place[static_cast<std::size_t>(i)] * place[static_cast<std::size_t>(i)] * dbase;
                const std::uint64_t suffix = idx % place[static_cast<std::size_t>(i + 1)];
                const Coeff sign = (i % 2 == 0) ? 1 : -1;
                for (const Split& s : splits_[w[static_cast<std::size_t>(i - 1)].code]) {
                    Coeff& slot = acc[prefix + (s.u.code - 1) * place[static_cast<std::size_t>(i)] +
                                      (s.v.code - 1) * place[static_cast<std::size_t>(i + 1)] + suffix];
                    slot = (slot + sign * s.c * val) % p;
                }
            }
        }
        ICochain g(ctx_, n + 1, CoeffRing::ModP);
        for (std::uint64_t idx = 0; idx < acc.size(); ++idx) {
            if (acc[idx] == 0) continue;
            std::uint64_t key = 0, weight = 1, rest = idx;
            for (int j = 0; j <= n; ++j) {
                key += (rest % dbase + 1) * weight;
                rest /= dbase;
                weight *= base;
            }
            g.add_at(key, acc[idx]);
        }
        return g;
    }

    GroupContext ctx_;
    std::vector<std::vector<Split>> splits_;
};

inline ICochain coboundary_I(const ICochain& f, const SignAction& action) {
    return CoboundaryOperator(f.ctx()).apply(f, action);
}

inline ICochain coboundary_I(const ICochain& f) { return CoboundaryOperator(f.ctx()).apply(f); }

// (f u g)(a_1 x .. x a_{m+n}) = (-1)^{mn} f(a_1..a_m) g(a_{m+1}..a_{m+n}).
template <CochainKind Kind>
Cochain<Kind> cup(const Cochain<Kind>& f, const Cochain<Kind>& g) {
    check_same_context(f.ctx(), g.ctx());
    if (f.ring() != g.ring()) throw std::invalid_argument("coefficient ring mismatch in cup product");
    const int m = f.degree(), n = g.degree();
    const RingArith ar = f.arith();
    Cochain<Kind> out(f.ctx(), m + n, f.ring());
    std::uint64_t shift = 1;
    for (int j = 0; j < n; ++j) shift *= f.ctx().order();
    const Coeff sign = (m * n) % 2 == 0 ? 1 : -1;
    for (const auto& [kf, vf] : f.values())
        for (const auto& [kg, vg] : g.values()) out.add_at(kf * shift + kg, ar.mul(sign, ar.mul(vf, vg)));
    return out;
}

// f_1 u ... u f_k evaluated blockwise with the single sign (-1)^{l(l-1)/2},
// l = number of odd-degree factors. Equals the left-nested cup.
template <CochainKind Kind>
Cochain<Kind> cup_many(std::span<const Cochain<Kind>> fs, const GroupContext& ctx, CoeffRing ring) {
    int l = 0;
    Cochain<Kind> out(ctx, 0, ring);
    out.add_at(0, 1);
    for (const auto& f : fs) {
        check_same_context(ctx, f.ctx());
        if (f.ring() != ring) throw std::invalid_argument("coefficient ring mismatch in cup product");
        if (f.degree() % 2 != 0) ++l;
        // Unsigned block concatenation.
        Cochain<Kind> next(ctx, out.degree() + f.degree(), ring);
        std::uint64_t shift = 1;
        for (int j = 0; j < f.degree(); ++j) shift *= ctx.order();
        const RingArith ar = out.arith();
        for (const auto& [ka, va] : out.values())
            for (const auto& [kb, vb] : f.values()) next.add_at(ka * shift + kb, ar.mul(va, vb));
        out = std::move(next);
    }
    if ((l * (l - 1) / 2) % 2 != 0) out = -out;
    return out;
}

template <CochainKind Kind>
Cochain<Kind> cup_many(const std::vector<Cochain<Kind>>& fs) {
    if (fs.empty()) throw std::invalid_argument("cup_many of an empty list needs a context");
    return cup_many<Kind>(std::span<const Cochain<Kind>>(fs), fs.front().ctx(), fs.front().ring());
}

// A permutation sigma of {0, ..., n-1}, stored by images sigma(j).
class Permutation {
public:
    static Permutation identity(int n) {
        std::vector<int> img(static_cast<std::size_t>(n));
        std::iota(img.begin(), img.end(), 0);
        return Permutation(std::move(img));
    }

    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (int v : images_) {
            if (v < 0 || v >= static_cast<int>(images_.size()) || seen[static_cast<std::size_t>(v)])
                throw std::invalid_argument("not a permutation");
            seen[static_cast<std::size_t>(v)] = true;
        }
    }

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int j) const { return images_[static_cast<std::size_t>(j)]; }
    const std::vector<int>& images() const { return images_; }

    Permutation inverse() const {
        std::vector<int> inv(images_.size());
        for (std::size_t j = 0; j < images_.size(); ++j) inv[static_cast<std::size_t>(images_[j])] = static_cast<int>(j);
        return Permutation(std::move(inv));
    }

    // (this o other)(j) = this(other(j)).
    Permutation compose(const Permutation& other) const {
        if (other.size() != size()) throw std::invalid_argument("permutation size mismatch");
        std::vector<int> out(images_.size());
        for (std::size_t j = 0; j < images_.size(); ++j) out[j] = (*this)(other(static_cast<int>(j)));
        return Permutation(std::move(out));
    }

    int sign() const {
        std::vector<bool> visited(images_.size(), false);
        int s = 1;
        for (std::size_t j = 0; j < images_.size(); ++j) {
            if (visited[j]) continue;
            std::size_t len = 0;
            for (std::size_t k = j; !visited[k]; k = static_cast<std::size_t>(images_[k])) {
                visited[k] = true;
                ++len;
            }
            if (len % 2 == 0) s = -s;
        }
        return s;
    }

    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> images_;
};

// (sigma f)(b_1 x .. x b_n) = sgn(sigma) f(b_{sigma^-1(1)} x .. x b_{sigma^-1(n)}).
// In terms of stored values: (sigma f)[w_{sigma(1)}, .., w_{sigma(n)}] = sgn(sigma) f[w].
template <CochainKind Kind>
Cochain<Kind> sigma_act(const Permutation& sigma, const Cochain<Kind>& f) {
    if (sigma.size() != f.degree())
        throw std::invalid_argument("permutation of size " + std::to_string(sigma.size()) +
                                    " acting on a degree " + std::to_string(f.degree()) + " cochain");
    const RingArith ar = f.arith();
    const Coeff sgn = sigma.sign();
    Cochain<Kind> out(f.ctx(), f.degree(), f.ring());
    std::vector<GroupElem> w(static_cast<std::size_t>(f.degree())), u(w.size());
    for (const auto& [key, v] : f.values()) {
        f.codec().decode(key, w);
        for (int j = 0; j < f.degree(); ++j) u[static_cast<std::size_t>(j)] = w[static_cast<std::size_t>(sigma(j))];
        out.add_at(f.codec().encode(u), ar.mul(sgn, v));
    }
    return out;
}

}  // namespace fpcohom
