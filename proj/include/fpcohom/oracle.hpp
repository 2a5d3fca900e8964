#pragma once

// Brute-force verification over F_p: matrices of the coboundary maps on the
// difference basis, Gaussian elimination, cohomology dimensions, coboundary
// membership and seeded random cocycles. Nothing here depends on tau/theta.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fpcohom/algebra.hpp"
#include "fpcohom/cochain.hpp"

namespace fpcohom {

// Default ceiling on stored matrix entries (and on row counts).
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

// Sorted (index, value) pairs with values in [1, p).
using SparseVec = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

namespace detail {

// x + c*y over F_p.
inline SparseVec axpy(const SparseVec& x, std::uint32_t c, const SparseVec& y, std::uint32_t p) {
    SparseVec out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    const std::uint64_t pp = p;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            out.emplace_back(y[j].first, static_cast<std::uint32_t>(std::uint64_t{c} * y[j].second % pp));
            ++j;
        } else {
            const auto v = static_cast<std::uint32_t>((x[i].second + std::uint64_t{c} * y[j].second) % pp);
            if (v != 0) out.emplace_back(x[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace detail

class FpMatrix {
public:
    FpMatrix(std::uint32_t p, std::uint64_t rows, std::uint64_t cols)
        : p_(p), rows_(rows), columns_(static_cast<std::size_t>(cols)) {}

    static FpMatrix identity(std::uint32_t p, std::uint64_t k) {
        FpMatrix m(p, k, k);
        for (std::uint64_t j = 0; j < k; ++j) m.columns_[j] = {{static_cast<std::uint32_t>(j), 1 % p}};
        return m;
    }

    std::uint32_t p() const { return p_; }
    std::uint64_t rows() const { return rows_; }
    std::uint64_t cols() const { return columns_.size(); }
    const SparseVec& column(std::uint64_t j) const { return columns_[static_cast<std::size_t>(j)]; }

    void set_column(std::uint64_t j, SparseVec v) {
        for (auto& [idx, val] : v) {
            if (idx >= rows_) throw std::out_of_range("row index out of range");
            val %= p_;
        }
        std::sort(v.begin(), v.end());
        v.erase(std::remove_if(v.begin(), v.end(), [](const auto& e) { return e.second == 0; }), v.end());
        columns_[static_cast<std::size_t>(j)] = std::move(v);
    }

    void set(std::uint64_t i, std::uint64_t j, Coeff value) {
        SparseVec& col = columns_[static_cast<std::size_t>(j)];
        const auto v = static_cast<std::uint32_t>(mod_reduce(value, p_));
        auto it = std::lower_bound(col.begin(), col.end(), std::make_pair(static_cast<std::uint32_t>(i), 0U));
        if (it != col.end() && it->first == i) {
            if (v == 0)
                col.erase(it);
            else
                it->second = v;
        } else if (v != 0) {
            col.insert(it, {static_cast<std::uint32_t>(i), v});
        }
    }

    std::uint32_t entry(std::uint64_t i, std::uint64_t j) const {
        const SparseVec& col = columns_[static_cast<std::size_t>(j)];
        auto it = std::lower_bound(col.begin(), col.end(), std::make_pair(static_cast<std::uint32_t>(i), 0U));
        return (it != col.end() && it->first == i) ? it->second : 0;
    }

    std::uint64_t nnz() const {
        std::uint64_t total = 0;
        for (const auto& c : columns_) total += c.size();
        return total;
    }

    bool is_zero() const { return nnz() == 0; }

    // this * v for a sparse column vector v of length cols().
    SparseVec apply(const SparseVec& v) const {
        SparseVec out;
        for (const auto& [j, c] : v) out = detail::axpy(out, c, columns_[j], p_);
        return out;
    }

    FpMatrix operator*(const FpMatrix& other) const {
        if (cols() != other.rows()) throw std::invalid_argument("matrix dimension mismatch");
        if (p_ != other.p_) throw std::invalid_argument("matrix characteristic mismatch");
        FpMatrix out(p_, rows_, other.cols());
        for (std::uint64_t j = 0; j < other.cols(); ++j) out.columns_[j] = apply(other.columns_[j]);
        return out;
    }

private:
    std::uint32_t p_;
    std::uint64_t rows_;
    std::vector<SparseVec> columns_;
};

// Incremental column echelon form. Each inserted vector is reduced against the
// pivots found so far; pivots are keyed by their leading (smallest) row index
// and normalized to leading coefficient 1.
class ColumnEliminator {
public:
    explicit ColumnEliminator(std::uint32_t p, bool track_combinations = false)
        : p_(p), track_(track_combinations) {}

    // Returns true when v was independent of the earlier vectors. When
    // combinations are tracked and v is dependent, `relation()` holds a vector
    // over the inserted indices that maps to zero.
    bool insert(SparseVec v, std::uint32_t label = 0) {
        SparseVec comb;
        if (track_) comb = {{label, 1}};
        reduce_in_place(v, comb);
        if (v.empty()) {
            relation_ = std::move(comb);
            return false;
        }
        const std::uint32_t lead = v.front().first;
        const auto inv = static_cast<std::uint32_t>(mod_inverse(v.front().second, p_));
        for (auto& e : v) e.second = static_cast<std::uint32_t>(std::uint64_t{e.second} * inv % p_);
        for (auto& e : comb) e.second = static_cast<std::uint32_t>(std::uint64_t{e.second} * inv % p_);
        pivots_.emplace(lead, Pivot{std::move(v), std::move(comb)});
        return true;
    }

    // Residue of v after reduction; empty iff v lies in the span.
    SparseVec reduce(SparseVec v) const {
        SparseVec comb;
        reduce_in_place(v, comb);
        return v;
    }

    std::size_t rank() const { return pivots_.size(); }
    const SparseVec& relation() const { return relation_; }

private:
    struct Pivot {
        SparseVec vec;
        SparseVec comb;
    };

    void reduce_in_place(SparseVec& v, SparseVec& comb) const {
        // Leading entries only ever move to larger rows, so one forward pass
        // over the pivots suffices.
        std::size_t pos = 0;
        while (pos < v.size()) {
            auto it = pivots_.find(v[pos].first);
            if (it == pivots_.end()) {
                ++pos;
                continue;
            }
            const std::uint32_t factor = p_ - v[pos].second;
            v = detail::axpy(v, factor, it->second.vec, p_);
            if (track_) comb = detail::axpy(comb, factor, it->second.comb, p_);
            // Entries before pos are untouched: the pivot starts at v[pos].
        }
    }

    std::uint32_t p_;
    bool track_;
    std::map<std::uint32_t, Pivot> pivots_;
    SparseVec relation_;
};

inline std::uint64_t rank(const FpMatrix& m) {
    ColumnEliminator elim(m.p());
    for (std::uint64_t j = 0; j < m.cols(); ++j) elim.insert(m.column(j));
    return elim.rank();
}

// Row reduction on a dense copy; the second route for small matrices.
inline std::uint64_t rank_dense(const FpMatrix& m) {
    const std::uint64_t rows = m.rows(), cols = m.cols();
    if (rows * cols > (std::uint64_t{1} << 26)) throw BudgetExceeded(rows * cols, std::uint64_t{1} << 26);
    std::vector<std::vector<std::uint32_t>> a(rows, std::vector<std::uint32_t>(cols, 0));
    for (std::uint64_t j = 0; j < cols; ++j)
        for (const auto& [i, v] : m.column(j)) a[i][j] = v;
    const std::uint32_t p = m.p();
    std::uint64_t r = 0;
    for (std::uint64_t c = 0; c < cols && r < rows; ++c) {
        std::uint64_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        const auto inv = static_cast<std::uint64_t>(mod_inverse(a[r][c], p));
        for (std::uint64_t k = c; k < cols; ++k) a[r][k] = static_cast<std::uint32_t>(a[r][k] * inv % p);
        for (std::uint64_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const std::uint64_t f = a[i][c];
            for (std::uint64_t k = c; k < cols; ++k)
                a[i][k] = static_cast<std::uint32_t>((a[i][k] + (p - f) * a[r][k]) % p);
        }
        ++r;
    }
    return r;
}

// Basis of {v : m v = 0}, one sparse vector per dependent column.
inline std::vector<SparseVec> kernel_basis(const FpMatrix& m) {
    ColumnEliminator elim(m.p(), true);
    std::vector<SparseVec> out;
    for (std::uint64_t j = 0; j < m.cols(); ++j)
        if (!elim.insert(m.column(j), static_cast<std::uint32_t>(j))) out.push_back(elim.relation());
    return out;
}

// Dense indexing of C^n by tuples of nonidentity elements:
// index = sum_j (code_j - 1) (|G| - 1)^{n-1-j}.
class BasisIndexer {
public:
    BasisIndexer(const GroupContext& ctx, int degree) : ctx_(ctx), codec_(ctx, degree) {
        dim_ = 1;
        for (int j = 0; j < degree; ++j) dim_ *= ctx.nonidentity_count();
    }

    std::uint64_t dim() const { return dim_; }
    int degree() const { return codec_.degree(); }

    std::uint64_t index_of_key(std::uint64_t key) const {
        const std::uint64_t base = ctx_.order();
        std::uint64_t idx = 0, place = 1;
        for (int j = 0; j < codec_.degree(); ++j) {
            idx += (key % base - 1) * place;
            key /= base;
            place *= ctx_.nonidentity_count();
        }
        return idx;
    }

    std::uint64_t key_of_index(std::uint64_t idx) const {
        const std::uint64_t m = ctx_.nonidentity_count();
        std::uint64_t key = 0, place = 1;
        for (int j = 0; j < codec_.degree(); ++j) {
            key += (idx % m + 1) * place;
            idx /= m;
            place *= ctx_.order();
        }
        return key;
    }

    SparseVec to_vector(const ICochain& f) const {
        if (f.ring() != CoeffRing::ModP) throw std::invalid_argument("oracle works over F_p");
        SparseVec v;
        v.reserve(f.size());
        for (const auto& [key, c] : f.values()) v.emplace_back(static_cast<std::uint32_t>(index_of_key(key)), static_cast<std::uint32_t>(c));
        std::sort(v.begin(), v.end());
        return v;
    }

    ICochain to_cochain(const SparseVec& v) const {
        ICochain f(ctx_, codec_.degree(), CoeffRing::ModP);
        for (const auto& [idx, c] : v) f.add_at(key_of_index(idx), c);
        return f;
    }

    ICochain basis_cochain(std::uint64_t idx) const {
        ICochain f(ctx_, codec_.degree(), CoeffRing::ModP);
        f.add_at(key_of_index(idx), 1);
        return f;
    }

private:
    GroupContext ctx_;
    TupleCodec codec_;
    std::uint64_t dim_;
};

inline std::uint64_t cochain_dimension(const GroupContext& ctx, int n) {
    std::uint64_t d = 1;
    for (int j = 0; j < n; ++j) {
        if (d > (std::uint64_t{1} << 62) / ctx.nonidentity_count()) return std::uint64_t{1} << 62;
        d *= ctx.nonidentity_count();
    }
    return d;
}

// Matrix of d_n: C^n -> C^{n+1} (trivial action) on the difference basis;
// column j is the coboundary of the j-th basis cochain.
inline FpMatrix d_matrix(const GroupContext& ctx, int n, std::uint64_t budget = kDefaultBudget) {
    if (n < 0) throw std::invalid_argument("negative degree");
    const std::uint64_t rows = cochain_dimension(ctx, n + 1);
    if (rows > budget) throw BudgetExceeded(rows, budget);
    const BasisIndexer src(ctx, n), dst(ctx, n + 1);
    const CoboundaryOperator d(ctx);
    const auto p = static_cast<std::uint32_t>(ctx.p());
    FpMatrix m(p, rows, src.dim());
    std::uint64_t stored = 0;
    for (std::uint64_t j = 0; j < src.dim(); ++j) {
        SparseVec col = dst.to_vector(d.apply(src.basis_cochain(j)));
        stored += col.size();
        if (stored > budget) throw BudgetExceeded(stored, budget);
        m.set_column(j, std::move(col));
    }
    return m;
}

struct CohomologyReport {
    int p = 0, r = 0, n = 0;
    std::uint64_t dim_cochains = 0;  // (p^r - 1)^n
    std::uint64_t rank_dn = 0;       // rank of d_n
    std::uint64_t dim_ker_dn = 0;    // dim Z^n
    std::uint64_t rank_prev = 0;     // rank of d_{n-1} = dim B^n
    std::uint64_t dim_H = 0;
    std::uint64_t expected_dim_H = 0;  // number of degree-n basis monomials
};

// Count of signatures (n_1..n_r) with sum n, i.e. C(n + r - 1, r - 1).
inline std::uint64_t monomial_count(int r, int n) {
    return static_cast<std::uint64_t>(detail::binomial_exact(n + r - 1, r - 1));
}

inline CohomologyReport cohomology_dim(const GroupContext& ctx, int n, std::uint64_t budget = kDefaultBudget) {
    CohomologyReport rep;
    rep.p = ctx.p();
    rep.r = ctx.r();
    rep.n = n;
    rep.dim_cochains = cochain_dimension(ctx, n);
    rep.rank_dn = rank(d_matrix(ctx, n, budget));
    rep.rank_prev = n == 0 ? 0 : rank(d_matrix(ctx, n - 1, budget));
    rep.dim_ker_dn = rep.dim_cochains - rep.rank_dn;
    if (rep.dim_ker_dn < rep.rank_prev) throw std::logic_error("image of d_{n-1} larger than kernel of d_n");
    rep.dim_H = rep.dim_ker_dn - rep.rank_prev;
    rep.expected_dim_H = monomial_count(ctx.r(), n);
    return rep;
}

// B^n = im d_{n-1}, held in echelon form for repeated membership tests.
class CoboundarySpace {
public:
    CoboundarySpace(const GroupContext& ctx, int n, std::uint64_t budget = kDefaultBudget)
        : ctx_(ctx), n_(n), indexer_(ctx, n), elim_(static_cast<std::uint32_t>(ctx.p())), d_(ctx) {
        if (n < 0) throw std::invalid_argument("negative degree");
        if (n > 0) {
            const FpMatrix m = d_matrix(ctx, n - 1, budget);
            for (std::uint64_t j = 0; j < m.cols(); ++j) elim_.insert(m.column(j));
        }
    }

    int degree() const { return n_; }
    std::uint64_t dimension() const { return elim_.rank(); }

    bool is_cocycle(const ICochain& f) const { return d_.apply(f).is_zero(); }

    bool contains(const ICochain& f) const {
        check_same_context(ctx_, f.ctx());
        if (f.degree() != n_) throw std::invalid_argument("cochain degree does not match the space");
        if (!is_cocycle(f)) throw NotACocycle("degree " + std::to_string(n_) + " cochain is not a cocycle");
        return elim_.reduce(indexer_.to_vector(f)).empty();
    }

    bool classes_equal(const ICochain& f, const ICochain& g) const {
        if (!is_cocycle(f) || !is_cocycle(g)) throw NotACocycle("class comparison needs cocycles");
        return contains(f - g);
    }

private:
    GroupContext ctx_;
    int n_;
    BasisIndexer indexer_;
    ColumnEliminator elim_;
    CoboundaryOperator d_;
};

inline bool is_coboundary(const ICochain& f, std::uint64_t budget = kDefaultBudget) {
    if (f.ring() != CoeffRing::ModP) throw std::invalid_argument("oracle works over F_p");
    return CoboundarySpace(f.ctx(), f.degree(), budget).contains(f);
}

inline bool classes_equal(const ICochain& f, const ICochain& g, std::uint64_t budget = kDefaultBudget) {
    f.check_compatible(g);
    if (f.ring() != CoeffRing::ModP) throw std::invalid_argument("oracle works over F_p");
    return CoboundarySpace(f.ctx(), f.degree(), budget).classes_equal(f, g);
}

// Randomness: std::mt19937_64, whose output sequence is fixed by the C++
// standard, with rejection sampling for uniform residues. No global state.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("empty range");
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x;
        do x = engine_();
        while (x >= limit);
        return x % bound;
    }

private:
    std::mt19937_64 engine_;
};

// Uniform random cochain with every basis value drawn from F_p, or, when
// `max_entries` is smaller than the dimension, that many random positions.
inline ICochain random_cochain(const GroupContext& ctx, int n, std::uint64_t seed,
                               std::uint64_t max_entries = std::numeric_limits<std::uint64_t>::max()) {
    SeededRng rng(seed);
    const BasisIndexer idx(ctx, n);
    ICochain f(ctx, n, CoeffRing::ModP);
    const auto p = static_cast<std::uint64_t>(ctx.p());
    if (idx.dim() <= max_entries) {
        for (std::uint64_t j = 0; j < idx.dim(); ++j) f.add_at(idx.key_of_index(j), static_cast<Coeff>(rng.below(p)));
    } else {
        for (std::uint64_t e = 0; e < max_entries; ++e)
            f.add_at(idx.key_of_index(rng.below(idx.dim())), static_cast<Coeff>(rng.below(p)));
    }
    return f;
}

// Uniform element of Z^n: random F_p-combination of a kernel basis of d_n.
inline ICochain random_cocycle(const GroupContext& ctx, int n, std::uint64_t seed, std::uint64_t budget = kDefaultBudget) {
    const auto basis = kernel_basis(d_matrix(ctx, n, budget));
    SeededRng rng(seed);
    const auto p = static_cast<std::uint32_t>(ctx.p());
    SparseVec v;
    for (const SparseVec& k : basis) v = detail::axpy(v, static_cast<std::uint32_t>(rng.below(p)), k, p);
    return BasisIndexer(ctx, n).to_cochain(v);
}

}  // namespace fpcohom
