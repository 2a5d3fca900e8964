#pragma once

// Scalar arithmetic shared by every module: checked 64-bit integers,
// reduction into [0, p), and the error types surfaced by the library.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fpcohom {

using Coeff = std::int64_t;

// Coefficient ring of group-ring elements and cochains.
enum class CoeffRing { Integers, ModP };

inline const char* to_string(CoeffRing ring) { return ring == CoeffRing::Integers ? "Z" : "Fp"; }

// Raised when an exact integer computation would leave the 64-bit range.
class ArithmeticOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

// Raised by the oracle when a linear-algebra problem is larger than the
// configured budget. `required()` is the size that would have been needed.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::uint64_t required, std::uint64_t budget)
        : std::runtime_error("size budget exceeded: requires " + std::to_string(required) +
                             " stored entries, budget is " + std::to_string(budget)),
          required_(required),
          budget_(budget) {}

    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

// Raised by class-level operations handed a cochain with nonzero coboundary.
class NotACocycle : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline Coeff checked_add(Coeff a, Coeff b) {
    Coeff out;
    if (__builtin_add_overflow(a, b, &out))
        throw ArithmeticOverflow("integer overflow in addition");
    return out;
}

inline Coeff checked_sub(Coeff a, Coeff b) {
    Coeff out;
    if (__builtin_sub_overflow(a, b, &out))
        throw ArithmeticOverflow("integer overflow in subtraction");
    return out;
}

inline Coeff checked_mul(Coeff a, Coeff b) {
    Coeff out;
    if (__builtin_mul_overflow(a, b, &out))
        throw ArithmeticOverflow("integer overflow in multiplication");
    return out;
}

// Representative of x mod p in [0, p).
inline Coeff mod_reduce(Coeff x, Coeff p) {
    Coeff r = x % p;
    return r < 0 ? r + p : r;
}

inline Coeff mod_pow(Coeff base, std::uint64_t exp, Coeff p) {
    Coeff result = 1 % p;
    base = mod_reduce(base, p);
    while (exp > 0) {
        if (exp & 1U) result = result * base % p;
        base = base * base % p;
        exp >>= 1U;
    }
    return result;
}

// Inverse in F_p via Fermat; x must be nonzero mod p.
inline Coeff mod_inverse(Coeff x, Coeff p) {
    x = mod_reduce(x, p);
    if (x == 0) throw std::domain_error("zero has no inverse mod p");
    return mod_pow(x, static_cast<std::uint64_t>(p - 2), p);
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Arithmetic in the coefficient ring attached to a value: exact checked
// integers, or residues in [0, p).
struct RingArith {
    CoeffRing ring;
    Coeff p;

    Coeff normalize(Coeff x) const { return ring == CoeffRing::ModP ? mod_reduce(x, p) : x; }

    Coeff add(Coeff a, Coeff b) const {
        return ring == CoeffRing::ModP ? mod_reduce(a + b, p) : checked_add(a, b);
    }

    Coeff sub(Coeff a, Coeff b) const {
        return ring == CoeffRing::ModP ? mod_reduce(a - b, p) : checked_sub(a, b);
    }

    Coeff mul(Coeff a, Coeff b) const {
        if (ring == CoeffRing::ModP) return mod_reduce(mod_reduce(a, p) * mod_reduce(b, p), p);
        return checked_mul(a, b);
    }

    Coeff neg(Coeff a) const { return sub(0, a); }
};

}  // namespace fpcohom
