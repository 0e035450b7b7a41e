#pragma once

#include <gmpxx.h>

#include <optional>

#include "quadweb/errors.hpp"
#include "quadweb/rng.hpp"

namespace quadweb {

/// The field Q, backed by GMP rationals.  Same element-plus-context shape
/// as Fp so the generic code is oblivious to which field it runs over.
/// All Rationals objects are the same field, so they always compare equal.
class Rationals {
public:
    using Elem = mpq_class;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_int(long long v) const { return Elem(static_cast<long>(v)); }

    bool is_zero(const Elem& a) const { return sgn(a) == 0; }
    bool eq(const Elem& a, const Elem& b) const { return cmp(a, b) == 0; }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }

    Elem inv(const Elem& a) const {
        if (sgn(a) == 0) throw DivisionByZeroError();
        return 1 / a;
    }
    Elem div(const Elem& a, const Elem& b) const {
        if (sgn(b) == 0) throw DivisionByZeroError();
        return a / b;
    }

    Elem pow(const Elem& a, std::uint64_t e) const {
        Elem r(1), base(a);
        while (e) {
            if (e & 1) r *= base;
            if (e >>= 1) base *= base;
        }
        return r;
    }

    /// Exact rational square root when one exists (perfect-square
    /// numerator and denominator); nullopt otherwise.
    std::optional<Elem> sqrt(const Elem& a) const {
        if (sgn(a) < 0) return std::nullopt;
        if (sgn(a) == 0) return Elem(0);
        mpz_class num = a.get_num(), den = a.get_den();
        if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
            mpz_class rn, rd;
            mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
            mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
            return Elem(rn, rd);
        }
        return std::nullopt;
    }

    bool is_square(const Elem& a) const { return sqrt(a).has_value(); }

    /// Small random integers; enough entropy for genericity, small
    /// enough that intermediate numerators stay printable.
    Elem uniform(Rng& rng) const {
        return Elem(static_cast<long>(rng.below(201)) - 100);
    }

    bool operator==(const Rationals&) const { return true; }

private:
};

}  // namespace quadweb
