#pragma once

#include <cstdint>
#include <optional>

#include "quadweb/errors.hpp"
#include "quadweb/rng.hpp"

namespace quadweb {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the 12 smallest prime bases decide
/// primality for every 64-bit integer.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

/// The prime field F_p, p an odd prime below 2^62.  This object *is* the
/// field: elements are plain reduced residues (uint64_t) and carry no
/// back-pointer, so all arithmetic goes through the field object.
///
/// Two Fp objects are interchangeable iff they compare equal (same p);
/// containers enforce that and throw ContextMismatchError otherwise.
class Fp {
public:
    using Elem = std::uint64_t;

    explicit Fp(std::uint64_t p) : p_(p) {
        if (p < 3 || p >= (1ULL << 62) || !is_prime_u64(p))
            throw PreconditionError("Fp modulus must be an odd prime below 2^62");
    }

    std::uint64_t modulus() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }

    Elem from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        return static_cast<Elem>(r);
    }

    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }

    Elem add(Elem a, Elem b) const {
        Elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const { return detail::mulmod_u64(a, b, p_); }

    Elem pow(Elem a, std::uint64_t e) const { return detail::powmod_u64(a, e, p_); }

    Elem inv(Elem a) const {
        if (a == 0) throw DivisionByZeroError();
        // extended Euclid; faster than a**(p-2) and exact for any unit
        std::int64_t t = 0, nt = 1;
        std::uint64_t r = p_, nr = a;
        while (nr != 0) {
            std::uint64_t q = r / nr;
            std::int64_t tmp_t = t - static_cast<std::int64_t>(q) * nt;
            t = nt; nt = tmp_t;
            std::uint64_t tmp_r = r - q * nr;
            r = nr; nr = tmp_r;
        }
        return t < 0 ? static_cast<Elem>(t + static_cast<std::int64_t>(p_)) : static_cast<Elem>(t);
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    /// Euler's criterion.  Convention: 0 counts as a square.
    bool is_square(Elem a) const {
        if (a == 0) return true;
        return pow(a, (p_ - 1) / 2) == 1;
    }

    /// Tonelli-Shanks.  Returns the root with the smaller residue
    /// representative (the pair is {r, p-r}), or nullopt for a non-square.
    std::optional<Elem> sqrt(Elem a) const {
        if (a == 0) return Elem{0};
        if (!is_square(a)) return std::nullopt;
        Elem r;
        if (p_ % 4 == 3) {
            r = pow(a, (p_ + 1) / 4);
        } else {
            std::uint64_t q = p_ - 1;
            int s = 0;
            while ((q & 1) == 0) { q >>= 1; ++s; }
            // any fixed non-residue works; scan upward for determinism
            Elem z = 2;
            while (is_square(z)) ++z;
            Elem c = pow(z, q);
            Elem x = pow(a, (q + 1) / 2);
            Elem t = pow(a, q);
            int m = s;
            while (t != 1) {
                Elem t2 = t;
                int i = 0;
                while (t2 != 1) { t2 = mul(t2, t2); ++i; }
                Elem b = pow(c, 1ULL << (m - i - 1));
                x = mul(x, b);
                c = mul(b, b);
                t = mul(t, c);
                m = i;
            }
            r = x;
        }
        return r <= p_ - r ? r : p_ - r;
    }

    Elem uniform(Rng& rng) const { return rng.below(p_); }

    bool operator==(const Fp&) const = default;

private:
    std::uint64_t p_;
};

}  // namespace quadweb
