#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "quadweb/field.hpp"

namespace quadweb {

/// Dense univariate polynomial over a field context.  Coefficients are
/// stored low degree first; the vector never ends in a zero, and the
/// empty vector is the zero polynomial (degree -1).
template <FieldContext F>
class UniPoly {
public:
    using Elem = typename F::Elem;

    explicit UniPoly(const F& field) : field_(field) {}
    UniPoly(const F& field, std::vector<Elem> coeffs) : field_(field), c_(std::move(coeffs)) { trim(); }

    static UniPoly constant(const F& field, Elem v) { return UniPoly(field, {std::move(v)}); }
    static UniPoly x(const F& field) { return UniPoly(field, {field.zero(), field.one()}); }

    const F& field() const { return field_; }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }
    const std::vector<Elem>& coeffs() const { return c_; }

    Elem leading() const {
        if (c_.empty()) throw PreconditionError("leading coefficient of the zero polynomial");
        return c_.back();
    }

    UniPoly operator+(const UniPoly& g) const {
        require_same_context(field_, g.field_, "UniPoly::operator+");
        std::vector<Elem> r(std::max(c_.size(), g.c_.size()), field_.zero());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_.add(coeff(i), g.coeff(i));
        return UniPoly(field_, std::move(r));
    }

    UniPoly operator-(const UniPoly& g) const {
        require_same_context(field_, g.field_, "UniPoly::operator-");
        std::vector<Elem> r(std::max(c_.size(), g.c_.size()), field_.zero());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_.sub(coeff(i), g.coeff(i));
        return UniPoly(field_, std::move(r));
    }

    UniPoly operator*(const UniPoly& g) const {
        require_same_context(field_, g.field_, "UniPoly::operator*");
        if (c_.empty() || g.c_.empty()) return UniPoly(field_);
        std::vector<Elem> r(c_.size() + g.c_.size() - 1, field_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < g.c_.size(); ++j)
                r[i + j] = field_.add(r[i + j], field_.mul(c_[i], g.c_[j]));
        return UniPoly(field_, std::move(r));
    }

    UniPoly scaled(const Elem& s) const {
        if (field_.is_zero(s)) return UniPoly(field_);
        std::vector<Elem> r(c_);
        for (auto& v : r) v = field_.mul(v, s);
        return UniPoly(field_, std::move(r));
    }

    bool operator==(const UniPoly& g) const {
        if (!(field_ == g.field_) || c_.size() != g.c_.size()) return false;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!field_.eq(c_[i], g.c_[i])) return false;
        return true;
    }

    Elem eval(const Elem& t) const {
        Elem acc = field_.zero();
        for (std::size_t i = c_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, t), c_[i]);
        return acc;
    }

    UniPoly derivative() const {
        if (c_.size() < 2) return UniPoly(field_);
        std::vector<Elem> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r[i - 1] = field_.mul(c_[i], field_.from_int(static_cast<long long>(i)));
        return UniPoly(field_, std::move(r));
    }

    UniPoly monic() const {
        if (c_.empty()) throw PreconditionError("monic() of the zero polynomial");
        return scaled(field_.inv(c_.back()));
    }

    /// Euclidean division: returns (q, r) with *this = q*g + r, deg r < deg g.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& g) const {
        require_same_context(field_, g.field_, "UniPoly::divmod");
        if (g.is_zero()) throw DivisionByZeroError("polynomial division by zero");
        std::vector<Elem> rem(c_);
        std::vector<Elem> quo(rem.size() > g.c_.size() ? rem.size() - g.c_.size() + 1 : 1, field_.zero());
        const Elem lg_inv = field_.inv(g.c_.back());
        while (rem.size() >= g.c_.size() && !rem.empty()) {
            const std::size_t shift = rem.size() - g.c_.size();
            const Elem q = field_.mul(rem.back(), lg_inv);
            if (!field_.is_zero(q)) {
                quo[shift] = q;
                for (std::size_t i = 0; i < g.c_.size(); ++i)
                    rem[shift + i] = field_.sub(rem[shift + i], field_.mul(q, g.c_[i]));
            }
            rem.pop_back();
            while (!rem.empty() && field_.is_zero(rem.back())) rem.pop_back();
            if (rem.size() < g.c_.size()) break;
        }
        return {UniPoly(field_, std::move(quo)), UniPoly(field_, std::move(rem))};
    }

    UniPoly mod(const UniPoly& g) const { return divmod(g).second; }

private:
    void trim() {
        while (!c_.empty() && field_.is_zero(c_.back())) c_.pop_back();
    }

    F field_;
    std::vector<Elem> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
template <FieldContext F>
UniPoly<F> unipoly_gcd(UniPoly<F> a, UniPoly<F> b) {
    require_same_context(a.field(), b.field(), "unipoly_gcd");
    while (!b.is_zero()) {
        UniPoly<F> r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

namespace detail {

// X^e modulo f, f monic of degree >= 1, by square-and-multiply on
// residues.  Degree stays below deg f throughout.
inline UniPoly<Fp> x_pow_mod(std::uint64_t e, const UniPoly<Fp>& f) {
    const Fp& k = f.field();
    UniPoly<Fp> result = UniPoly<Fp>::constant(k, k.one()).mod(f);
    UniPoly<Fp> base = UniPoly<Fp>::x(k).mod(f);
    while (e) {
        if (e & 1) result = (result * base).mod(f);
        e >>= 1;
        if (e) base = (base * base).mod(f);
    }
    return result;
}

inline UniPoly<Fp> poly_pow_mod(UniPoly<Fp> base, std::uint64_t e, const UniPoly<Fp>& f) {
    const Fp& k = f.field();
    UniPoly<Fp> result = UniPoly<Fp>::constant(k, k.one()).mod(f);
    base = base.mod(f);
    while (e) {
        if (e & 1) result = (result * base).mod(f);
        e >>= 1;
        if (e) base = (base * base).mod(f);
    }
    return result;
}

// g monic, squarefree, a product of distinct linear factors of degree
// >= 1.  Splits into roots via (X+delta)^((p-1)/2) probes; the delta
// sequence 0,1,2,... is deterministic, and each value separates a given
// pair of roots with probability about 1/2.
inline void split_linear_product(const UniPoly<Fp>& g, std::vector<Fp::Elem>& out, std::uint64_t delta) {
    const Fp& k = g.field();
    const long d = g.degree();
    if (d == 0) return;
    if (d == 1) {
        // monic X + c: root is -c
        out.push_back(k.neg(g.coeff(0)));
        return;
    }
    if (d == 2) {
        // monic X^2 + bX + c; both roots exist and are distinct here
        const Fp::Elem b = g.coeff(1), c = g.coeff(0);
        const Fp::Elem disc = k.sub(k.mul(b, b), k.mul(k.from_int(4), c));
        const Fp::Elem r = *k.sqrt(disc);
        const Fp::Elem half = k.inv(k.from_int(2));
        out.push_back(k.mul(half, k.sub(r, b)));
        out.push_back(k.mul(half, k.neg(k.add(r, b))));
        return;
    }
    const std::uint64_t p = k.modulus();
    for (;; ++delta) {
        // h = (X + delta)^((p-1)/2) - 1 mod g
        UniPoly<Fp> shifted(k, {k.from_int(static_cast<long long>(delta % p)), k.one()});
        UniPoly<Fp> h = poly_pow_mod(shifted, (p - 1) / 2, g) - UniPoly<Fp>::constant(k, k.one());
        UniPoly<Fp> g1 = unipoly_gcd(g, h);
        if (g1.degree() > 0 && g1.degree() < d) {
            UniPoly<Fp> g2 = g.divmod(g1).first;
            split_linear_product(g1, out, delta + 1);
            split_linear_product(g2, out, delta + 1);
            return;
        }
    }
}

}  // namespace detail

/// Lagrange interpolation through (xs[i], ys[i]); the xs must be
/// pairwise distinct.  Exact over any field.
template <FieldContext F>
UniPoly<F> unipoly_interpolate(const F& field, const std::vector<typename F::Elem>& xs,
                               const std::vector<typename F::Elem>& ys) {
    if (xs.size() != ys.size()) throw PreconditionError("unipoly_interpolate: length mismatch");
    UniPoly<F> acc(field);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        UniPoly<F> basis = UniPoly<F>::constant(field, field.one());
        typename F::Elem denom = field.one();
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            basis = basis * UniPoly<F>(field, {field.neg(xs[j]), field.one()});
            denom = field.mul(denom, field.sub(xs[i], xs[j]));
        }
        acc = acc + basis.scaled(field.div(ys[i], denom));
    }
    return acc;
}

/// All distinct roots of f in F_p, unordered.  The distinct-root part of
/// f is isolated as gcd(f, X^p - X) (X^p computed by modular
/// exponentiation), then split into linear factors.
inline std::vector<Fp::Elem> unipoly_roots(const UniPoly<Fp>& f) {
    if (f.is_zero()) throw PreconditionError("unipoly_roots: zero polynomial");
    const Fp& k = f.field();
    std::vector<Fp::Elem> out;
    if (f.degree() == 0) return out;

    UniPoly<Fp> g = f.monic();
    if (k.is_zero(g.coeff(0))) {
        out.push_back(k.zero());
        std::vector<Fp::Elem> shifted(g.coeffs().begin() + 1, g.coeffs().end());
        while (!shifted.empty() && k.is_zero(shifted.front()))
            shifted.erase(shifted.begin());
        g = UniPoly<Fp>(k, std::move(shifted));
        if (g.degree() == 0) return out;
    }

    UniPoly<Fp> xp = detail::x_pow_mod(k.modulus(), g);
    UniPoly<Fp> split = unipoly_gcd(g, xp - UniPoly<Fp>::x(k));
    if (split.degree() >= 1) detail::split_linear_product(split, out, 0);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace quadweb
