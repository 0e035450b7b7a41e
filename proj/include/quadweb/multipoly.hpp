#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "quadweb/field.hpp"
#include "quadweb/unipoly.hpp"

namespace quadweb {

namespace detail {

/// Graded lexicographic: total degree first, then lex on exponents.
/// Fixing this order fixes the text serialization byte for byte.
struct GradedLexLess {
    bool operator()(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const {
        std::uint64_t da = 0, db = 0;
        for (auto e : a) da += e;
        for (auto e : b) db += e;
        if (da != db) return da < db;
        return a < b;
    }
};

}  // namespace detail

/// Sparse multivariate polynomial: exponent vector -> nonzero coefficient.
/// Instances are immutable in spirit; every operation returns a fresh
/// value, and the term map is normalized (no zero coefficients) at all
/// times.
template <FieldContext F>
class MultiPoly {
public:
    using Elem = typename F::Elem;
    using Expo = std::vector<std::uint32_t>;
    using TermMap = std::map<Expo, Elem, detail::GradedLexLess>;

    MultiPoly(const F& field, std::size_t nvars) : field_(field), nvars_(nvars) {}

    static MultiPoly constant(const F& field, std::size_t nvars, Elem v) {
        MultiPoly r(field, nvars);
        if (!field.is_zero(v)) r.terms_.emplace(Expo(nvars, 0), std::move(v));
        return r;
    }

    static MultiPoly variable(const F& field, std::size_t nvars, std::size_t i) {
        if (i >= nvars) throw PreconditionError("MultiPoly::variable index out of range");
        MultiPoly r(field, nvars);
        Expo e(nvars, 0);
        e[i] = 1;
        r.terms_.emplace(std::move(e), field.one());
        return r;
    }

    static MultiPoly monomial(const F& field, Expo e, Elem c) {
        MultiPoly r(field, e.size());
        if (!field.is_zero(c)) r.terms_.emplace(std::move(e), std::move(c));
        return r;
    }

    const F& field() const { return field_; }
    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Elem coeff(const Expo& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? field_.zero() : it->second;
    }

    long total_degree() const {
        // graded order: the last term has maximal degree
        if (terms_.empty()) return -1;
        std::uint64_t d = 0;
        for (auto e : terms_.rbegin()->first) d += e;
        return static_cast<long>(d);
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        const long d = total_degree();
        for (const auto& [e, c] : terms_) {
            std::uint64_t s = 0;
            for (auto v : e) s += v;
            if (static_cast<long>(s) != d) return false;
        }
        return true;
    }

    MultiPoly operator+(const MultiPoly& g) const {
        check_compat(g, "MultiPoly::operator+");
        MultiPoly r(*this);
        for (const auto& [e, c] : g.terms_) r.add_term(e, c);
        return r;
    }

    MultiPoly operator-(const MultiPoly& g) const {
        check_compat(g, "MultiPoly::operator-");
        MultiPoly r(*this);
        for (const auto& [e, c] : g.terms_) r.add_term(e, field_.neg(c));
        return r;
    }

    MultiPoly operator-() const {
        MultiPoly r(*this);
        for (auto& [e, c] : r.terms_) c = field_.neg(c);
        return r;
    }

    MultiPoly operator*(const MultiPoly& g) const {
        check_compat(g, "MultiPoly::operator*");
        MultiPoly r(field_, nvars_);
        Expo e(nvars_);
        for (const auto& [ea, ca] : terms_) {
            for (const auto& [eb, cb] : g.terms_) {
                for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, field_.mul(ca, cb));
            }
        }
        return r;
    }

    MultiPoly scaled(const Elem& s) const {
        if (field_.is_zero(s)) return MultiPoly(field_, nvars_);
        MultiPoly r(*this);
        for (auto& [e, c] : r.terms_) c = field_.mul(c, s);
        return r;
    }

    bool operator==(const MultiPoly& g) const {
        if (!(field_ == g.field_) || nvars_ != g.nvars_ || terms_.size() != g.terms_.size()) return false;
        auto it = terms_.begin(), jt = g.terms_.begin();
        for (; it != terms_.end(); ++it, ++jt)
            if (it->first != jt->first || !field_.eq(it->second, jt->second)) return false;
        return true;
    }

    Elem eval(const std::vector<Elem>& point) const {
        if (point.size() != nvars_) throw PreconditionError("MultiPoly::eval: point length mismatch");
        Elem acc = field_.zero();
        for (const auto& [e, c] : terms_) {
            Elem t = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                if (e[i]) t = field_.mul(t, field_.pow(point[i], e[i]));
            acc = field_.add(acc, t);
        }
        return acc;
    }

    MultiPoly partial(std::size_t i) const {
        if (i >= nvars_) throw PreconditionError("MultiPoly::partial index out of range");
        MultiPoly r(field_, nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Expo de(e);
            de[i] -= 1;
            r.add_term(de, field_.mul(c, field_.from_int(e[i])));
        }
        return r;
    }

    /// Substitute the line t -> a + t*b and return the univariate result.
    /// Done by evaluation at deg+1 points plus interpolation, which is
    /// exact and avoids symbolic binomial expansion.
    UniPoly<F> restrict_line(const std::vector<Elem>& a, const std::vector<Elem>& b) const {
        if (a.size() != nvars_ || b.size() != nvars_)
            throw PreconditionError("MultiPoly::restrict_line: point length mismatch");
        const long d = total_degree();
        if (d <= 0) return UniPoly<F>::constant(field_, terms_.empty() ? field_.zero() : terms_.begin()->second);
        std::vector<Elem> xs, ys, pt(nvars_);
        xs.reserve(d + 1);
        ys.reserve(d + 1);
        for (long k = 0; k <= d; ++k) {
            Elem t = field_.from_int(k);
            for (std::size_t i = 0; i < nvars_; ++i) pt[i] = field_.add(a[i], field_.mul(t, b[i]));
            xs.push_back(t);
            ys.push_back(eval(pt));
        }
        return unipoly_interpolate(field_, xs, ys);
    }

    /// Canonical text form: terms in descending graded-lex order,
    /// explicit coefficients, e.g. "3*x0^2*x1 + 1*x3".  Zero prints "0".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            if (!first) out << " + ";
            first = false;
            out << coeff_string(c);
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                out << "*x" << i;
                if (e[i] > 1) out << "^" << e[i];
            }
        }
        return out.str();
    }

    void add_term(const Expo& e, const Elem& c) {
        if (field_.is_zero(c)) return;
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second = field_.add(it->second, c);
            if (field_.is_zero(it->second)) terms_.erase(it);
        }
    }

private:
    void check_compat(const MultiPoly& g, const char* where) const {
        require_same_context(field_, g.field_, where);
        if (nvars_ != g.nvars_) throw PreconditionError(std::string(where) + ": variable count mismatch");
    }

    static std::string coeff_string(const Elem& c) {
        if constexpr (std::is_same_v<Elem, std::uint64_t>) {
            return std::to_string(c);
        } else {
            std::ostringstream s;
            s << c;
            return s.str();
        }
    }

    F field_;
    std::size_t nvars_;
    TermMap terms_;
};

template <FieldContext F>
std::vector<MultiPoly<F>> mp_grad(const MultiPoly<F>& f) {
    std::vector<MultiPoly<F>> out;
    out.reserve(f.nvars());
    for (std::size_t i = 0; i < f.nvars(); ++i) out.push_back(f.partial(i));
    return out;
}

/// Rectangular matrix of polynomials over one field and variable set.
template <FieldContext F>
class PolyMat {
public:
    using Poly = MultiPoly<F>;

    PolyMat(const F& field, std::size_t nvars, std::size_t rows, std::size_t cols)
        : field_(field), nvars_(nvars), rows_(rows), cols_(cols),
          data_(rows * cols, Poly(field, nvars)) {}

    const F& field() const { return field_; }
    std::size_t nvars() const { return nvars_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Poly& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Poly& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

private:
    F field_;
    std::size_t nvars_;
    std::size_t rows_, cols_;
    std::vector<Poly> data_;
};

/// Exact symbolic determinant by dynamic programming over column
/// subsets: after processing r rows the state maps each r-column subset
/// to its signed minor.  2^n states for an n x n matrix, so sizes are
/// capped at 8; the naive n! expansion is deliberately not used.
template <FieldContext F>
MultiPoly<F> polmat_det(const PolyMat<F>& m) {
    if (m.rows() != m.cols()) throw PreconditionError("polmat_det: matrix not square");
    const std::size_t n = m.rows();
    if (n > 8) throw PreconditionError("polmat_det: size capped at 8");
    const F& k = m.field();
    if (n == 0) return MultiPoly<F>::constant(k, m.nvars(), k.one());

    std::vector<MultiPoly<F>> cur(std::size_t{1} << n, MultiPoly<F>(k, m.nvars()));
    cur[0] = MultiPoly<F>::constant(k, m.nvars(), k.one());
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<MultiPoly<F>> next(std::size_t{1} << n, MultiPoly<F>(k, m.nvars()));
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcount(mask)) != r) continue;
            if (cur[mask].is_zero()) continue;
            for (std::size_t c = 0; c < n; ++c) {
                if (mask & (1u << c)) continue;
                // inversions added when row r picks column c
                const int above = __builtin_popcount(mask >> (c + 1));
                MultiPoly<F> t = m.at(r, c) * cur[mask];
                if (above & 1) t = -t;
                next[mask | (1u << c)] = next[mask | (1u << c)] + t;
            }
        }
        cur = std::move(next);
    }
    return cur[(std::size_t{1} << n) - 1];
}

/// Adjugate via signed cofactors: adj(m)[i][j] = (-1)^(i+j) * minor(j, i).
/// Satisfies m * adj(m) = det(m) * I exactly.
template <FieldContext F>
PolyMat<F> polmat_adjugate(const PolyMat<F>& m) {
    if (m.rows() != m.cols()) throw PreconditionError("polmat_adjugate: matrix not square");
    const std::size_t n = m.rows();
    if (n > 8) throw PreconditionError("polmat_adjugate: size capped at 8");
    const F& k = m.field();
    PolyMat<F> adj(k, m.nvars(), n, n);
    if (n == 0) return adj;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            PolyMat<F> sub(k, m.nvars(), n - 1, n - 1);
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    sub.at(rr, cc) = m.at(r, c);
                    ++cc;
                }
                ++rr;
            }
            MultiPoly<F> cof = polmat_det(sub);
            adj.at(i, j) = ((i + j) & 1) ? -cof : cof;
        }
    }
    return adj;
}

}  // namespace quadweb
