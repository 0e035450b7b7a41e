#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "quadweb/field.hpp"
#include "quadweb/rng.hpp"

namespace quadweb {

/// Dense rectangular matrix over a field context.  Small sizes only
/// (the geometry never goes past 8x8), so everything is straightforward
/// exact elimination with no pivoting heuristics beyond "first nonzero".
template <FieldContext F>
class Mat {
public:
    using Elem = typename F::Elem;

    Mat(const F& field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

    static Mat identity(const F& field, std::size_t n) {
        Mat m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
        return m;
    }

    static Mat from_rows(const F& field, std::initializer_list<std::initializer_list<long long>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows.begin()->size() : 0;
        Mat m(field, r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw PreconditionError("Mat::from_rows: ragged rows");
            std::size_t j = 0;
            for (long long v : row) m.at(i, j++) = field.from_int(v);
            ++i;
        }
        return m;
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Elem& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Elem& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Mat transpose() const {
        Mat t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Mat operator+(const Mat& o) const {
        check_same_shape(o, "Mat::operator+");
        Mat r(*this);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.add(data_[i], o.data_[i]);
        return r;
    }

    Mat operator-(const Mat& o) const {
        check_same_shape(o, "Mat::operator-");
        Mat r(*this);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.sub(data_[i], o.data_[i]);
        return r;
    }

    Mat scaled(const Elem& s) const {
        Mat r(*this);
        for (auto& v : r.data_) v = field_.mul(v, s);
        return r;
    }

    Mat operator*(const Mat& o) const {
        require_same_context(field_, o.field_, "Mat::operator*");
        if (cols_ != o.rows_) throw PreconditionError("Mat::operator*: shape mismatch");
        Mat r(field_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                if (field_.is_zero(at(i, k))) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) = field_.add(r.at(i, j), field_.mul(at(i, k), o.at(k, j)));
            }
        return r;
    }

    std::vector<Elem> apply(const std::vector<Elem>& v) const {
        if (v.size() != cols_) throw PreconditionError("Mat::apply: length mismatch");
        std::vector<Elem> r(rows_, field_.zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r[i] = field_.add(r[i], field_.mul(at(i, j), v[j]));
        return r;
    }

    bool operator==(const Mat& o) const {
        if (!(field_ == o.field_) || rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t i = 0; i < data_.size(); ++i)
            if (!field_.eq(data_[i], o.data_[i])) return false;
        return true;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (!field_.eq(at(i, j), at(j, i))) return false;
        return true;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!field_.is_zero(v)) return false;
        return true;
    }

    std::vector<Elem> column(std::size_t j) const {
        std::vector<Elem> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    std::vector<Elem> row(std::size_t i) const {
        std::vector<Elem> r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
        return r;
    }

    /// In-place reduction to reduced row echelon form; returns the rank
    /// and records the pivot columns.  Exact since the field is exact.
    std::size_t rref(std::vector<std::size_t>* pivot_cols = nullptr) {
        std::size_t rank = 0;
        for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
            std::size_t piv = rank;
            while (piv < rows_ && field_.is_zero(at(piv, col))) ++piv;
            if (piv == rows_) continue;
            if (piv != rank)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(piv, j), at(rank, j));
            const Elem invp = field_.inv(at(rank, col));
            for (std::size_t j = col; j < cols_; ++j) at(rank, j) = field_.mul(at(rank, j), invp);
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == rank || field_.is_zero(at(i, col))) continue;
                const Elem f = at(i, col);
                for (std::size_t j = col; j < cols_; ++j)
                    at(i, j) = field_.sub(at(i, j), field_.mul(f, at(rank, j)));
            }
            if (pivot_cols) pivot_cols->push_back(col);
            ++rank;
        }
        return rank;
    }

private:
    void check_same_shape(const Mat& o, const char* where) const {
        require_same_context(field_, o.field_, where);
        if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError(std::string(where) + ": shape mismatch");
    }

    F field_;
    std::size_t rows_, cols_;
    std::vector<Elem> data_;
};

template <FieldContext F>
Mat<F> random_matrix(const F& field, std::size_t rows, std::size_t cols, Rng& rng) {
    Mat<F> m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = field.uniform(rng);
    return m;
}

/// Linear subspace of F^n held by a canonical basis: the columns of
/// `basis()` are the nonzero rows of the RREF of any spanning set, so
/// equal subspaces compare equal componentwise.
template <FieldContext F>
class Subspace {
public:
    using Elem = typename F::Elem;

    /// Spanning columns in; canonical basis out.  Rank deficiency is
    /// fine, duplicates are fine.
    Subspace(const F& field, std::size_t ambient, const Mat<F>& spanning_columns)
        : field_(field), ambient_(ambient), basis_(field, ambient, 0) {
        if (spanning_columns.rows() != ambient)
            throw PreconditionError("Subspace: spanning columns have wrong ambient dimension");
        Mat<F> rows = spanning_columns.transpose();
        const std::size_t rank = rows.rref();
        Mat<F> b(field_, ambient_, rank);
        for (std::size_t k = 0; k < rank; ++k)
            for (std::size_t i = 0; i < ambient_; ++i) b.at(i, k) = rows.at(k, i);
        basis_ = std::move(b);
    }

    static Subspace zero(const F& field, std::size_t ambient) {
        return Subspace(field, ambient, Mat<F>(field, ambient, 0));
    }

    static Subspace full(const F& field, std::size_t ambient) {
        return Subspace(field, ambient, Mat<F>::identity(field, ambient));
    }

    static Subspace span_of_coordinates(const F& field, std::size_t ambient,
                                        const std::vector<std::size_t>& idx) {
        Mat<F> m(field, ambient, idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) m.at(idx[k], k) = field.one();
        return Subspace(field, ambient, m);
    }

    const F& field() const { return field_; }
    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.cols(); }
    const Mat<F>& basis() const { return basis_; }

    bool contains(const std::vector<Elem>& v) const {
        if (v.size() != ambient_) throw PreconditionError("Subspace::contains: length mismatch");
        // reduce v against the canonical (row-echelon) basis rows
        Mat<F> m(field_, dim() + 1, ambient_);
        for (std::size_t k = 0; k < dim(); ++k)
            for (std::size_t i = 0; i < ambient_; ++i) m.at(k, i) = basis_.at(i, k);
        for (std::size_t i = 0; i < ambient_; ++i) m.at(dim(), i) = v[i];
        return m.rref() == dim();
    }

    bool operator==(const Subspace& o) const {
        return field_ == o.field_ && ambient_ == o.ambient_ && basis_ == o.basis_;
    }

private:
    F field_;
    std::size_t ambient_;
    Mat<F> basis_;
};

/// Rank plus right and left kernels, all exact, kernels canonical.
template <FieldContext F>
struct RankKernel {
    std::size_t rank;
    Subspace<F> kernel;
    Subspace<F> left_kernel;
};

namespace detail {

template <FieldContext F>
Subspace<F> kernel_of(const Mat<F>& m) {
    const F& k = m.field();
    Mat<F> r(m);
    std::vector<std::size_t> pivots;
    const std::size_t rank = r.rref(&pivots);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;

    Mat<F> basis(k, m.cols(), m.cols() - rank);
    std::size_t out = 0;
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        basis.at(free_col, out) = k.one();
        for (std::size_t pr = 0; pr < rank; ++pr)
            basis.at(pivots[pr], out) = k.neg(r.at(pr, free_col));
        ++out;
    }
    return Subspace<F>(k, m.cols(), basis);
}

}  // namespace detail

template <FieldContext F>
RankKernel<F> rank_kernel(const Mat<F>& m) {
    Subspace<F> ker = detail::kernel_of(m);
    Subspace<F> lker = detail::kernel_of(m.transpose());
    return RankKernel<F>{m.cols() - ker.dim(), std::move(ker), std::move(lker)};
}

/// Inverse of a square matrix via augmented elimination.
template <FieldContext F>
Mat<F> mat_inverse(const Mat<F>& m) {
    if (m.rows() != m.cols()) throw PreconditionError("mat_inverse: matrix not square");
    const F& k = m.field();
    const std::size_t n = m.rows();
    Mat<F> aug(k, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = k.one();
    }
    aug.rref();
    // invertible iff the left block reduced to the identity (the right
    // block alone already forces full row rank of [m | I])
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!k.eq(aug.at(i, j), i == j ? k.one() : k.zero()))
                throw PreconditionError("mat_inverse: singular matrix");
    Mat<F> inv(k, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

/// Determinant of a scalar matrix by Gaussian elimination with row-swap
/// sign tracking.
template <FieldContext F>
typename F::Elem mat_det(const Mat<F>& m) {
    if (m.rows() != m.cols()) throw PreconditionError("mat_det: matrix not square");
    const F& k = m.field();
    Mat<F> a(m);
    const std::size_t n = a.rows();
    typename F::Elem det = k.one();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && k.is_zero(a.at(piv, col))) ++piv;
        if (piv == n) return k.zero();
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
            det = k.neg(det);
        }
        det = k.mul(det, a.at(col, col));
        const typename F::Elem inv = k.inv(a.at(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            if (k.is_zero(a.at(i, col))) continue;
            const typename F::Elem f = k.mul(a.at(i, col), inv);
            for (std::size_t j = col; j < n; ++j)
                a.at(i, j) = k.sub(a.at(i, j), k.mul(f, a.at(col, j)));
        }
    }
    return det;
}

/// B^T m B for the canonical basis B of s: the symmetric bilinear form
/// pulled back to subspace coordinates.
template <FieldContext F>
Mat<F> restrict_form(const Mat<F>& m, const Subspace<F>& s) {
    require_same_context(m.field(), s.field(), "restrict_form");
    if (!m.is_symmetric()) throw PreconditionError("restrict_form: matrix not symmetric");
    if (s.ambient() != m.rows()) throw PreconditionError("restrict_form: ambient dimension mismatch");
    const Mat<F>& b = s.basis();
    return b.transpose() * m * b;
}

template <FieldContext F>
Subspace<F> span_join(const Subspace<F>& a, const Subspace<F>& b) {
    require_same_context(a.field(), b.field(), "span_join");
    if (a.ambient() != b.ambient()) throw PreconditionError("span_join: ambient dimension mismatch");
    Mat<F> cat(a.field(), a.ambient(), a.dim() + b.dim());
    for (std::size_t k = 0; k < a.dim(); ++k)
        for (std::size_t i = 0; i < a.ambient(); ++i) cat.at(i, k) = a.basis().at(i, k);
    for (std::size_t k = 0; k < b.dim(); ++k)
        for (std::size_t i = 0; i < a.ambient(); ++i) cat.at(i, a.dim() + k) = b.basis().at(i, k);
    return Subspace<F>(a.field(), a.ambient(), cat);
}

template <FieldContext F>
Subspace<F> span_join(const Subspace<F>& a, const std::vector<typename F::Elem>& point) {
    Mat<F> col(a.field(), a.ambient(), 1);
    if (point.size() != a.ambient()) throw PreconditionError("span_join: point dimension mismatch");
    for (std::size_t i = 0; i < a.ambient(); ++i) col.at(i, 0) = point[i];
    return span_join(a, Subspace<F>(a.field(), a.ambient(), col));
}

/// a ∩ b by the kernel method: kernels of [A | B] glue a-coordinates to
/// b-coordinates; the A-part of each kernel vector spans the intersection.
template <FieldContext F>
Subspace<F> subspace_intersect(const Subspace<F>& a, const Subspace<F>& b) {
    require_same_context(a.field(), b.field(), "subspace_intersect");
    if (a.ambient() != b.ambient()) throw PreconditionError("subspace_intersect: ambient dimension mismatch");
    const F& k = a.field();
    Mat<F> cat(k, a.ambient(), a.dim() + b.dim());
    for (std::size_t c = 0; c < a.dim(); ++c)
        for (std::size_t i = 0; i < a.ambient(); ++i) cat.at(i, c) = a.basis().at(i, c);
    for (std::size_t c = 0; c < b.dim(); ++c)
        for (std::size_t i = 0; i < a.ambient(); ++i) cat.at(i, a.dim() + c) = k.neg(b.basis().at(i, c));
    Subspace<F> ker = detail::kernel_of(cat);
    Mat<F> gens(k, a.ambient(), ker.dim());
    for (std::size_t c = 0; c < ker.dim(); ++c) {
        std::vector<typename F::Elem> coeffs(a.dim());
        for (std::size_t j = 0; j < a.dim(); ++j) coeffs[j] = ker.basis().at(j, c);
        std::vector<typename F::Elem> v(a.ambient(), k.zero());
        for (std::size_t j = 0; j < a.dim(); ++j)
            for (std::size_t i = 0; i < a.ambient(); ++i)
                v[i] = k.add(v[i], k.mul(coeffs[j], a.basis().at(i, j)));
        for (std::size_t i = 0; i < a.ambient(); ++i) gens.at(i, c) = v[i];
    }
    return Subspace<F>(k, a.ambient(), gens);
}

/// Scale so the first nonzero coordinate is 1; the canonical
/// representative of a projective point.
template <FieldContext F>
std::vector<typename F::Elem> projective_normalize(const F& field, std::vector<typename F::Elem> v) {
    for (const auto& x : v) {
        if (!field.is_zero(x)) {
            const auto inv = field.inv(x);
            for (auto& y : v) y = field.mul(y, inv);
            return v;
        }
    }
    throw PreconditionError("projective_normalize: zero vector");
}

template <FieldContext F>
std::vector<typename F::Elem> vec_add(const F& field, const std::vector<typename F::Elem>& a,
                                      const std::vector<typename F::Elem>& b) {
    if (a.size() != b.size()) throw PreconditionError("vec_add: length mismatch");
    std::vector<typename F::Elem> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = field.add(a[i], b[i]);
    return r;
}

template <FieldContext F>
std::vector<typename F::Elem> vec_scale(const F& field, const typename F::Elem& s,
                                        const std::vector<typename F::Elem>& a) {
    std::vector<typename F::Elem> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = field.mul(s, a[i]);
    return r;
}

template <FieldContext F>
typename F::Elem vec_dot(const F& field, const std::vector<typename F::Elem>& a,
                         const std::vector<typename F::Elem>& b) {
    if (a.size() != b.size()) throw PreconditionError("vec_dot: length mismatch");
    typename F::Elem acc = field.zero();
    for (std::size_t i = 0; i < a.size(); ++i) acc = field.add(acc, field.mul(a[i], b[i]));
    return acc;
}

}  // namespace quadweb
