#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "quadweb/errors.hpp"

// Closed-form invariants: intersection numbers on products of projective
// spaces, Chern/Euler/Hodge bookkeeping for complete intersections and
// double covers, the degree of a symmetric determinantal locus, and the
// Grassmannian dimension counts behind the moduli statements.
//
// Everything here is exact integer arithmetic; inputs are tiny, so the
// only care needed is truncation discipline, not performance.

namespace quadweb {

inline mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// Element of the Chow ring of P^{n_1} x ... x P^{n_k}: an integer
/// polynomial in the hyperplane classes h_i subject to h_i^{n_i+1} = 0.
class ChowClass {
public:
    using Expo = std::vector<std::uint32_t>;

    explicit ChowClass(std::vector<std::uint32_t> dims) : dims_(std::move(dims)) {}

    static ChowClass constant(std::vector<std::uint32_t> dims, const mpz_class& c) {
        ChowClass r(std::move(dims));
        if (c != 0) r.terms_.emplace(Expo(r.dims_.size(), 0), c);
        return r;
    }

    static ChowClass hyperplane(std::vector<std::uint32_t> dims, std::size_t i) {
        ChowClass r(std::move(dims));
        if (i >= r.dims_.size()) throw PreconditionError("ChowClass::hyperplane: index out of range");
        Expo e(r.dims_.size(), 0);
        e[i] = 1;
        if (r.dims_[i] >= 1) r.terms_.emplace(std::move(e), 1);
        return r;
    }

    const std::vector<std::uint32_t>& dims() const { return dims_; }
    const std::map<Expo, mpz_class>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    mpz_class coeff(const Expo& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? mpz_class(0) : it->second;
    }

    ChowClass operator+(const ChowClass& o) const {
        check(o);
        ChowClass r(*this);
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }

    ChowClass operator-(const ChowClass& o) const {
        check(o);
        ChowClass r(*this);
        for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
        return r;
    }

    ChowClass operator*(const ChowClass& o) const {
        check(o);
        ChowClass r(dims_);
        Expo e(dims_.size());
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_) {
                bool alive = true;
                for (std::size_t i = 0; i < dims_.size(); ++i) {
                    e[i] = ea[i] + eb[i];
                    if (e[i] > dims_[i]) { alive = false; break; }  // h_i^{n_i+1} = 0
                }
                if (alive) r.add_term(e, ca * cb);
            }
        return r;
    }

    ChowClass pow(unsigned e) const {
        ChowClass r = constant(dims_, 1);
        ChowClass base(*this);
        while (e) {
            if (e & 1) r = r * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return r;
    }

    bool operator==(const ChowClass& o) const { return dims_ == o.dims_ && terms_ == o.terms_; }

    void add_term(const Expo& e, const mpz_class& c) {
        if (c == 0) return;
        for (std::size_t i = 0; i < dims_.size(); ++i)
            if (e[i] > dims_[i]) return;
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

private:
    void check(const ChowClass& o) const {
        if (dims_ != o.dims_) throw PreconditionError("ChowClass: mixed ambient products");
    }

    std::vector<std::uint32_t> dims_;
    std::map<Expo, mpz_class> terms_;
};

/// Intersection number: the coefficient of the top monomial
/// prod h_i^{n_i}.  The class must be homogeneous of full degree, i.e.
/// (after nilpotency truncation) supported on the top monomial alone.
inline mpz_class multiproj_top_degree(const ChowClass& c) {
    std::uint64_t full = 0;
    for (auto d : c.dims()) full += d;
    ChowClass::Expo top(c.dims().begin(), c.dims().end());
    for (const auto& [e, coeff] : c.terms()) {
        std::uint64_t deg = 0;
        for (auto x : e) deg += x;
        if (deg != full)
            throw PreconditionError("multiproj_top_degree: class not of full degree " +
                                    std::to_string(full));
    }
    return c.coeff(top);
}

/// Smooth complete intersection of the given degrees in P^n.
struct CompleteIntersection {
    unsigned ambient;                 // the n of P^n
    std::vector<unsigned> degrees;    // hypersurface degrees, possibly empty

    CompleteIntersection(unsigned n, std::vector<unsigned> ds) : ambient(n), degrees(std::move(ds)) {
        if (degrees.size() > ambient)
            throw PreconditionError("CompleteIntersection: more hypersurfaces than dimensions");
        for (auto d : degrees)
            if (d < 1) throw PreconditionError("CompleteIntersection: degrees must be positive");
    }
};

struct EulerResult {
    long long chi;
    std::vector<mpz_class> chern;  // c_0 .. c_m of the tangent bundle, m = dim X
};

/// Total Chern class from c(T_X) * prod(1 + d_i h) = (1+h)^{n+1}, then
/// chi = (coefficient of h^m in c_m) * prod d_i.
inline EulerResult euler_complete_intersection(const CompleteIntersection& ci) {
    const std::size_t m = ci.ambient - ci.degrees.size();  // dim X

    // truncated series in h, low degree first
    std::vector<mpz_class> c(m + 1, 0);
    for (std::size_t j = 0; j <= m; ++j) c[j] = binomial(ci.ambient + 1, j);  // (1+h)^{n+1}
    for (auto d : ci.degrees) {
        // divide by (1 + d h): multiply by sum (-d)^j h^j
        std::vector<mpz_class> out(m + 1, 0);
        mpz_class pw = 1;
        for (std::size_t j = 0; j <= m; ++j) {
            for (std::size_t i = 0; i + j <= m; ++i) out[i + j] += c[i] * pw;
            pw *= -static_cast<long>(d);
        }
        c = std::move(out);
    }

    mpz_class deg = 1;
    for (auto d : ci.degrees) deg *= d;
    mpz_class chi = c[m] * deg;
    if (!chi.fits_slong_p()) throw Error("euler_complete_intersection: overflow");
    return EulerResult{chi.get_si(), std::move(c)};
}

struct DeterminantalDegree {
    long long degree;
    unsigned codim;
};

/// Degree and codimension of the locus of symmetric n x n forms of rank
/// at most r (in the projective space of all such forms):
///   deg = prod_{a=0}^{n-r-1} C(n+a, n-r-a) / C(2a+1, a),
///   codim = C(n-r+1, 2).
/// The product is an integer for every valid (n, r); we verify as we go.
inline DeterminantalDegree harris_tu_symmetric_degree(unsigned n, unsigned r) {
    if (r == 0 || r >= n) throw PreconditionError("harris_tu_symmetric_degree: need 0 < r < n");
    mpq_class acc = 1;
    for (unsigned a = 0; a + r < n; ++a) {
        acc *= mpq_class(binomial(n + a, n - r - a));
        acc /= mpq_class(binomial(2 * a + 1, a));
    }
    if (acc.get_den() != 1) throw Error("harris_tu_symmetric_degree: non-integer product");
    mpz_class deg = acc.get_num();
    if (!deg.fits_slong_p()) throw Error("harris_tu_symmetric_degree: overflow");
    mpz_class codim = binomial(n - r + 1, 2);
    return DeterminantalDegree{deg.get_si(), static_cast<unsigned>(codim.get_ui())};
}

/// Euler characteristic of the double cover of P^3 branched over a
/// smooth surface of the given degree: chi = 2 (chi(P^3) - chi(S)) + chi(S).
inline long long double_cover_euler(unsigned branch_degree) {
    const long long chi_s = euler_complete_intersection({3, {branch_degree}}).chi;
    return 2 * (4 - chi_s) + chi_s;
}

/// Passing from the smooth model to the nodal one adds one per node;
/// the small resolution replaces each node by a P^1 and adds one more.
inline std::pair<long long, long long> nodal_euler_chain(long long chi_smooth, long long nodes) {
    if (nodes < 0) throw PreconditionError("nodal_euler_chain: negative node count");
    return {chi_smooth + nodes, chi_smooth + 2 * nodes};
}

/// Calabi-Yau threefold relation chi = 2 (h11 - h12).
inline long long hodge_from_euler(long long chi, long long h11) {
    if (chi % 2 != 0) throw PreconditionError("hodge_from_euler: odd Euler characteristic");
    return h11 - chi / 2;
}

/// Affine dimension of the Grassmannian of k-subspaces of an n-space.
inline long long grassmannian_dim(long long k, long long n) {
    if (k < 0 || n < k) throw PreconditionError("grassmannian_dim: need 0 <= k <= n");
    return k * (n - k);
}

/// Moduli dimension counts used throughout, every one a Grassmannian
/// dimension plus a configuration count.  Quadrics on P^7 form a
/// 36-dimensional space; vanishing on a plane is 6 linear conditions
/// (the symmetric 3x3 block), vanishing on a line is 3, on a point 1.
inline std::map<std::string, long long> incidence_dimension_ledger() {
    std::map<std::string, long long> ledger;
    const long long quadrics = 36;

    // webs = 4-subspaces of the quadric space
    ledger["all_webs"] = grassmannian_dim(4, quadrics);

    // fixing one plane: webs inside the 30-space of quadrics through it
    ledger["webs_with_fixed_plane"] = grassmannian_dim(4, quadrics - 6);

    // letting the plane move adds the planes of P^7
    const long long planes = grassmannian_dim(3, 8);
    ledger["webs_with_plane"] = planes + ledger["webs_with_fixed_plane"];

    // two disjoint planes: 12 independent conditions, both planes move
    ledger["two_disjoint_planes"] = grassmannian_dim(4, quadrics - 12) + 2 * planes;

    // planes meeting in a line: conditions overlap in the 3 of the line;
    // configurations: plane (15) + line inside it (2) + second plane
    // through that line (5)
    ledger["two_planes_line"] = grassmannian_dim(4, quadrics - 12 + 3) + (planes + 2 + 5);

    // planes meeting in a point: overlap 1; configurations: plane (15) +
    // point on it (2) + second plane through the point (G(2,7) = 10)
    ledger["two_planes_point"] =
        grassmannian_dim(4, quadrics - 12 + 1) + (planes + 2 + grassmannian_dim(2, 7));

    // plane plus a line meeting it in one point: plane (15) + the
    // meeting point (2) + lines through a fixed point of P^7 (6)
    ledger["plane_line_incidence"] = planes + 2 + 6;

    // webs through a plane and such a line: 6 + 3 - 1 overlapping
    // conditions leave a 28-space
    ledger["fiber_G(4,28)"] = grassmannian_dim(4, quadrics - 8);

    // webs whose base locus gains a line inside the plane: fiber above
    // plus lines in the plane (G(2,3) = 2) plus a G(1,5) of directions
    ledger["line_on_P_bound"] =
        ledger["fiber_G(4,28)"] + grassmannian_dim(2, 3) + grassmannian_dim(1, 5);

    return ledger;
}

}  // namespace quadweb
