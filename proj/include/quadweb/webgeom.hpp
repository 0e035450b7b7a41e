#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "quadweb/linalg.hpp"
#include "quadweb/multipoly.hpp"
#include "quadweb/unipoly.hpp"

// Webs of quadrics in P^7 that contain a fixed projective plane, the
// degree-8 determinantal surface they cut out in P^3, and the two maps
// between members of the web and points of the base locus.
//
// Conventions used throughout:
//   - a quadric is x -> x^T M x with M symmetric, so the coefficient of
//     the cross term x_i x_j is 2 M_ij;
//   - the default plane is {x_0 = ... = x_4 = 0}, spanned by e5, e6, e7;
//   - members are projective: lambda is normalized so its first nonzero
//     coordinate is 1.

namespace quadweb {

inline constexpr std::size_t kAmbient = 8;      // coordinates on P^7
inline constexpr std::size_t kWebSize = 4;      // quadrics spanning a web
inline constexpr int kResampleBudget = 16;

/// Projective plane in P^7 (3-dimensional subspace of F^8).
template <FieldContext F>
class Plane {
public:
    explicit Plane(Subspace<F> s) : space_(std::move(s)) {
        if (space_.ambient() != kAmbient || space_.dim() != 3)
            throw PreconditionError("Plane: need a 3-dimensional subspace of F^8");
    }

    static Plane coordinate_default(const F& field) {
        return Plane(Subspace<F>::span_of_coordinates(field, kAmbient, {5, 6, 7}));
    }

    const Subspace<F>& space() const { return space_; }
    const Mat<F>& basis() const { return space_.basis(); }
    bool contains(const std::vector<typename F::Elem>& v) const { return space_.contains(v); }
    bool operator==(const Plane& o) const { return space_ == o.space_; }

private:
    Subspace<F> space_;
};

/// A web: the 3-parameter family lambda -> sum_i lambda_i Q_i of
/// quadrics spanned by four independent symmetric matrices, optionally
/// all containing a common plane.
template <FieldContext F>
struct Web {
    std::array<Mat<F>, kWebSize> quadrics;
    std::optional<Plane<F>> plane;
    std::uint64_t seed = 0;

    const F& field() const { return quadrics[0].field(); }
};

template <FieldContext F>
struct WebMember {
    std::vector<typename F::Elem> lambda;  // normalized, first nonzero = 1
    Mat<F> matrix;                         // sum lambda_i Q_i
};

template <FieldContext F>
WebMember<F> web_member(const Web<F>& w, std::vector<typename F::Elem> lambda) {
    const F& k = w.field();
    if (lambda.size() != kWebSize) throw PreconditionError("web_member: lambda must have 4 coordinates");
    lambda = projective_normalize(k, std::move(lambda));
    Mat<F> m(k, kAmbient, kAmbient);
    for (std::size_t i = 0; i < kWebSize; ++i)
        m = m + w.quadrics[i].scaled(lambda[i]);
    return WebMember<F>{std::move(lambda), std::move(m)};
}

template <FieldContext F>
WebMember<F> sample_member(const Web<F>& w, Rng& rng) {
    const F& k = w.field();
    for (;;) {
        std::vector<typename F::Elem> lambda(kWebSize);
        bool nonzero = false;
        for (auto& x : lambda) {
            x = k.uniform(rng);
            nonzero = nonzero || !k.is_zero(x);
        }
        if (nonzero) return web_member(w, std::move(lambda));
    }
}

/// Value of the quadratic form x^T M x.
template <FieldContext F>
typename F::Elem quadric_value(const Mat<F>& m, const std::vector<typename F::Elem>& x) {
    return vec_dot(m.field(), x, m.apply(x));
}

/// True iff all four quadrics vanish at x.
template <FieldContext F>
bool in_base_locus(const Web<F>& w, const std::vector<typename F::Elem>& x) {
    const F& k = w.field();
    for (const auto& q : w.quadrics)
        if (!k.is_zero(quadric_value(q, x))) return false;
    return true;
}

/// The determinant surface of the web: det of the symbolic member
/// matrix, homogeneous of degree 8 in the four web coordinates, plus
/// its gradient.
template <FieldContext F>
struct OcticSurface {
    MultiPoly<F> det_poly;
    std::vector<MultiPoly<F>> gradient;

    bool gradient_vanishes_at(const std::vector<typename F::Elem>& lambda) const {
        const F& k = det_poly.field();
        for (const auto& g : gradient)
            if (!k.is_zero(g.eval(lambda))) return false;
        return true;
    }
};

template <FieldContext F>
OcticSurface<F> det_octic(const Web<F>& w) {
    const F& k = w.field();
    PolyMat<F> pencil(k, kWebSize, kAmbient, kAmbient);
    for (std::size_t i = 0; i < kAmbient; ++i)
        for (std::size_t j = 0; j < kAmbient; ++j) {
            MultiPoly<F> e(k, kWebSize);
            for (std::size_t v = 0; v < kWebSize; ++v) {
                typename MultiPoly<F>::Expo ex(kWebSize, 0);
                ex[v] = 1;
                e.add_term(ex, w.quadrics[v].at(i, j));
            }
            pencil.at(i, j) = std::move(e);
        }
    MultiPoly<F> det = polmat_det(pencil);
    if (det.is_zero()) throw DegenerateWebError("det_octic: determinant vanishes identically");
    return OcticSurface<F>{det, mp_grad(det)};
}

/// S^T Q S: the quadric in the coordinates of an invertible frame S.
template <FieldContext F>
Mat<F> restrict_to_frame(const Mat<F>& q, const Mat<F>& s) {
    return s.transpose() * q * s;
}

namespace detail {

/// Invertible 8x8 whose last three columns are the plane's canonical
/// basis and whose first five are standard basis vectors; maps adapted
/// coordinates (z_0..z_4; plane coords z_5..z_7) to ambient ones.  The
/// default plane yields the identity.
template <FieldContext F>
Mat<F> plane_adapted_transform(const F& k, const Plane<F>& plane) {
    Mat<F> probe(k, 3 + 5, kAmbient);
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < kAmbient; ++i) probe.at(c, i) = plane.basis().at(i, c);
    std::vector<std::size_t> chosen;
    for (std::size_t cand = 0; cand < kAmbient && chosen.size() < 5; ++cand) {
        Mat<F> trial(probe);
        for (std::size_t r = 0; r < chosen.size(); ++r) trial.at(3 + r, chosen[r]) = k.one();
        trial.at(3 + chosen.size(), cand) = k.one();
        Mat<F> reduced(trial);
        if (reduced.rref() == 3 + chosen.size() + 1) chosen.push_back(cand);
    }
    if (chosen.size() != 5) throw PreconditionError("plane_adapted_transform: completion failed");
    Mat<F> s(k, kAmbient, kAmbient);
    for (std::size_t c = 0; c < 5; ++c) s.at(chosen[c], c) = k.one();
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < kAmbient; ++i) s.at(i, 5 + c) = plane.basis().at(i, c);
    return s;
}

template <FieldContext F>
Mat<F> random_symmetric(const F& k, std::size_t n, Rng& rng) {
    Mat<F> m(k, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            m.at(i, j) = k.uniform(rng);
            m.at(j, i) = m.at(i, j);
        }
    return m;
}

template <FieldContext F>
bool quadrics_independent(const std::array<Mat<F>, kWebSize>& qs) {
    const F& k = qs[0].field();
    Mat<F> flat(k, kWebSize, kAmbient * (kAmbient + 1) / 2);
    for (std::size_t q = 0; q < kWebSize; ++q) {
        std::size_t col = 0;
        for (std::size_t i = 0; i < kAmbient; ++i)
            for (std::size_t j = i; j < kAmbient; ++j) flat.at(q, col++) = qs[q].at(i, j);
    }
    return flat.rref() == kWebSize;
}

}  // namespace detail

/// The 4x5 first-order slice at a plane point: row i, column j holds
/// d(x^T Q_i x)/dx_j = 2 (Q_i a)_j for the five off-plane directions of
/// the adapted frame.  In plane directions the derivative vanishes
/// identically (the plane sits inside every quadric), so rank <= 3 here
/// is exactly the singular-point condition on the base locus.
template <FieldContext F>
Mat<F> plane_jacobian_slice(const std::array<Mat<F>, kWebSize>& adapted_quadrics,
                            const std::vector<typename F::Elem>& plane_coords) {
    const F& k = adapted_quadrics[0].field();
    if (plane_coords.size() != 3) throw PreconditionError("plane_jacobian_slice: need 3 plane coordinates");
    Mat<F> a(k, kWebSize, 5);
    const auto two = k.from_int(2);
    for (std::size_t i = 0; i < kWebSize; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            typename F::Elem acc = k.zero();
            for (std::size_t t = 0; t < 3; ++t)
                acc = k.add(acc, k.mul(adapted_quadrics[i].at(j, 5 + t), plane_coords[t]));
            a.at(i, j) = k.mul(two, acc);
        }
    return a;
}

/// The five 4x4 minors of the symbolic Jacobian slice: quartic curves
/// in the three plane coordinates whose common zero set carries the
/// singular points of the base locus on the plane.
template <FieldContext F>
std::vector<MultiPoly<F>> plane_jacobian_minors(const std::array<Mat<F>, kWebSize>& adapted_quadrics) {
    const F& k = adapted_quadrics[0].field();
    PolyMat<F> sym(k, 3, kWebSize, 5);
    const auto two = k.from_int(2);
    for (std::size_t i = 0; i < kWebSize; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            MultiPoly<F> e(k, 3);
            for (std::size_t t = 0; t < 3; ++t) {
                typename MultiPoly<F>::Expo ex(3, 0);
                ex[t] = 1;
                e.add_term(ex, k.mul(two, adapted_quadrics[i].at(j, 5 + t)));
            }
            sym.at(i, j) = std::move(e);
        }
    std::vector<MultiPoly<F>> minors;
    minors.reserve(5);
    for (std::size_t drop = 0; drop < 5; ++drop) {
        PolyMat<F> sub(k, 3, kWebSize, 4);
        for (std::size_t i = 0; i < kWebSize; ++i)
            for (std::size_t j = 0, out = 0; j < 5; ++j) {
                if (j == drop) continue;
                sub.at(i, out++) = sym.at(i, j);
            }
        minors.push_back(polmat_det(sub));
    }
    return minors;
}

/// The quadric x^T m x spelled out as a polynomial in rows(m) variables;
/// cross terms carry the factor two from symmetry.
template <FieldContext F>
MultiPoly<F> quadratic_form_poly(const Mat<F>& m) {
    const F& k = m.field();
    if (!m.is_symmetric()) throw PreconditionError("quadratic_form_poly: matrix not symmetric");
    const std::size_t n = m.rows();
    MultiPoly<F> f(k, n);
    const auto two = k.from_int(2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            typename MultiPoly<F>::Expo e(n, 0);
            e[i] += 1;
            e[j] += 1;
            f.add_term(e, i == j ? m.at(i, j) : k.mul(two, m.at(i, j)));
        }
    return f;
}

/// Random web with independent quadrics and a nonzero octic; when a
/// plane is given every quadric contains it (B^T Q_i B = 0) and the
/// plane Jacobian has generic rank 4.  Resamples a bounded number of
/// times, then gives up with a DegenerateSampleError.
template <FieldContext F>
Web<F> sample_web(const F& k, std::uint64_t seed, const std::optional<Plane<F>>& plane = {}) {
    Rng rng = Rng::derive(seed, 0x5eb);
    std::optional<Mat<F>> transform, transform_inv;
    if (plane) {
        transform = detail::plane_adapted_transform(k, *plane);
        transform_inv = mat_inverse(*transform);
    }

    for (int attempt = 1; attempt <= kResampleBudget; ++attempt) {
        std::array<Mat<F>, kWebSize> qs{Mat<F>(k, kAmbient, kAmbient), Mat<F>(k, kAmbient, kAmbient),
                                        Mat<F>(k, kAmbient, kAmbient), Mat<F>(k, kAmbient, kAmbient)};
        for (auto& q : qs) {
            Mat<F> adapted = detail::random_symmetric(k, kAmbient, rng);
            if (plane) {
                for (std::size_t i = 5; i < kAmbient; ++i)
                    for (std::size_t j = 5; j < kAmbient; ++j) adapted.at(i, j) = k.zero();
                // undo the adapted frame: Q = S^-T Q' S^-1
                q = transform_inv->transpose() * adapted * *transform_inv;
            } else {
                q = adapted;
            }
        }
        if (!detail::quadrics_independent(qs)) continue;

        Web<F> w{std::move(qs), plane, seed};
        try {
            (void)det_octic(w);
        } catch (const DegenerateWebError&) {
            continue;
        }
        if (plane) {
            // generic rank 4 of the Jacobian slice somewhere on the plane
            std::array<Mat<F>, kWebSize> adapted{restrict_to_frame(w.quadrics[0], *transform),
                                                 restrict_to_frame(w.quadrics[1], *transform),
                                                 restrict_to_frame(w.quadrics[2], *transform),
                                                 restrict_to_frame(w.quadrics[3], *transform)};
            bool generic = false;
            for (int probe = 0; probe < 4 && !generic; ++probe) {
                std::vector<typename F::Elem> y = {k.uniform(rng), k.uniform(rng), k.uniform(rng)};
                if (k.is_zero(y[0]) && k.is_zero(y[1]) && k.is_zero(y[2])) continue;
                generic = rank_kernel(plane_jacobian_slice<F>(adapted, y)).rank == 4;
            }
            if (!generic) continue;
        }
        return w;
    }
    throw DegenerateSampleError("sample_web: no acceptable web", kResampleBudget);
}

template <FieldContext F>
Web<F> sample_web(const F& k, std::uint64_t seed, const Plane<F>& plane) {
    return sample_web(k, seed, std::optional<Plane<F>>(plane));
}

/// A web whose first spanning quadric is a prescribed rank-6 symmetric
/// form vanishing on the default plane; the member lambda = (1:0:0:0)
/// is then a planted singular point of the octic.
inline std::pair<Web<Fp>, WebMember<Fp>> planted_rank6_web(const Fp& k, std::uint64_t seed) {
    // rank 6 and zero on the 5..7 block: diag 1s on 0..3 plus the
    // hyperbolic pair x4 x5
    Mat<Fp> q0(k, kAmbient, kAmbient);
    for (int i = 0; i < 4; ++i) q0.at(i, i) = k.one();
    const auto half = k.inv(k.from_int(2));
    q0.at(4, 5) = half;
    q0.at(5, 4) = half;

    Rng rng = Rng::derive(seed, 0x916);
    Plane<Fp> plane = Plane<Fp>::coordinate_default(k);
    for (int attempt = 1; attempt <= kResampleBudget; ++attempt) {
        std::array<Mat<Fp>, kWebSize> qs{q0, Mat<Fp>(k, kAmbient, kAmbient),
                                         Mat<Fp>(k, kAmbient, kAmbient), Mat<Fp>(k, kAmbient, kAmbient)};
        for (std::size_t i = 1; i < kWebSize; ++i) {
            Mat<Fp> s = detail::random_symmetric(k, kAmbient, rng);
            for (std::size_t a = 5; a < kAmbient; ++a)
                for (std::size_t b = 5; b < kAmbient; ++b) s.at(a, b) = k.zero();
            qs[i] = std::move(s);
        }
        if (!detail::quadrics_independent(qs)) continue;
        Web<Fp> w{std::move(qs), plane, seed};
        try {
            (void)det_octic(w);
        } catch (const DegenerateWebError&) {
            continue;
        }
        WebMember<Fp> m = web_member(w, {k.one(), k.zero(), k.zero(), k.zero()});
        return {std::move(w), std::move(m)};
    }
    throw DegenerateSampleError("planted_rank6_web: no acceptable web", kResampleBudget);
}

enum class MemberClass { Smooth, OcticSmoothPoint, RankLE6, Rank7SingOnPlane };

inline const char* to_string(MemberClass c) {
    switch (c) {
        case MemberClass::Smooth: return "Smooth";
        case MemberClass::OcticSmoothPoint: return "OcticSmoothPoint";
        case MemberClass::RankLE6: return "RankLE6";
        case MemberClass::Rank7SingOnPlane: return "Rank7SingOnPlane";
    }
    return "?";
}

/// Rank stratification of one member.  Full rank = off the octic; rank 7
/// sits on the octic, smooth unless the kernel lands on the plane; rank
/// <= 6 members are singular points of the octic.  The last two claims
/// are re-checked against the gradient on every call.
template <FieldContext F>
MemberClass classify_member(const Web<F>& w, const OcticSurface<F>& octic, const WebMember<F>& m) {
    const F& k = w.field();
    auto rk = rank_kernel(m.matrix);
    if (rk.rank == kAmbient) return MemberClass::Smooth;

    MemberClass cls;
    if (rk.rank <= 6) {
        cls = MemberClass::RankLE6;
    } else {
        cls = MemberClass::OcticSmoothPoint;
        if (w.plane && w.plane->contains(rk.kernel.basis().column(0)))
            cls = MemberClass::Rank7SingOnPlane;
    }
    if (!k.is_zero(octic.det_poly.eval(m.lambda)))
        throw Error("classify_member: rank-deficient member off its own octic");
    if ((cls == MemberClass::RankLE6 || cls == MemberClass::Rank7SingOnPlane) &&
        !octic.gradient_vanishes_at(m.lambda))
        throw Error("classify_member: singular member with nonvanishing octic gradient");
    return cls;
}

/// The 5-space {x : x^T M B = 0} cut out by tangency along the plane:
/// the intersection of the tangent hyperplanes of the quadric at all
/// points of P.  Needs M B of full rank 3 (true away from the plane's
/// bad members); contains P because B^T M B = 0.
template <FieldContext F>
Subspace<F> tangent_hull(const WebMember<F>& m, const Plane<F>& plane) {
    const F& k = m.matrix.field();
    Mat<F> mb = m.matrix * plane.basis();
    auto rk = rank_kernel(mb.transpose());
    if (rk.rank != 3)
        throw NonGenericError("tangent_hull: M*B rank " + std::to_string(rk.rank) + ", need 3");
    return rk.kernel;  // dim 8 - 3 = 5
}

enum class ResidualTag {
    PointOffPlane,
    PointOnPlane,
    LineProper,
    LineOnPlane,
    TwoPlanes,
    DoublePlane,
    All,
    PlaneOnly
};

inline const char* to_string(ResidualTag t) {
    switch (t) {
        case ResidualTag::PointOffPlane: return "PointOffPlane";
        case ResidualTag::PointOnPlane: return "PointOnPlane";
        case ResidualTag::LineProper: return "LineProper";
        case ResidualTag::LineOnPlane: return "LineOnPlane";
        case ResidualTag::TwoPlanes: return "TwoPlanes";
        case ResidualTag::DoublePlane: return "DoublePlane";
        case ResidualTag::All: return "All";
        case ResidualTag::PlaneOnly: return "PlaneOnly";
    }
    return "?";
}

template <FieldContext F>
struct ResidualIntersection {
    ResidualTag tag;
    std::size_t form_rank;                                  // rank of the 4x4 coefficient matrix
    std::optional<std::vector<typename F::Elem>> point;     // ambient, normalized
    std::optional<Mat<F>> line;                             // ambient 8x2 basis
};

/// Base locus of the web cut down to a 3-space v containing the plane.
/// In coordinates (z0; z1..z3) with P = {z0 = 0}, each restricted
/// quadric factors as z0 * f_i with f_i linear; everything is read off
/// the rank and kernel of the 4x4 matrix of f-coefficients.
template <FieldContext F>
ResidualIntersection<F> residual_intersection(const Web<F>& w, const Subspace<F>& v) {
    const F& k = w.field();
    if (!w.plane) throw PreconditionError("residual_intersection: web has no plane");
    if (v.ambient() != kAmbient || v.dim() != 4)
        throw PreconditionError("residual_intersection: need a 4-dimensional subspace");
    const Plane<F>& plane = *w.plane;

    // adapted frame [c | b0 b1 b2], c in v off the plane
    std::optional<std::vector<typename F::Elem>> off;
    for (std::size_t c = 0; c < v.dim(); ++c) {
        auto col = v.basis().column(c);
        if (!plane.contains(col)) {
            off = std::move(col);
            break;
        }
    }
    if (!off) throw PreconditionError("residual_intersection: subspace does not contain the plane properly");
    Mat<F> frame(k, kAmbient, 4);
    for (std::size_t i = 0; i < kAmbient; ++i) {
        frame.at(i, 0) = (*off)[i];
        for (std::size_t c = 0; c < 3; ++c) frame.at(i, 1 + c) = plane.basis().at(i, c);
    }
    {
        // the frame must really span v (in particular P ⊂ v)
        Subspace<F> check(k, kAmbient, frame);
        if (!(check == v)) throw PreconditionError("residual_intersection: subspace does not contain the plane");
    }

    const auto two = k.from_int(2);
    Mat<F> fmat(k, kWebSize, 4);
    for (std::size_t i = 0; i < kWebSize; ++i) {
        Mat<F> r = restrict_to_frame(w.quadrics[i], frame);
        for (std::size_t a = 1; a < 4; ++a)
            for (std::size_t b = 1; b < 4; ++b)
                if (!k.is_zero(r.at(a, b)))
                    throw PreconditionError("residual_intersection: quadric does not vanish on the plane");
        fmat.at(i, 0) = r.at(0, 0);
        for (std::size_t a = 1; a < 4; ++a) fmat.at(i, a) = k.mul(two, r.at(0, a));
    }

    auto rk = rank_kernel(fmat);
    ResidualIntersection<F> out{ResidualTag::PlaneOnly, rk.rank, std::nullopt, std::nullopt};
    switch (rk.rank) {
        case 4:
            out.tag = ResidualTag::PlaneOnly;
            break;
        case 3: {
            auto z = rk.kernel.basis().column(0);
            out.point = projective_normalize(k, frame.apply(z));
            out.tag = k.is_zero(z[0]) ? ResidualTag::PointOnPlane : ResidualTag::PointOffPlane;
            break;
        }
        case 2: {
            auto z0 = rk.kernel.basis().column(0);
            auto z1 = rk.kernel.basis().column(1);
            Mat<F> line(k, kAmbient, 2);
            auto a0 = frame.apply(z0);
            auto a1 = frame.apply(z1);
            for (std::size_t i = 0; i < kAmbient; ++i) {
                line.at(i, 0) = a0[i];
                line.at(i, 1) = a1[i];
            }
            out.line = std::move(line);
            out.tag = (k.is_zero(z0[0]) && k.is_zero(z1[0])) ? ResidualTag::LineOnPlane
                                                             : ResidualTag::LineProper;
            break;
        }
        case 1: {
            // common form f: either a second plane {f=0} distinct from
            // {z0=0}, or f ~ z0 and the residual is the plane doubled
            bool kernel_is_plane = true;
            for (std::size_t c = 0; c < rk.kernel.dim() && kernel_is_plane; ++c)
                kernel_is_plane = k.is_zero(rk.kernel.basis().column(c)[0]);
            out.tag = kernel_is_plane ? ResidualTag::DoublePlane : ResidualTag::TwoPlanes;
            break;
        }
        case 0:
            out.tag = ResidualTag::All;
            break;
    }
    return out;
}

enum class DiscSplit { TwoDistinct, DoubleRoot, ConjugatePair };

inline const char* to_string(DiscSplit s) {
    switch (s) {
        case DiscSplit::TwoDistinct: return "TwoDistinct";
        case DiscSplit::DoubleRoot: return "DoubleRoot";
        case DiscSplit::ConjugatePair: return "ConjugatePair";
    }
    return "?";
}

template <FieldContext F>
struct CorrespondenceResult {
    typename F::Elem a, b, c;        // restricted form a y0^2 + 2b y0 y1 + c y1^2
    typename F::Elem discriminant;   // b^2 - ac
    Subspace<F> hull;
    DiscSplit split;
    std::vector<Subspace<F>> three_spaces;                 // dim-4 subspaces through P
    std::vector<ResidualIntersection<F>> residuals;        // per 3-space
    std::vector<std::vector<typename F::Elem>> points;     // residual points, when point-tagged
};

/// The forward map: member -> tangent hull -> binary form on hull/P ->
/// root 3-spaces -> residual points of the base locus.  Two points when
/// the discriminant splits, one (doubled) on the octic, none over a
/// field where the discriminant is a non-square.
template <FieldContext F>
CorrespondenceResult<F> quadric_to_points(const Web<F>& w, const WebMember<F>& m) {
    const F& k = w.field();
    if (!w.plane) throw PreconditionError("quadric_to_points: web has no plane");
    const Plane<F>& plane = *w.plane;

    Subspace<F> hull = tangent_hull(m, plane);

    // extend the plane basis to a basis of the hull: rows 0..2 plane,
    // then greedily add hull basis vectors that raise the rank
    std::vector<std::vector<typename F::Elem>> quotient;
    {
        Mat<F> probe(k, 6, kAmbient);
        for (std::size_t c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < kAmbient; ++i) probe.at(c, i) = plane.basis().at(i, c);
        std::size_t have = 3;
        for (std::size_t c = 0; c < hull.dim() && have < 5; ++c) {
            Mat<F> trial(probe);
            auto col = hull.basis().column(c);
            for (std::size_t i = 0; i < kAmbient; ++i) trial.at(have, i) = col[i];
            Mat<F> red(trial);
            if (red.rref() == have + 1) {
                probe = trial;
                quotient.push_back(col);
                ++have;
            }
        }
        if (quotient.size() != 2)
            throw NonGenericError("quadric_to_points: hull does not extend the plane by 2");
    }

    Mat<F> frame(k, kAmbient, 5);  // [u0 u1 | b0 b1 b2]
    for (std::size_t i = 0; i < kAmbient; ++i) {
        frame.at(i, 0) = quotient[0][i];
        frame.at(i, 1) = quotient[1][i];
        for (std::size_t c = 0; c < 3; ++c) frame.at(i, 2 + c) = plane.basis().at(i, c);
    }
    Mat<F> r = restrict_to_frame(m.matrix, frame);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            if ((i >= 2 || j >= 2) && !k.is_zero(r.at(i, j)))
                throw Error("quadric_to_points: form does not collapse to the hull quotient");

    CorrespondenceResult<F> out{r.at(0, 0), r.at(0, 1), r.at(1, 1), k.zero(), hull,
                                DiscSplit::ConjugatePair, {}, {}, {}};
    if (k.is_zero(out.a) && k.is_zero(out.b) && k.is_zero(out.c))
        throw NonGenericError("quadric_to_points: binary form vanishes identically");
    out.discriminant = k.sub(k.mul(out.b, out.b), k.mul(out.a, out.c));

    // root directions (y0 : y1) of a y0^2 + 2b y0 y1 + c y1^2
    std::vector<std::array<typename F::Elem, 2>> dirs;
    if (k.is_zero(out.discriminant)) {
        out.split = DiscSplit::DoubleRoot;
        if (!k.is_zero(out.a)) dirs.push_back({k.neg(out.b), out.a});
        else dirs.push_back({k.one(), k.zero()});  // disc = 0, a = 0 force b = 0, c != 0
    } else if (auto s = k.sqrt(out.discriminant)) {
        out.split = DiscSplit::TwoDistinct;
        if (!k.is_zero(out.a)) {
            dirs.push_back({k.sub(*s, out.b), out.a});
            dirs.push_back({k.neg(k.add(*s, out.b)), out.a});
        } else {
            dirs.push_back({k.one(), k.zero()});
            dirs.push_back({k.neg(out.c), k.mul(k.from_int(2), out.b)});
        }
    } else {
        out.split = DiscSplit::ConjugatePair;
        return out;  // no rational 3-spaces over this field
    }

    for (const auto& d : dirs) {
        std::vector<typename F::Elem> wvec(kAmbient);
        for (std::size_t i = 0; i < kAmbient; ++i)
            wvec[i] = k.add(k.mul(d[0], quotient[0][i]), k.mul(d[1], quotient[1][i]));
        Subspace<F> v = span_join(plane.space(), wvec);
        if (v.dim() != 4) throw Error("quadric_to_points: root direction degenerated");
        ResidualIntersection<F> res = residual_intersection(w, v);
        if (res.point) {
            if (!in_base_locus(w, *res.point))
                throw Error("quadric_to_points: residual point escapes the base locus");
            out.points.push_back(*res.point);
        }
        out.three_spaces.push_back(std::move(v));
        out.residuals.push_back(std::move(res));
    }
    return out;
}

/// The inverse map: a base-locus point determines the unique member
/// whose quadric contains the 3-space spanned by the plane and the
/// point (for p on the plane, the tangent space of the base locus
/// replaces the span).
template <FieldContext F>
WebMember<F> point_to_quadric(const Web<F>& w, const std::vector<typename F::Elem>& p) {
    const F& k = w.field();
    if (!w.plane) throw PreconditionError("point_to_quadric: web has no plane");
    if (p.size() != kAmbient) throw PreconditionError("point_to_quadric: point must have 8 coordinates");
    if (!in_base_locus(w, p)) throw PreconditionError("point_to_quadric: point not on the base locus");
    const Plane<F>& plane = *w.plane;

    Subspace<F> cspace = Subspace<F>::zero(k, kAmbient);
    if (!plane.contains(p)) {
        cspace = span_join(plane.space(), p);
    } else {
        // tangent space of the base locus: kernel of the Jacobian rows 2 (Q_i p)^T
        Mat<F> jac(k, kWebSize, kAmbient);
        const auto two = k.from_int(2);
        for (std::size_t i = 0; i < kWebSize; ++i) {
            auto row = w.quadrics[i].apply(p);
            for (std::size_t j = 0; j < kAmbient; ++j) jac.at(i, j) = k.mul(two, row[j]);
        }
        auto rk = rank_kernel(jac);
        if (rk.kernel.dim() != 4)
            throw NonGenericError("point_to_quadric: tangent space dimension " +
                                  std::to_string(rk.kernel.dim()) + ", need 4 (singular point?)");
        cspace = rk.kernel;
    }
    if (cspace.dim() != 4) throw NonGenericError("point_to_quadric: span of plane and point is degenerate");

    std::optional<std::vector<typename F::Elem>> off;
    if (!plane.contains(p)) {
        off = p;
    } else {
        for (std::size_t c = 0; c < cspace.dim(); ++c) {
            auto col = cspace.basis().column(c);
            if (!plane.contains(col)) {
                off = std::move(col);
                break;
            }
        }
    }
    if (!off) throw NonGenericError("point_to_quadric: no direction off the plane");

    Mat<F> frame(k, kAmbient, 4);
    for (std::size_t i = 0; i < kAmbient; ++i) {
        frame.at(i, 0) = (*off)[i];
        for (std::size_t c = 0; c < 3; ++c) frame.at(i, 1 + c) = plane.basis().at(i, c);
    }

    const auto two = k.from_int(2);
    Mat<F> fmat(k, kWebSize, 4);
    for (std::size_t i = 0; i < kWebSize; ++i) {
        Mat<F> r = restrict_to_frame(w.quadrics[i], frame);
        for (std::size_t a = 1; a < 4; ++a)
            for (std::size_t b = 1; b < 4; ++b)
                if (!k.is_zero(r.at(a, b)))
                    throw PreconditionError("point_to_quadric: quadric does not vanish on the plane");
        fmat.at(i, 0) = r.at(0, 0);
        for (std::size_t a = 1; a < 4; ++a) fmat.at(i, a) = k.mul(two, r.at(0, a));
    }

    auto rk = rank_kernel(fmat);
    if (rk.left_kernel.dim() != 1)
        throw NonGenericError("point_to_quadric: member not unique (left kernel dim " +
                              std::to_string(rk.left_kernel.dim()) + ")");
    auto lambda = rk.left_kernel.basis().column(0);
    // exactness check: sum lambda_i f_i = 0
    auto combo = fmat.transpose().apply(lambda);
    for (const auto& x : combo)
        if (!k.is_zero(x)) throw Error("point_to_quadric: left kernel failed to annihilate the forms");
    return web_member(w, std::move(lambda));
}

/// Random member on the octic: restrict det to random lines in P^3 and
/// take a root.  Over F_p roughly 1 - 1/e of lines carry one.
inline WebMember<Fp> sample_octic_point(const Web<Fp>& w, const OcticSurface<Fp>& octic, Rng& rng,
                                        int budget = 64) {
    const Fp& k = w.field();
    for (int attempt = 0; attempt < budget; ++attempt) {
        std::vector<Fp::Elem> base(kWebSize), dir(kWebSize);
        bool dir_nonzero = false;
        for (std::size_t i = 0; i < kWebSize; ++i) {
            base[i] = k.uniform(rng);
            dir[i] = k.uniform(rng);
            dir_nonzero = dir_nonzero || !k.is_zero(dir[i]);
        }
        if (!dir_nonzero) continue;
        UniPoly<Fp> restricted = octic.det_poly.restrict_line(base, dir);
        if (restricted.is_zero()) continue;  // line inside the octic; resample
        if (restricted.degree() < 1) continue;
        auto roots = unipoly_roots(restricted);
        if (roots.empty()) continue;
        auto lambda = vec_add(k, base, vec_scale(k, roots[rng.below(roots.size())], dir));
        bool nonzero = false;
        for (const auto& x : lambda) nonzero = nonzero || !k.is_zero(x);
        if (!nonzero) continue;
        WebMember<Fp> m = web_member(w, lambda);
        if (!k.is_zero(octic.det_poly.eval(m.lambda)))
            throw Error("sample_octic_point: root does not kill the determinant");
        return m;
    }
    throw DegenerateSampleError("sample_octic_point: no octic member found", budget);
}

template <FieldContext F>
struct NodeRecord {
    std::vector<typename F::Elem> point;  // ambient, normalized, on the plane
    WebMember<F> member;
    std::size_t jacobian_rank;
};

namespace detail {

/// Shared post-processing: candidate plane point -> full node record
/// with all the invariant checks the census promises.
template <FieldContext F>
std::optional<NodeRecord<F>> make_node_record(const Web<F>& w, const OcticSurface<F>& octic,
                                              const std::array<Mat<F>, kWebSize>& adapted,
                                              const Mat<F>& transform,
                                              const std::vector<typename F::Elem>& y) {
    const F& k = w.field();
    Mat<F> slice = plane_jacobian_slice<F>(adapted, y);
    auto rk = rank_kernel(slice);
    if (rk.rank > 3) return std::nullopt;
    if (rk.left_kernel.dim() != 1)
        throw NonGenericError("node_census: left kernel dimension " +
                              std::to_string(rk.left_kernel.dim()) + " at a node");
    std::vector<typename F::Elem> z(kAmbient, k.zero());
    for (std::size_t t = 0; t < 3; ++t) z[5 + t] = y[t];
    std::vector<typename F::Elem> ambient = projective_normalize(k, transform.apply(z));

    WebMember<F> m = web_member(w, rk.left_kernel.basis().column(0));
    auto mrk = rank_kernel(m.matrix);
    if (mrk.rank != 7)
        throw NonGenericError("node_census: node member has rank " + std::to_string(mrk.rank));
    for (const auto& x : m.matrix.apply(ambient))
        if (!k.is_zero(x)) throw Error("node_census: node point not in the member kernel");
    if (!octic.gradient_vanishes_at(m.lambda))
        throw Error("node_census: octic gradient does not vanish at a node member");
    return NodeRecord<F>{ambient, std::move(m), rk.rank};
}

}  // namespace detail

template <class Consider>
void node_census_curve_walk(const Fp& k, const std::array<Mat<Fp>, kWebSize>& adapted,
                            Consider&& consider);

enum class CensusMode { Auto, Brute, CurveWalk };

/// Exhaustive census of singular base-locus points on the plane.  Two
/// equivalent modes share one predicate (all five 4x4 minors of the
/// Jacobian slice vanish, i.e. rank <= 3):
///   - brute: scan every rational point of the plane (small p);
///   - curve walk: zeros of the first nonzero minor quartic are
///     enumerated line by line via univariate root finding, then
///     filtered by the full rank condition (large p; O(p) quartics
///     instead of O(p^2) points).
/// Results are sorted by plane coordinates, so both modes agree exactly.
template <FieldContext F>
std::vector<NodeRecord<F>> node_census(const Web<F>& w, const OcticSurface<F>& octic,
                                       CensusMode mode = CensusMode::Auto) {
    if (!w.plane) throw PreconditionError("node_census: web has no plane");
    const F& k = w.field();
    Mat<F> transform = detail::plane_adapted_transform(k, *w.plane);
    std::array<Mat<F>, kWebSize> adapted{
        restrict_to_frame(w.quadrics[0], transform), restrict_to_frame(w.quadrics[1], transform),
        restrict_to_frame(w.quadrics[2], transform), restrict_to_frame(w.quadrics[3], transform)};
    for (const auto& q : adapted)
        for (std::size_t i = 5; i < kAmbient; ++i)
            for (std::size_t j = 5; j < kAmbient; ++j)
                if (!k.is_zero(q.at(i, j)))
                    throw PreconditionError("node_census: quadric does not vanish on the plane");

    std::vector<NodeRecord<F>> out;
    auto consider = [&](const std::vector<typename F::Elem>& y) {
        // cheap rank gate first; the full record does the rest
        Mat<F> slice = plane_jacobian_slice<F>(adapted, y);
        if (slice.rref() > 3) return;
        if (auto rec = detail::make_node_record(w, octic, adapted, transform, y))
            out.push_back(std::move(*rec));
    };

    if constexpr (std::is_same_v<F, Fp>) {
        const std::uint64_t p = k.modulus();
        const bool brute = mode == CensusMode::Brute || (mode == CensusMode::Auto && p <= (1ULL << 10));
        if (brute) {
            if (p > (1ULL << 12))
                throw PreconditionError("node_census: brute scan infeasible at this prime");
            // brute scan of P^2(F_p): (1,s,t), (0,1,t), (0,0,1)
            for (std::uint64_t s = 0; s < p; ++s)
                for (std::uint64_t t = 0; t < p; ++t) consider({1, s, t});
            for (std::uint64_t t = 0; t < p; ++t) consider({0, 1, t});
            consider({0, 0, 1});
        } else {
            node_census_curve_walk(k, adapted, consider);
        }
    } else {
        throw UnsupportedOperationError("node_census: exhaustive scan needs a prime field");
    }

    std::sort(out.begin(), out.end(), [&](const NodeRecord<F>& a, const NodeRecord<F>& b) {
        return a.point < b.point;
    });
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
        if (out[i].member.lambda == out[i + 1].member.lambda)
            throw NonGenericError("node_census: two nodes share one member");
    return out;
}

/// Large-p enumeration used by node_census: the five 4x4 minors of the
/// symbolic Jacobian slice are quartic curves in the plane; walk the
/// zero set of the first nonzero one by fixing a line and solving the
/// remaining univariate quartic, then test the other minors.
template <class Consider>
void node_census_curve_walk(const Fp& k,
                            const std::array<Mat<Fp>, kWebSize>& adapted, Consider&& consider) {
    std::vector<MultiPoly<Fp>> minors = plane_jacobian_minors<Fp>(adapted);
    std::size_t lead = 0;
    while (lead < minors.size() && minors[lead].is_zero()) ++lead;
    if (lead == minors.size())
        throw NonGenericError("node_census: every Jacobian minor vanishes identically");
    const MultiPoly<Fp>& curve = minors[lead];

    const std::uint64_t p = k.modulus();
    auto scan_line = [&](const std::vector<Fp::Elem>& base, const std::vector<Fp::Elem>& dir) {
        UniPoly<Fp> quartic = curve.restrict_line(base, dir);
        if (quartic.is_zero()) {
            // whole line on the curve: fall back to scanning it
            for (std::uint64_t t = 0; t < p; ++t) {
                auto y = vec_add(k, base, vec_scale(k, t, dir));
                bool all = true;
                for (const auto& mv : minors)
                    if (!k.is_zero(mv.eval(y))) { all = false; break; }
                if (all) consider(y);
            }
            return;
        }
        for (auto root : unipoly_roots(quartic)) {
            auto y = vec_add(k, base, vec_scale(k, root, dir));
            bool all = true;
            for (const auto& mv : minors)
                if (!k.is_zero(mv.eval(y))) { all = false; break; }
            if (all) consider(y);
        }
    };

    // chart y0 = 1: lines {(1, s, *)}; chart y0 = 0, y1 = 1: one line; point (0,0,1)
    for (std::uint64_t s = 0; s < p; ++s) scan_line({1, s, 0}, {0, 0, 1});
    scan_line({0, 1, 0}, {0, 0, 1});
    {
        std::vector<Fp::Elem> y = {0, 0, 1};
        bool all = true;
        for (const auto& mv : minors)
            if (!k.is_zero(mv.eval(y))) { all = false; break; }
        if (all) consider(y);
    }
}

}  // namespace quadweb
