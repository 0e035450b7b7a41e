#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "quadweb/errors.hpp"
#include "quadweb/fp.hpp"
#include "quadweb/linalg.hpp"
#include "quadweb/rationals.hpp"
#include "quadweb/webgeom.hpp"

// Web serialization.  The format is
//   { "prime": p, "seed": s, "plane": 8x3 array | null,
//     "quadrics": [ four 8x8 symmetric row-major arrays ] }
// with entries stored as residues over a prime field and as
// [numerator, denominator] string pairs over the rationals.  Reports
// reference webs by an FNV-1a hash of the canonical dump, so a web file
// is content-addressed and replayable.

namespace quadweb {

using Json = nlohmann::json;

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace detail {

inline Json elem_to_json(const Fp&, const Fp::Elem& e) { return Json(e); }

inline Json elem_to_json(const Rationals&, const Rationals::Elem& e) {
    return Json::array({e.get_num().get_str(), e.get_den().get_str()});
}

inline Fp::Elem elem_from_json(const Fp& k, const Json& j) {
    if (!j.is_number_unsigned())
        throw PreconditionError("web json: residue entries must be non-negative integers");
    const std::uint64_t v = j.get<std::uint64_t>();
    if (v >= k.modulus()) throw PreconditionError("web json: residue out of range");
    return v;
}

inline Rationals::Elem elem_from_json(const Rationals&, const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
        throw PreconditionError("web json: rational entries must be [num, den] string pairs");
    mpq_class q(j[0].get<std::string>() + "/" + j[1].get<std::string>());
    q.canonicalize();
    return q;
}

template <FieldContext F>
Json mat_to_json(const Mat<F>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(elem_to_json(m.field(), m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <FieldContext F>
Mat<F> mat_from_json(const F& k, const Json& j, std::size_t rows, std::size_t cols,
                     const char* what) {
    if (!j.is_array() || j.size() != rows)
        throw PreconditionError(std::string("web json: ") + what + " must have " +
                                std::to_string(rows) + " rows");
    Mat<F> m(k, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw PreconditionError(std::string("web json: ") + what + " row has wrong length");
        for (std::size_t c = 0; c < cols; ++c) m.at(i, c) = elem_from_json(k, j[i][c]);
    }
    return m;
}

}  // namespace detail

template <FieldContext F>
Json web_to_json(const Web<F>& w) {
    const F& k = w.field();
    Json j;
    if constexpr (std::is_same_v<F, Fp>)
        j["prime"] = k.modulus();
    else
        j["prime"] = nullptr;  // rational web
    j["seed"] = w.seed;
    j["plane"] = w.plane ? detail::mat_to_json(w.plane->basis()) : Json(nullptr);
    Json qs = Json::array();
    for (const auto& q : w.quadrics) qs.push_back(detail::mat_to_json(q));
    j["quadrics"] = std::move(qs);
    return j;
}

/// Parse and validate: four symmetric 8x8 matrices over the stated
/// prime, an optional plane spanned by the given 8x3 columns.
inline Web<Fp> web_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("prime") || !j.contains("quadrics"))
        throw PreconditionError("web json: need an object with prime and quadrics");
    if (!j["prime"].is_number_unsigned())
        throw PreconditionError("web json: prime must be a positive integer");
    const Fp k(j["prime"].get<std::uint64_t>());  // validates primality

    if (!j["quadrics"].is_array() || j["quadrics"].size() != kWebSize)
        throw PreconditionError("web json: need exactly four quadrics");
    Web<Fp> w{{Mat<Fp>(k, kAmbient, kAmbient), Mat<Fp>(k, kAmbient, kAmbient),
               Mat<Fp>(k, kAmbient, kAmbient), Mat<Fp>(k, kAmbient, kAmbient)},
              {},
              j.value("seed", std::uint64_t{0})};
    for (std::size_t q = 0; q < kWebSize; ++q) {
        w.quadrics[q] =
            detail::mat_from_json(k, j["quadrics"][q], kAmbient, kAmbient, "quadric");
        if (!w.quadrics[q].is_symmetric())
            throw PreconditionError("web json: quadric " + std::to_string(q) + " not symmetric");
    }
    if (j.contains("plane") && !j["plane"].is_null()) {
        Mat<Fp> basis = detail::mat_from_json(k, j["plane"], kAmbient, 3, "plane");
        w.plane = Plane<Fp>(Subspace<Fp>(k, kAmbient, basis));  // checks dimension 3
    }
    return w;
}

/// Content address of a web: hash of the canonical (sorted-key) dump.
template <FieldContext F>
std::string web_content_hash(const Web<F>& w) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(web_to_json(w).dump())));
    return std::string("fnv1a64:") + buf;
}

}  // namespace quadweb
