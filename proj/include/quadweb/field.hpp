#pragma once

#include <concepts>
#include <cstdint>
#include <optional>

#include "quadweb/errors.hpp"
#include "quadweb/fp.hpp"
#include "quadweb/rationals.hpp"
#include "quadweb/rng.hpp"

namespace quadweb {

/// What the generic layers need from a field context.  Elements are value
/// types owned by the caller; the context performs all arithmetic.  A
/// context must be cheaply copyable and equality-comparable (equal
/// contexts = same field, mixing unequal ones is a ContextMismatchError).
template <class F>
concept FieldContext = std::regular<typename F::Elem> && requires(const F f, const typename F::Elem a, Rng& rng) {
    { f.zero() } -> std::same_as<typename F::Elem>;
    { f.one() } -> std::same_as<typename F::Elem>;
    { f.from_int(1LL) } -> std::same_as<typename F::Elem>;
    { f.add(a, a) } -> std::same_as<typename F::Elem>;
    { f.sub(a, a) } -> std::same_as<typename F::Elem>;
    { f.neg(a) } -> std::same_as<typename F::Elem>;
    { f.mul(a, a) } -> std::same_as<typename F::Elem>;
    { f.inv(a) } -> std::same_as<typename F::Elem>;
    { f.div(a, a) } -> std::same_as<typename F::Elem>;
    { f.pow(a, std::uint64_t{1}) } -> std::same_as<typename F::Elem>;
    { f.is_zero(a) } -> std::same_as<bool>;
    { f.eq(a, a) } -> std::same_as<bool>;
    { f.is_square(a) } -> std::same_as<bool>;
    { f.sqrt(a) } -> std::same_as<std::optional<typename F::Elem>>;
    { f.uniform(rng) } -> std::same_as<typename F::Elem>;
    { f == f } -> std::convertible_to<bool>;
};

static_assert(FieldContext<Fp>);
static_assert(FieldContext<Rationals>);

template <FieldContext F>
void require_same_context(const F& a, const F& b, const char* where) {
    if (!(a == b)) throw ContextMismatchError(std::string("field context mismatch in ") + where);
}

/// Modular square root as a named entry point.  Only meaningful over a
/// prime field; the rational overload refuses rather than guessing.
inline std::optional<Fp::Elem> sqrt_mod_p(const Fp& field, Fp::Elem a) {
    return field.sqrt(a);
}

inline std::optional<Rationals::Elem> sqrt_mod_p(const Rationals&, const Rationals::Elem&) {
    throw UnsupportedOperationError("sqrt_mod_p requires a prime-field context");
}

}  // namespace quadweb
