#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace pgq {

/// An element of GF(q) encoded as the base-p digit vector of its polynomial
/// representative (little-endian), so 0 and 1 are the field's zero and one.
struct FieldElement {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

class NotAPrimePower : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

/// Exact, table-driven arithmetic in GF(p^e).
///
/// Multiplication goes through exp/log tables over a primitive element, built
/// once at construction. Copies share the (immutable) tables.
class Field {
public:
    std::uint32_t p() const { return tables_->p; }
    std::uint32_t e() const { return tables_->e; }
    std::uint32_t q() const { return tables_->q; }

    /// Monic irreducible of degree e, e+1 coefficients, low degree first.
    const std::vector<std::uint32_t>& reduction_poly() const { return tables_->poly; }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }
    /// Smallest-encoding primitive element.
    FieldElement generator() const { return {tables_->exp[1]}; }

    FieldElement add(FieldElement a, FieldElement b) const;
    FieldElement neg(FieldElement a) const { return {tables_->neg[a.value]}; }
    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
    FieldElement mul(FieldElement a, FieldElement b) const;
    FieldElement inv(FieldElement a) const;
    FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
    FieldElement pow(FieldElement a, std::uint64_t exponent) const;

    /// Absolute trace to GF(p), returned as an element of the prime subfield.
    FieldElement trace(FieldElement a) const;
    bool is_square(FieldElement a) const;

    /// Element with the given integer encoding; throws if out of range.
    FieldElement element(std::uint32_t value) const;
    /// All q elements in increasing encoding order.
    std::vector<FieldElement> elements() const;

    friend bool operator==(const Field& a, const Field& b) {
        return a.tables_ == b.tables_ || (a.q() == b.q() && a.reduction_poly() == b.reduction_poly());
    }

private:
    struct Tables {
        std::uint32_t p = 0;
        std::uint32_t e = 0;
        std::uint32_t q = 0;
        std::vector<std::uint32_t> poly;
        std::vector<std::uint32_t> exp; // length 2(q-1)
        std::vector<std::uint32_t> log; // log[0] unused
        std::vector<std::uint32_t> neg;
        std::vector<std::uint16_t> add; // q*q table, only for small odd-characteristic extensions
    };

    explicit Field(std::shared_ptr<const Tables> t) : tables_(std::move(t)) {}
    friend Field make_field(std::uint32_t q);

    std::shared_ptr<const Tables> tables_;
};

/// Builds GF(q) using the lexicographically smallest monic irreducible
/// (coefficients compared from the constant term upward).
Field make_field(std::uint32_t q);

/// Exhaustive irreducibility test over GF(p): trial division by every monic
/// polynomial of degree 1..deg/2. Coefficients low degree first.
bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p);

/// Returns (p, e) with q = p^e, or throws NotAPrimePower.
std::pair<std::uint32_t, std::uint32_t> prime_power_decompose(std::uint64_t q);
bool is_prime_power(std::uint64_t q);

} // namespace pgq
