#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pgq {

// Expression templates off so mixed ternaries and auto locals behave like values.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

/// num/den; the sign is moved to the numerator first because the 1.74
/// rational backend rejects negative denominators.
inline Rational ratio(BigInt num, BigInt den) {
    if (den == 0) throw std::domain_error("ratio: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

inline BigInt ipow(std::uint64_t base, int exponent) {
    if (exponent < 0) throw std::domain_error("ipow: negative exponent");
    return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exponent));
}

class InexactDivision : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline BigInt exact_div(const BigInt& a, const BigInt& b, const char* what = "value") {
    if (b == 0 || a % b != 0)
        throw InexactDivision(std::string("inexact division in ") + what + ": " + a.str() + " / " + b.str());
    return a / b;
}

inline std::int64_t to_i64(const BigInt& v, const char* what = "value") {
    if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN))
        throw std::overflow_error(std::string(what) + " does not fit in 64 bits");
    return static_cast<std::int64_t>(v);
}

} // namespace pgq
