#pragma once

// Arbitrary-precision integers and rationals, exact binomial coefficients.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "setpair/errors.hpp"

namespace setpair {

using BigInt = boost::multiprecision::cpp_int;

/// Always kept in lowest terms with a positive denominator; zero is 0/1.
using Rational = boost::multiprecision::cpp_rational;

/// C(n, k), zero outside 0 <= k <= n.
inline BigInt binomial(std::int64_t n, std::int64_t k) {
    if (n < 0) {
        throw DomainError("binomial: n must be non-negative, got " + std::to_string(n));
    }
    if (k < 0 || k > n) return BigInt(0);
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        // result * (n-k+i) is divisible by i since it equals i * C(n-k+i, i).
        result *= (n - k + i);
        result /= i;
    }
    return result;
}

inline Rational rat_sum(std::span<const Rational> terms) {
    return std::accumulate(terms.begin(), terms.end(), Rational(0));
}

/// p/q for any q != 0; the sign is moved to the numerator first.
inline Rational make_rational(BigInt p, BigInt q) {
    if (q == 0) throw DomainError("zero denominator");
    if (q < 0) {
        p = -p;
        q = -q;
    }
    return Rational(p, q);
}

inline Rational reciprocal(const BigInt& denominator) {
    return Rational(BigInt(1), denominator);
}

/// "p/q", or "p" when q = 1.
inline std::string to_string(const Rational& value) {
    const BigInt& q = boost::multiprecision::denominator(value);
    std::string out = boost::multiprecision::numerator(value).str();
    if (q != 1) out += "/" + q.str();
    return out;
}

/// Always "p/q", including "1/1".
inline std::string to_fraction_string(const Rational& value) {
    return boost::multiprecision::numerator(value).str() + "/" +
           boost::multiprecision::denominator(value).str();
}

inline double to_double(const Rational& value) { return value.convert_to<double>(); }

namespace detail {

inline BigInt parse_integer(std::string_view text, std::string_view whole) {
    std::size_t pos = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) pos = 1;
    if (pos == text.size()) throw ParseError("malformed rational '" + std::string(whole) + "'");
    for (std::size_t i = pos; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') {
            throw ParseError("malformed rational '" + std::string(whole) + "'");
        }
    }
    if (text[0] == '+') text.remove_prefix(1);
    return BigInt(std::string(text));
}

}  // namespace detail

/// Accepts "p" or "p/q" with q != 0; the result is normalized.
inline Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(detail::parse_integer(text, text));
    BigInt p = detail::parse_integer(text.substr(0, slash), text);
    BigInt q = detail::parse_integer(text.substr(slash + 1), text);
    if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return make_rational(std::move(p), std::move(q));
}

}  // namespace setpair
