#pragma once

/**
 * @file rational.hpp
 * @brief Exact arbitrary-precision integers and rationals.
 *
 * All arithmetic in the library is exact. Rationals are kept in canonical
 * form (lowest terms, positive denominator) by the backing implementation;
 * serialization is "p/q", or "p" when the denominator is 1.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "whcryst/errors.hpp"

namespace whcryst {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return den(r) == 1; }

/// Largest integer n with n <= r.
inline Int floor_rat(const Rat& r) {
    Int q = num(r) / den(r);
    if (num(r) < 0 && q * den(r) != num(r)) --q;
    return q;
}

/// Fractional part in [0, 1).
inline Rat frac(const Rat& r) { return r - Rat(floor_rat(r)); }

/// Serialize as "p/q", or "p" when q == 1.
inline std::string rat_str(const Rat& r) {
    if (is_integer(r)) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

/// Parse "p/q" or "p"; q must be nonzero.
inline Rat rat_parse(const std::string& s) {
    auto bad = [&]() -> ParseError { return ParseError("invalid rational '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q == 0) throw bad();
        return Rat(p, q);
    } catch (const std::exception&) {
        throw bad();
    }
}

/// Exact gcd on nonnegative rationals: the generator of the subgroup
/// a*Z + b*Z of (Q, +), i.e. gcd(p1*q2, p2*q1) / (q1*q2) in lowest terms.
inline Rat rat_gcd(const Rat& a, const Rat& b) {
    using boost::multiprecision::abs;
    using boost::multiprecision::gcd;
    Int p = gcd(abs(num(a)) * den(b), abs(num(b)) * den(a));
    return Rat(p, den(a) * den(b));
}

} // namespace whcryst
