#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace nilfourier {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return den(r) == 1; }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline double to_double(const Int& n) { return n.convert_to<double>(); }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }
inline Rat abs(const Rat& a) { return a < 0 ? Rat(-a) : a; }

/// Floor of the square root of a nonnegative integer.
inline Int isqrt(const Int& n) { return boost::multiprecision::sqrt(n); }

inline bool is_square(const Int& n) {
    if (n < 0) return false;
    Int r = isqrt(n);
    return r * r == n;
}

/// Largest squarefree d with n = s^2 * d (sign carried by d); kernel of 0 is 0.
inline Int squarefree_kernel(const Int& n) {
    if (n == 0) return 0;
    Int m = abs(n), d = 1;
    for (Int p = 2; p * p <= m; ++p) {
        int e = 0;
        while (m % p == 0) { m /= p; ++e; }
        if (e % 2 == 1) d *= p;
    }
    d *= m;
    return n < 0 ? Int(-d) : d;
}

/// s with n = s^2 * squarefree_kernel(n), s >= 0.
inline Int square_part(const Int& n) {
    if (n == 0) return 0;
    return isqrt(abs(n) / abs(squarefree_kernel(n)));
}

/// Deterministic trial-division primality; adequate for the 64-bit desk scale.
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (Int p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

inline std::int64_t least_prime_above(std::int64_t n) {
    Int p = n + 1;
    while (!is_prime(p)) ++p;
    return p.convert_to<std::int64_t>();
}

/// All prime divisors of |n| in increasing order, n != 0.
inline std::vector<Int> prime_divisors(Int n) {
    n = abs(n);
    std::vector<Int> out;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline std::string to_string(const Rat& r) { return r.str(); }

} // namespace nilfourier
