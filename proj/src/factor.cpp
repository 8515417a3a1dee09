#include "nilfourier/factor.hpp"

#include <limits>
#include <vector>

#include "nilfourier/errors.hpp"

namespace nilfourier {

static Int mulmod(const Int& a, const Int& b, const Int& n) { return a * b % n; }

static Int powmod(Int base, Int exp, const Int& n) {
    Int acc = 1;
    base %= n;
    while (exp > 0) {
        if (boost::multiprecision::bit_test(exp, 0)) acc = mulmod(acc, base, n);
        base = mulmod(base, base, n);
        exp >>= 1;
    }
    return acc;
}

bool miller_rabin(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    unsigned r = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++r;
    }
    // this base set is deterministic far beyond the norm sizes in play
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Int x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

static Int pollard_rho(const Int& n) {
    if (n % 2 == 0) return 2;
    for (Int c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        auto step = [&](const Int& v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            d = gcd(abs(x - y), n);
        }
        if (d != n) return d;
    }
}

static void factor_rec(const Int& n, std::map<Int, unsigned>& out) {
    if (n == 1) return;
    if (miller_rabin(n)) {
        ++out[n];
        return;
    }
    Int d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

static const std::vector<unsigned>& small_primes() {
    static const std::vector<unsigned> ps = [] {
        std::vector<unsigned> v;
        std::vector<bool> composite(10000, false);
        for (unsigned i = 2; i < 10000; ++i) {
            if (composite[i]) continue;
            v.push_back(i);
            for (unsigned j = 2 * i; j < 10000; j += i) composite[j] = true;
        }
        return v;
    }();
    return ps;
}

static bool miller_rabin_u64(unsigned long long n) {
    if (n < 2) return false;
    for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    unsigned long long d = n - 1;
    unsigned r = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++r;
    }
    auto mulm = [n](unsigned long long a, unsigned long long b) {
        return static_cast<unsigned long long>(static_cast<unsigned __int128>(a) * b % n);
    };
    for (unsigned a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        unsigned long long x = 1, base = a % n, e = d;
        while (e > 0) {
            if (e & 1) x = mulm(x, base);
            base = mulm(base, base);
            e >>= 1;
        }
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < r; ++i) {
            x = mulm(x, x);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::map<Int, unsigned> factor_integer(Int n) {
    if (n == 0) throw precondition_error("cannot factor zero");
    n = abs(n);
    std::map<Int, unsigned> out;
    if (n <= Int(std::numeric_limits<unsigned long long>::max())) {
        // machine-word fast path
        auto m = n.convert_to<unsigned long long>();
        for (unsigned p : small_primes()) {
            if (static_cast<unsigned long long>(p) * p > m) break;
            while (m % p == 0) {
                ++out[Int(p)];
                m /= p;
            }
        }
        if (m > 1) {
            if (miller_rabin_u64(m))
                ++out[Int(m)];
            else
                factor_rec(Int(m), out); // composite with both factors above the sieve
        }
        return out;
    }
    for (Int p = 2; p < 10000 && p * p <= n; ++p) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n > 1) factor_rec(n, out);
    return out;
}

} // namespace nilfourier
