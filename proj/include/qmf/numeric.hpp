#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmf/error.hpp"

namespace qmf {

// Exact arithmetic carriers. Rat is kept canonical by the backend:
// lowest terms, positive denominator.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return den(r) == 1; }

inline Int pow_int(const Int& base, unsigned long e) {
    Int acc = 1;
    Int b = base;
    while (e != 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

inline Rat pow_rat(const Rat& base, long e) {
    if (e >= 0) {
        Rat r(pow_int(num(base), static_cast<unsigned long>(e)),
              pow_int(den(base), static_cast<unsigned long>(e)));
        return r;
    }
    if (base == 0) raise(errc::zero_parameter, "0 cannot be raised to a negative power");
    return Rat(pow_int(den(base), static_cast<unsigned long>(-e)),
               pow_int(num(base), static_cast<unsigned long>(-e)));
}

// Representative in [0, m).
inline Int mod_floor(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

// Inverse of a modulo m via extended Euclid; a need not be reduced.
inline Int mod_inverse(const Int& a, const Int& m) {
    Int r0 = m, r1 = mod_floor(a, m);
    Int s0 = 0, s1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        Int s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0 != 1) raise(errc::non_unit, "element not invertible modulo " + m.str());
    return mod_floor(s0, m);
}

inline Int mod_pow(Int base, Int e, const Int& m) {
    Int acc = 1;
    base = mod_floor(base, m);
    while (e > 0) {
        if ((e & 1) != 0) acc = acc * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return acc;
}

// v_p of a nonzero integer.
inline long valuation_int(Int a, const Int& p) {
    if (a == 0) raise(errc::invalid_parameter, "valuation of zero is infinite");
    long v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

// v_p of a nonzero rational; nullopt encodes the infinite valuation of 0.
inline std::optional<long> valuation_rat(const Rat& r, const Int& p) {
    if (r == 0) return std::nullopt;
    return valuation_int(num(r), p) - valuation_int(den(r), p);
}

inline bool is_p_integral(const Rat& r, const Int& p) { return r == 0 || den(r) % p != 0; }

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline bool is_odd_prime(long long n) { return n > 2 && is_prime(n); }

// Parses "num" or "num/den" with optional sign; used by the CLI and tests.
inline Rat parse_rational(const std::string& s) {
    auto bad = [&] { raise(errc::invalid_parameter, "malformed rational '" + s + "'"); };
    auto slash = s.find('/');
    auto check_int = [&](const std::string& part) {
        if (part.empty()) bad();
        std::size_t i = (part[0] == '+' || part[0] == '-') ? 1 : 0;
        if (i == part.size()) bad();
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') bad();
    };
    if (slash == std::string::npos) {
        check_int(s);
        return Rat(Int(s));
    }
    std::string n = s.substr(0, slash), d = s.substr(slash + 1);
    check_int(n);
    check_int(d);
    Int di(d);
    if (di == 0) bad();
    return Rat(Int(n), di);
}

inline std::string rational_to_string(const Rat& r) {
    if (is_integer(r)) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

}  // namespace qmf
