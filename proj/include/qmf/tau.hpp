#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qmf/arithfun.hpp"
#include "qmf/error.hpp"
#include "qmf/modforms.hpp"
#include "qmf/numeric.hpp"
#include "qmf/report.hpp"

namespace qmf {

// One admissible solution of n = Delta*DeltaPrime + delta*deltaPrime in
// Manin's formula. Branch 1: Delta > delta > 0, DeltaPrime > deltaPrime > 0.
// Branch 2: deltaPrime = 0, Delta | n, 0 <= delta <= Delta/2; the boundary
// delta = Delta/2 enters the sum with weight 1/2.
struct ManinSolution {
    long long Delta = 0;
    long long DeltaPrime = 0;
    long long delta = 0;
    long long deltaPrime = 0;
    bool half_weight = false;

    Rat weight() const { return half_weight ? Rat(1, 2) : Rat(1); }
};

namespace detail {

// Enumerates admissible solutions in the order of the reference run:
// branch 1 ordered by (Delta asc, DeltaPrime asc, delta asc), then branch 2
// by (Delta over ascending divisors of n, delta ascending from 0).
template <typename Visitor>
void enumerate_manin(long long n, Visitor&& visit) {
    if (n < 1) raise(errc::invalid_parameter, "enumeration requires n >= 1");
    DivisorTable table(static_cast<std::size_t>(n));
    for (long long d1 = 1; d1 < n; ++d1) {
        for (long long d2 = 1; d1 * d2 < n; ++d2) {
            long long m = n - d1 * d2;
            for (long long d3 : table.divisors_of(static_cast<std::size_t>(m))) {
                if (d3 >= d1) break;
                long long d4 = m / d3;
                if (d4 < d2) visit(ManinSolution{d1, d2, d3, d4, false});
            }
        }
    }
    for (long long d1 : table.divisors_of(static_cast<std::size_t>(n))) {
        long long d2 = n / d1;
        for (long long d3 = 0; 2 * d3 <= d1; ++d3)
            visit(ManinSolution{d1, d2, d3, 0, 2 * d3 == d1});
    }
}

inline Int manin_summand(long long Delta, long long delta) {
    Int D2 = Int(Delta) * Delta;
    Int d2 = Int(delta) * delta;
    Int diff = D2 - d2;
    return D2 * d2 * diff * diff * diff;
}

}  // namespace detail

inline std::vector<ManinSolution> manin_enumerate(long long n) {
    std::vector<ManinSolution> out;
    detail::enumerate_manin(n, [&](const ManinSolution& s) { out.push_back(s); });
    return out;
}

// tau(n) = sigma_11(n) - (691/18) sum* weight * Delta^2 delta^2 (Delta^2-delta^2)^3.
// The doubled sum keeps the half weights integral; non-integrality of the
// final value signals an enumeration bug.
inline Int tau_manin(long long n) {
    Int doubled_sum = 0;
    detail::enumerate_manin(n, [&](const ManinSolution& s) {
        if (s.delta == 0) return;
        Int term = detail::manin_summand(s.Delta, s.delta);
        doubled_sum += s.half_weight ? term : 2 * term;
    });
    Int numerator = Int(691) * doubled_sum;
    if (numerator % 36 != 0)
        raise(errc::non_integral_result, "Manin sum for n=" + std::to_string(n) +
                                             " is not divisible by 18");
    return sigma(11, n) - numerator / 36;
}

// Per-solution agreement of the two printed forms of the Manin summand:
// (D^8 d^2 - D^2 d^8) - 3 (D^6 d^4 - D^4 d^6) == D^2 d^2 (D^2 - d^2)^3.
inline bool tau_manin_variant_check(long long n) {
    bool ok = true;
    detail::enumerate_manin(n, [&](const ManinSolution& s) {
        Int D(s.Delta), d(s.delta);
        Int D2 = D * D, d2 = d * d;
        Int lhs = (pow_int(D, 8) * d2 - D2 * pow_int(d, 8)) -
                  3 * (pow_int(D, 6) * pow_int(d, 4) - pow_int(D, 4) * pow_int(d, 6));
        if (lhs != detail::manin_summand(s.Delta, s.delta)) ok = false;
    });
    return ok;
}

// tau values memoized from the eta-product expansion; read-only after build.
class TauTable {
  public:
    explicit TauTable(std::size_t n_max) : values_(n_max + 1) {
        QSeries delta = delta_eta(n_max);
        for (std::size_t i = 1; i <= n_max; ++i) values_[i] = num(delta.coeff(i));
    }

    std::size_t n_max() const { return values_.size() - 1; }

    const Int& tau(std::size_t n) const {
        if (n < 1 || n > n_max()) raise(errc::range_exceeded, "tau(n) outside cached range");
        return values_[n];
    }

    // Hecke convolution identity tau(m) tau(n) = sum_{d | (m,n)} d^11 tau(mn/d^2);
    // it subsumes coprime multiplicativity and the prime-power recursion.
    bool hecke_check(long long m, long long n) const {
        if (m < 1 || n < 1) raise(errc::invalid_parameter, "hecke_check needs m, n >= 1");
        if (static_cast<std::size_t>(m) * n > n_max())
            raise(errc::range_exceeded, "hecke_check needs tau up to m*n");
        long long g = std::gcd(m, n);
        Int rhs = 0;
        for (long long d : divisors(g))
            rhs += pow_int(Int(d), 11) * tau(static_cast<std::size_t>(m / d) * (n / d));
        return tau(m) * tau(n) == rhs;
    }

    // |tau(p)| < 2 p^{11/2}, checked as the exact comparison tau(p)^2 < 4 p^11.
    bool deligne_check(long long p) const {
        if (!is_prime(p)) raise(errc::invalid_prime, "deligne_check requires a prime");
        if (static_cast<std::size_t>(p) > n_max())
            raise(errc::range_exceeded, "deligne_check outside cached range");
        const Int& t = tau(static_cast<std::size_t>(p));
        return t * t < 4 * pow_int(Int(p), 11);
    }

    // tau(n) == sigma_11(n) mod 691 for all n <= n_check.
    CongruenceReport ramanujan_congruence_check(std::size_t n_check) const {
        if (n_check > n_max()) raise(errc::range_exceeded, "check exceeds cached range");
        CongruenceReport rep;
        rep.check = "ramanujan-691";
        rep.modulus = "691";
        rep.pass = true;
        for (std::size_t n = 1; n <= n_check; ++n) {
            if ((tau(n) - sigma(11, static_cast<long long>(n))) % 691 != 0) {
                rep.pass = false;
                if (!rep.first_fail) rep.first_fail = n;
            }
        }
        return rep;
    }

    // First n with tau(n) = 0, if any.
    std::optional<std::size_t> first_vanishing(std::size_t n_check) const {
        if (n_check > n_max()) raise(errc::range_exceeded, "scan exceeds cached range");
        for (std::size_t n = 1; n <= n_check; ++n)
            if (values_[n] == 0) return n;
        return std::nullopt;
    }

  private:
    std::vector<Int> values_;
};

// One-shot coefficient of q^n in the eta-product expansion.
inline Int tau_eta(std::size_t n) {
    if (n < 1) raise(errc::invalid_parameter, "tau requires n >= 1");
    return num(delta_eta(n).coeff(n));
}

inline CongruenceReport ramanujan_congruence_check(std::size_t n_max) {
    return TauTable(n_max).ramanujan_congruence_check(n_max);
}

inline std::optional<std::size_t> lehmer_check(std::size_t n_max) {
    return TauTable(n_max).first_vanishing(n_max);
}

}  // namespace qmf
