#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmf/arithfun.hpp"
#include "qmf/error.hpp"
#include "qmf/numeric.hpp"
#include "qmf/qseries.hpp"
#include "qmf/report.hpp"

namespace qmf {

// Exact Bernoulli numbers B_0..B_max (convention x/(e^x-1), so B_1 = -1/2),
// by the binomial recurrence sum_{j<=m} C(m+1,j) B_j = 0. Computed once,
// then shared read-only.
class BernoulliTable {
  public:
    explicit BernoulliTable(std::size_t max_k) : values_(max_k + 1) {
        values_[0] = 1;
        std::vector<Int> binom(max_k + 2);  // row m+1 of Pascal's triangle
        binom[0] = 1;
        binom[1] = 1;
        for (std::size_t m = 1; m <= max_k; ++m) {
            for (std::size_t j = m + 2; j-- > 1;) binom[j] += binom[j - 1];
            if (m >= 3 && m % 2 == 1) continue;  // odd Bernoulli numbers vanish
            Rat acc;
            for (std::size_t j = 0; j < m; ++j) {
                if (values_[j] == 0) continue;
                acc += Rat(binom[j]) * values_[j];
            }
            values_[m] = -acc / Rat(m + 1);
        }
    }

    std::size_t max_k() const { return values_.size() - 1; }

    const Rat& at(std::size_t k) const {
        if (k >= values_.size()) raise(errc::range_exceeded, "Bernoulli table overflow");
        return values_[k];
    }

    const std::vector<Rat>& values() const { return values_; }

  private:
    std::vector<Rat> values_;
};

// Process-wide memoized access: the table is computed once per size step and
// shared read-only, growing geometrically when a larger index is requested.
inline Rat bernoulli_number(std::size_t k) {
    static std::mutex mu;
    static std::shared_ptr<const BernoulliTable> table;
    std::lock_guard<std::mutex> lock(mu);
    if (!table || table->max_k() < k)
        table = std::make_shared<const BernoulliTable>(std::max<std::size_t>(k, table ? 2 * table->max_k() : 64));
    return table->at(k);
}

// B_k(x) = sum C(k,i) B_i x^{k-i}, evaluated exactly.
inline Rat bernoulli_poly(const BernoulliTable& table, std::size_t k, const Rat& x) {
    if (table.max_k() < k) raise(errc::range_exceeded, "table too small for B_k(x)");
    Rat acc;
    Int binom = 1;
    std::vector<Rat> xpows(k + 1);
    xpows[0] = 1;
    for (std::size_t i = 1; i <= k; ++i) xpows[i] = xpows[i - 1] * x;
    for (std::size_t i = 0; i <= k; ++i) {
        if (table.at(i) != 0) acc += Rat(binom) * table.at(i) * xpows[k - i];
        binom = binom * Int(k - i) / Int(i + 1);
    }
    return acc;
}

inline Rat bernoulli_poly(std::size_t k, const Rat& x) {
    return bernoulli_poly(BernoulliTable(k), k, x);
}

// zeta(-k) = -B_{k+1}/(k+1) for k >= 1.
inline Rat zeta_neg(std::size_t k) {
    if (k < 1) raise(errc::invalid_parameter, "zeta_neg requires k >= 1");
    return -bernoulli_number(k + 1) / Rat(k + 1);
}

// h_k = sum_{n>=1} sigma_{k-1}(n) q^n built by the divisor double loop.
inline QSeries sigma_power_series(unsigned power, std::size_t terms) {
    std::vector<Rat> c(terms + 1);
    for (std::size_t d = 1; d <= terms; ++d) {
        Int dk = pow_int(Int(d), power);
        for (std::size_t m = d; m <= terms; m += d) c[m] += Rat(dk);
    }
    return QSeries(terms, std::move(c));
}

namespace detail {
inline void require_eisenstein_weight(long k) {
    if (k < 4 || k % 2 != 0)
        raise(errc::invalid_weight, "Eisenstein weight must be even and >= 4");
}
}  // namespace detail

// Normalized E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n.
inline QSeries eisenstein_E(long k, std::size_t terms) {
    detail::require_eisenstein_weight(k);
    Rat bk = bernoulli_number(static_cast<std::size_t>(k));
    Rat factor = -Rat(2 * k) / bk;
    return QSeries::one(terms) + factor * sigma_power_series(static_cast<unsigned>(k - 1), terms);
}

// G_k = zeta(1-k)/2 E_k = -B_k/2k + sum sigma_{k-1}(n) q^n, so a(1) = 1.
inline QSeries eisenstein_Gfrak(long k, std::size_t terms) {
    detail::require_eisenstein_weight(k);
    Rat bk = bernoulli_number(static_cast<std::size_t>(k));
    return QSeries::constant(-bk / Rat(2 * k), terms) +
           sigma_power_series(static_cast<unsigned>(k - 1), terms);
}

// p-stabilization G_k*(z) = G_k(z) - p^{k-1} G_k(pz); coefficients are the
// divisor sums restricted to divisors coprime to p.
inline QSeries eisenstein_Gstar(long k, long long p, std::size_t terms) {
    detail::require_eisenstein_weight(k);
    if (!is_odd_prime(p)) raise(errc::invalid_prime, "p must be an odd prime");
    QSeries g = eisenstein_Gfrak(k, terms);
    Rat pk1(pow_int(Int(p), static_cast<unsigned long>(k - 1)));
    return g - pk1 * substitute_q_power(g, static_cast<std::size_t>(p));
}

// Delta = q prod (1-q^m)^24 via the 8th power of Jacobi's cube series
// sum (-1)^j (2j+1) q^{j(j+1)/2}; the sparse base makes this the fast path.
inline QSeries delta_eta(std::size_t terms) {
    if (terms < 1) raise(errc::invalid_parameter, "delta needs terms >= 1");
    std::vector<Rat> c(terms);
    for (std::size_t j = 0; j * (j + 1) / 2 < terms; ++j)
        c[j * (j + 1) / 2] = (j % 2 == 0) ? Rat(2 * j + 1) : Rat(-Rat(2 * j + 1));
    QSeries cube(terms - 1, std::move(c));
    return times_q(pow(cube, 8));
}

// Same series by the literal 24th power of the Euler product.
inline QSeries delta_eta_product(std::size_t terms) {
    if (terms < 1) raise(errc::invalid_parameter, "delta needs terms >= 1");
    return times_q(pow(euler_product(terms - 1), 24));
}

// Delta = (E_4^3 - E_6^2)/1728.
inline QSeries delta_eisenstein(std::size_t terms) {
    if (terms < 1) raise(errc::invalid_parameter, "delta needs terms >= 1");
    QSeries e4 = eisenstein_E(4, terms);
    QSeries e6 = eisenstein_E(6, terms);
    return (pow(e4, 3) - pow(e6, 2)) / Rat(1728);
}

// q*j(z) = E_4^3 / (Delta/q): constant term 1, then 744, 196884, ...
inline QSeries j_invariant_times_q(std::size_t terms) {
    if (terms < 1) raise(errc::invalid_parameter, "j expansion needs terms >= 1");
    QSeries delta_over_q = div_q(delta_eta(terms + 1));
    return pow(eisenstein_E(4, terms), 3) * inverse(delta_over_q);
}

// dim M_k and dim S_k for the full modular group.
inline long dim_Mk(long k) {
    if (k < 0 || k % 2 != 0) return 0;
    long q = k / 12;
    return (k % 12 == 2) ? q : q + 1;
}

inline long dim_Sk(long k) {
    if (k < 0 || k % 2 != 0) return 0;
    long q = k / 12;
    if (k % 12 == 2) return std::max(0L, q - 1);
    return q;
}

// All (alpha, beta) with 4*alpha + 6*beta = k; these index the monomial
// basis E_4^alpha E_6^beta of M_k.
inline std::vector<std::pair<long, long>> monomial_basis(long k) {
    std::vector<std::pair<long, long>> basis;
    if (k < 0 || k % 2 != 0) return basis;
    for (long beta = 0; 6 * beta <= k; ++beta) {
        long rem = k - 6 * beta;
        if (rem % 4 == 0) basis.emplace_back(rem / 4, beta);
    }
    return basis;
}

// (Delta - sum sigma_11(n) q^n) / 691; integrality of every coefficient is
// the Ramanujan congruence and is enforced here.
inline QSeries ramanujan_quotient_series(std::size_t terms) {
    QSeries diff = delta_eta(terms) - sigma_power_series(11, terms);
    std::vector<Rat> c(terms + 1);
    for (std::size_t i = 0; i <= terms; ++i) {
        Rat q = diff.coeff(i) / Rat(691);
        if (!is_integer(q))
            raise(errc::non_integral_quotient,
                  "coefficient of q^" + std::to_string(i) + " not divisible by 691");
        c[i] = q;
    }
    return QSeries(terms, std::move(c));
}

// Congruences between p-stabilized Eisenstein series (two variants):
//   (a)            G_k* == G_k2*   mod p^N   (needs k not = 0 mod p-1)
//   (b) (1-c^k) G_k* == (1-c^k2) G_k2* mod p^N  (any k, c coprime to p, c > 1)
// Hypothesis in both: k == k2 mod (p-1)p^{N-1}. Checked coefficientwise with
// exact rationals; constant terms with p in the denominator (variant (a)
// misused at k = 0 mod p-1) surface as DenominatorNotPUnit.
inline CongruenceReport check_eisenstein_congruence(long long p, long k, long k2, int N,
                                                    std::size_t terms,
                                                    std::optional<long long> c = std::nullopt) {
    if (!is_odd_prime(p)) raise(errc::invalid_prime, "p must be an odd prime");
    if (N < 1) raise(errc::invalid_parameter, "N must be >= 1");
    Int step = Int(p - 1) * pow_int(Int(p), static_cast<unsigned long>(N - 1));
    if ((Int(k) - Int(k2)) % step != 0)
        raise(errc::precondition_violated, "k and k2 must agree mod (p-1)p^(N-1)");
    if (c) {
        if (*c <= 1 || *c % p == 0)
            raise(errc::invalid_parameter, "c must be > 1 and coprime to p");
    }

    QSeries a = eisenstein_Gstar(k, p, terms);
    QSeries b = eisenstein_Gstar(k2, p, terms);
    if (c) {
        Rat ck(Rat(1) - Rat(pow_int(Int(*c), static_cast<unsigned long>(k))));
        Rat ck2(Rat(1) - Rat(pow_int(Int(*c), static_cast<unsigned long>(k2))));
        a = ck * a;
        b = ck2 * b;
    }
    Int ip(p);
    for (const QSeries* s : {&a, &b}) {
        const Rat& c0 = s->coeff(0);
        if (c0 != 0 && den(c0) % ip == 0)
            raise(errc::denominator_not_p_unit,
                  "constant term has p in its denominator; variant (a) needs k != 0 mod p-1");
    }
    QSeries diff = a - b;

    CongruenceReport rep;
    rep.check = "eisenstein-congruence";
    rep.modulus = std::to_string(p) + "^" + std::to_string(N);
    rep.pass = true;
    for (std::size_t i = 0; i <= terms; ++i)
        rep.record_valuation(i, valuation_rat(diff.coeff(i), ip), N);
    if (rep.first_fail) rep.pass = false;
    return rep;
}

}  // namespace qmf
