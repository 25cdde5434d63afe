#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "qmf/error.hpp"
#include "qmf/numeric.hpp"
#include "qmf/qseries.hpp"
#include "qmf/report.hpp"

namespace qmf {

// Trial-division factorization; desk scale, nothing faster needed.
inline std::vector<std::pair<long long, int>> factorize(long long n) {
    if (n < 1) raise(errc::invalid_parameter, "factorize requires n >= 1");
    std::vector<std::pair<long long, int>> f;
    for (long long d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        f.emplace_back(d, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

inline std::vector<long long> divisors(long long n) {
    std::vector<long long> ds{1};
    for (const auto& [p, e] : factorize(n)) {
        std::size_t m = ds.size();
        long long pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < m; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

// Sieved divisor lists for 1..limit, built once and shared read-only.
class DivisorTable {
  public:
    explicit DivisorTable(std::size_t limit) : lists_(limit + 1) {
        for (std::size_t d = 1; d <= limit; ++d)
            for (std::size_t m = d; m <= limit; m += d) lists_[m].push_back(static_cast<long long>(d));
    }

    const std::vector<long long>& divisors_of(std::size_t n) const {
        if (n == 0 || n >= lists_.size()) raise(errc::range_exceeded, "divisor table overflow");
        return lists_[n];
    }

    std::size_t limit() const { return lists_.size() - 1; }

  private:
    std::vector<std::vector<long long>> lists_;
};

// sigma(k, n) = sum of d^k over divisors d of n, via the factorization.
inline Int sigma(unsigned k, long long n) {
    Int acc = 1;
    for (const auto& [p, e] : factorize(n)) {
        // 1 + p^k + ... + p^{ek}
        Int pk = pow_int(Int(p), k);
        Int geom = 1, term = 1;
        for (int i = 0; i < e; ++i) {
            term *= pk;
            geom += term;
        }
        acc *= geom;
    }
    return acc;
}

// Divisor-power sum restricted to divisors coprime to p: strip p from n.
inline Int sigma_star(unsigned k, long long n, long long p) {
    if (!is_prime(p)) raise(errc::invalid_prime, "sigma_star requires p prime");
    while (n % p == 0) n /= p;
    return sigma(k, n);
}

// Euler product side of the partition generating function: prod (1-q^m).
inline QSeries euler_product(std::size_t terms) {
    QSeries acc = QSeries::one(terms);
    for (std::size_t m = 1; m <= terms; ++m) {
        // multiply by the binomial 1 - q^m in place of a full series product
        std::vector<Rat> c(acc.coeffs());
        for (std::size_t i = terms + 1; i-- > m;) c[i] -= acc.coeff(i - m);
        acc = QSeries(terms, std::move(c));
    }
    return acc;
}

// Partition numbers p(0..n_max) by the pentagonal-number recurrence.
// Independent of the series route and used as its oracle.
inline std::vector<Int> partition_counts(std::size_t n_max) {
    std::vector<Int> p(n_max + 1);
    p[0] = 1;
    for (std::size_t n = 1; n <= n_max; ++n) {
        Int acc = 0;
        for (std::size_t k = 1;; ++k) {
            std::size_t g1 = k * (3 * k - 1) / 2;
            std::size_t g2 = k * (3 * k + 1) / 2;
            if (g1 > n && g2 > n) break;
            Int term = 0;
            if (g1 <= n) term += p[n - g1];
            if (g2 <= n) term += p[n - g2];
            if (k % 2 == 1)
                acc += term;
            else
                acc -= term;
        }
        p[n] = acc;
    }
    return p;
}

inline Int partition_count(std::size_t n) { return partition_counts(n).back(); }

// Generating series of p(n) via inversion of the Euler product.
inline QSeries partition_series(std::size_t terms) { return inverse(euler_product(terms)); }

// First-term Hardy-Ramanujan asymptotic with lambda(n) = sqrt(n - 1/24).
inline double hardy_ramanujan_estimate(std::size_t n) {
    if (n < 1) raise(errc::invalid_parameter, "estimate needs n >= 1");
    double lambda = std::sqrt(static_cast<double>(n) - 1.0 / 24.0);
    double k = M_PI * std::sqrt(2.0 / 3.0);
    return std::exp(k * lambda) / (4.0 * std::sqrt(3.0) * lambda * lambda);
}

// theta(z) = 1 + 2 sum q^{n^2}, truncated.
inline QSeries theta_series(std::size_t terms) {
    QSeries s(terms);
    std::vector<Rat> c(terms + 1);
    c[0] = 1;
    for (std::size_t n = 1; n * n <= terms; ++n) c[n * n] = 2;
    return QSeries(terms, std::move(c));
}

inline QSeries theta_power(unsigned k, std::size_t terms) {
    return pow(theta_series(terms), static_cast<long>(k));
}

// r_k(n): representations of n as an ordered sum of k squares, read off theta^k.
inline Int rk_count(unsigned k, std::size_t n, std::size_t terms) {
    if (n > terms) raise(errc::range_exceeded, "rk_count requires n <= terms");
    Rat c = theta_power(k, terms).coeff(n);
    return num(c);
}

// Jacobi's closed form for r_4.
inline Int r4_jacobi(long long n) {
    if (n < 1) raise(errc::invalid_parameter, "r4_jacobi requires n >= 1");
    if (n % 2 == 1) return 8 * sigma(1, n);
    Int odd_sum = 0;
    for (long long d : divisors(n))
        if (d % 2 == 1) odd_sum += d;
    return 24 * odd_sum;
}

// Gauss: n is a sum of three squares iff it is not of the form 4^k(8l-1).
inline bool three_squares_representable(long long n) {
    if (n < 1) raise(errc::invalid_parameter, "requires n >= 1");
    while (n % 4 == 0) n /= 4;
    return n % 8 != 7;
}

// prod(1-q^{2m}) / prod(1-q^{2m-1}) == sum q^{n(n+1)/2}, checked exactly.
// The report records the exponents surviving on the left-hand side.
inline CongruenceReport verify_gauss_identity(std::size_t terms) {
    CongruenceReport rep;
    rep.check = "gauss-identity";
    QSeries even = QSeries::one(terms);
    QSeries odd = QSeries::one(terms);
    for (std::size_t m = 1; 2 * m - 1 <= terms; ++m) {
        if (2 * m <= terms) even = even * (QSeries::one(terms) - QSeries::monomial(1, 2 * m, terms));
        odd = odd * (QSeries::one(terms) - QSeries::monomial(1, 2 * m - 1, terms));
    }
    QSeries lhs = even * inverse(odd);
    QSeries rhs(terms);
    {
        std::vector<Rat> c(terms + 1);
        for (std::size_t n = 0; n * (n + 1) / 2 <= terms; ++n) c[n * (n + 1) / 2] = 1;
        rhs = QSeries(terms, std::move(c));
    }
    rep.pass = true;
    for (std::size_t i = 0; i <= terms; ++i) {
        if (lhs.coeff(i) != 0) rep.exponents.push_back(i);
        if (lhs.coeff(i) != rhs.coeff(i)) {
            rep.pass = false;
            if (!rep.first_fail) rep.first_fail = i;
        }
    }
    rep.note = rep.pass ? "difference identically zero" : "sides differ";
    return rep;
}

// Jacobi triple product at a rational parameter u != 0:
// sum_{n in Z} u^n q^{n^2}  ==  prod (1-q^{2m+2})(1+u q^{2m+1})(1+u^{-1} q^{2m+1}).
inline CongruenceReport verify_jacobi_triple(const Rat& u, std::size_t terms) {
    if (u == 0) raise(errc::zero_parameter, "jacobi triple product requires u != 0");
    CongruenceReport rep;
    rep.check = "jacobi-triple";
    std::vector<Rat> c(terms + 1);
    c[0] = 1;
    Rat u_inv = Rat(1) / u;
    for (std::size_t n = 1; n * n <= terms; ++n)
        c[n * n] = pow_rat(u, static_cast<long>(n)) + pow_rat(u_inv, static_cast<long>(n));
    QSeries lhs(terms, std::move(c));

    QSeries rhs = QSeries::one(terms);
    for (std::size_t m = 0; 2 * m + 1 <= terms; ++m) {
        if (2 * m + 2 <= terms)
            rhs = rhs * (QSeries::one(terms) - QSeries::monomial(1, 2 * m + 2, terms));
        rhs = rhs * (QSeries::one(terms) + QSeries::monomial(u, 2 * m + 1, terms));
        rhs = rhs * (QSeries::one(terms) + QSeries::monomial(u_inv, 2 * m + 1, terms));
    }
    rep.pass = true;
    for (std::size_t i = 0; i <= terms; ++i) {
        if (lhs.coeff(i) != rhs.coeff(i)) {
            rep.pass = false;
            if (!rep.first_fail) rep.first_fail = i;
        }
    }
    return rep;
}

// Cauchy identity at specialized rational parameters (a, t), t != 1:
//   sum_{n>=0} t^n (a;q)_n / (q;q)_n  ==  prod (1-atq^m) / prod (1-tq^m).
// For n > terms the summand stabilizes mod q^{terms+1}, so the tail is the
// exact geometric factor t^{terms+1}/(1-t) times the stabilized series.
inline CongruenceReport verify_cauchy(const Rat& a, const Rat& t, std::size_t terms) {
    if (t == 1) raise(errc::invalid_parameter, "cauchy check needs t != 1");
    CongruenceReport rep;
    rep.check = "cauchy";

    QSeries ratio = QSeries::one(terms);  // (a;q)_n / (q;q)_n
    QSeries lhs = QSeries::one(terms);    // n = 0 term
    Rat tn = 1;
    for (std::size_t n = 1; n <= terms + 1; ++n) {
        ratio = ratio * (QSeries::one(terms) - QSeries::monomial(a, n - 1, terms));
        ratio = ratio * inverse(QSeries::one(terms) - QSeries::monomial(1, n, terms));
        tn *= t;
        if (n <= terms) lhs = lhs + tn * ratio;
    }
    // ratio now holds the stabilized value (a;q)_{terms+1} / (q;q)_{terms+1}
    lhs = lhs + (tn / (1 - t)) * ratio;

    QSeries rhs = QSeries::one(terms);
    for (std::size_t m = 0; m <= terms; ++m) {
        rhs = rhs * (QSeries::one(terms) - QSeries::monomial(a * t, m, terms));
        rhs = rhs * inverse(QSeries::one(terms) - QSeries::monomial(t, m, terms));
    }
    rep.pass = true;
    for (std::size_t i = 0; i <= terms; ++i) {
        if (lhs.coeff(i) != rhs.coeff(i)) {
            rep.pass = false;
            if (!rep.first_fail) rep.first_fail = i;
        }
    }
    return rep;
}

}  // namespace qmf
