#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <utility>
#include <vector>

#include "qmf/error.hpp"
#include "qmf/numeric.hpp"

namespace qmf {

// Truncated formal power series in q over exact rationals, known modulo
// q^{trunc+1}. Immutable value type: every operation returns a new series,
// and mixed-truncation arithmetic truncates to the shorter operand.
class QSeries {
  public:
    explicit QSeries(std::size_t trunc) : coeffs_(trunc + 1) {}

    QSeries(std::size_t trunc, std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
        coeffs_.resize(trunc + 1);
    }

    static QSeries constant(const Rat& c, std::size_t trunc) {
        QSeries s(trunc);
        s.coeffs_[0] = c;
        return s;
    }

    static QSeries one(std::size_t trunc) { return constant(1, trunc); }

    // c * q^e, truncated.
    static QSeries monomial(const Rat& c, std::size_t e, std::size_t trunc) {
        QSeries s(trunc);
        if (e <= trunc) s.coeffs_[e] = c;
        return s;
    }

    std::size_t trunc() const { return coeffs_.size() - 1; }

    const Rat& coeff(std::size_t i) const {
        if (i >= coeffs_.size()) raise(errc::range_exceeded, "coefficient index beyond truncation");
        return coeffs_[i];
    }

    const std::vector<Rat>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& c) { return c == 0; });
    }

    QSeries truncated(std::size_t new_trunc) const {
        if (new_trunc >= trunc()) return *this;
        return QSeries(new_trunc, std::vector<Rat>(coeffs_.begin(), coeffs_.begin() + new_trunc + 1));
    }

    friend QSeries operator+(const QSeries& a, const QSeries& b) {
        std::size_t n = std::min(a.trunc(), b.trunc());
        QSeries r(n);
        for (std::size_t i = 0; i <= n; ++i) r.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
        return r;
    }

    friend QSeries operator-(const QSeries& a, const QSeries& b) {
        std::size_t n = std::min(a.trunc(), b.trunc());
        QSeries r(n);
        for (std::size_t i = 0; i <= n; ++i) r.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
        return r;
    }

    QSeries operator-() const {
        QSeries r(trunc());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = -coeffs_[i];
        return r;
    }

    // Cauchy product. Zero rows are skipped; with exact coefficients this is
    // bit-identical to the schoolbook loop.
    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        std::size_t n = std::min(a.trunc(), b.trunc());
        QSeries r(n);
        for (std::size_t i = 0; i <= n; ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; i + j <= n; ++j) {
                if (b.coeffs_[j] == 0) continue;
                r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return r;
    }

    friend QSeries operator*(const QSeries& a, const Rat& c) {
        QSeries r(a.trunc());
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r.coeffs_[i] = a.coeffs_[i] * c;
        return r;
    }

    friend QSeries operator*(const Rat& c, const QSeries& a) { return a * c; }

    friend QSeries operator/(const QSeries& a, const Rat& c) {
        if (c == 0) raise(errc::zero_parameter, "division of a series by zero");
        QSeries r(a.trunc());
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r.coeffs_[i] = a.coeffs_[i] / c;
        return r;
    }

    friend bool operator==(const QSeries& a, const QSeries& b) {
        return a.coeffs_ == b.coeffs_;
    }

    friend std::ostream& operator<<(std::ostream& os, const QSeries& s);

  private:
    std::vector<Rat> coeffs_;
};

// Multiplicative inverse: requires a unit constant term.
inline QSeries inverse(const QSeries& a) {
    if (a.coeff(0) == 0)
        raise(errc::zero_constant_term, "series with zero constant term has no inverse");
    std::size_t n = a.trunc();
    std::vector<Rat> b(n + 1);
    b[0] = Rat(1) / a.coeff(0);
    for (std::size_t k = 1; k <= n; ++k) {
        Rat acc;
        for (std::size_t i = 1; i <= k; ++i) {
            if (a.coeff(i) == 0) continue;
            acc += a.coeff(i) * b[k - i];
        }
        b[k] = -acc / a.coeff(0);
    }
    return QSeries(n, std::move(b));
}

// a^e by binary exponentiation; negative e inverts first.
inline QSeries pow(const QSeries& a, long e) {
    if (e < 0) {
        if (a.coeff(0) == 0)
            raise(errc::zero_constant_term, "negative power of a series with zero constant term");
        return pow(inverse(a), -e);
    }
    QSeries acc = QSeries::one(a.trunc());
    QSeries base = a;
    unsigned long u = static_cast<unsigned long>(e);
    while (u != 0) {
        if (u & 1) acc = acc * base;
        u >>= 1;
        if (u != 0) base = base * base;
    }
    return acc;
}

// b with b^n = a and b_0 = 1, by the coefficient recursion obtained from
// n·a·b' = a'·b. Requires constant term exactly 1.
inline QSeries nth_root(const QSeries& a, unsigned n) {
    if (n == 0) raise(errc::invalid_parameter, "0th root is undefined");
    if (a.coeff(0) != 1)
        raise(errc::non_unit_constant_term, "nth_root requires constant term 1");
    std::size_t t = a.trunc();
    std::vector<Rat> b(t + 1);
    b[0] = 1;
    for (std::size_t k = 1; k <= t; ++k) {
        Rat acc;
        for (std::size_t i = 1; i <= k; ++i) {
            if (a.coeff(i) == 0) continue;
            acc += Rat(i) * a.coeff(i) * b[k - i];
        }
        for (std::size_t j = 1; j < k; ++j) {
            if (a.coeff(j) == 0) continue;
            acc -= Rat(n) * Rat(k - j) * b[k - j] * a.coeff(j);
        }
        // The recursion collects n·k·b_k on the left; everything else moved right.
        b[k] = acc / (Rat(n) * Rat(k));
    }
    return QSeries(t, std::move(b));
}

// q ↦ q^m substitution; truncation preserved.
inline QSeries substitute_q_power(const QSeries& a, std::size_t m) {
    if (m == 0) raise(errc::invalid_parameter, "substitution exponent must be positive");
    std::size_t t = a.trunc();
    QSeries r(t);
    std::vector<Rat> c(t + 1);
    for (std::size_t i = 0; i * m <= t; ++i) c[i * m] = a.coeff(i);
    return QSeries(t, std::move(c));
}

// Exact shift by one power of q: trunc grows by one, no information lost.
inline QSeries times_q(const QSeries& a) {
    std::vector<Rat> c(a.trunc() + 2);
    for (std::size_t i = 0; i <= a.trunc(); ++i) c[i + 1] = a.coeff(i);
    return QSeries(a.trunc() + 1, std::move(c));
}

// Inverse shift; requires a vanishing constant term.
inline QSeries div_q(const QSeries& a) {
    if (a.coeff(0) != 0) raise(errc::non_integral_quotient, "div_q needs a zero constant term");
    if (a.trunc() == 0) raise(errc::range_exceeded, "div_q on a constant");
    std::vector<Rat> c(a.trunc());
    for (std::size_t i = 1; i <= a.trunc(); ++i) c[i - 1] = a.coeff(i);
    return QSeries(a.trunc() - 1, std::move(c));
}

inline std::ostream& operator<<(std::ostream& os, const QSeries& s) {
    bool first = true;
    for (std::size_t i = 0; i <= s.trunc(); ++i) {
        const Rat& c = s.coeffs_[i];
        if (c == 0) continue;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        Rat abs_c = c < 0 ? Rat(-c) : c;
        if (i == 0) {
            os << rational_to_string(abs_c);
        } else {
            if (abs_c != 1) os << rational_to_string(abs_c) << "*";
            os << "q";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    os << " + O(q^" << s.trunc() + 1 << ")";
    return os;
}

}  // namespace qmf
