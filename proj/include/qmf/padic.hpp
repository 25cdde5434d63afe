#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qmf/error.hpp"
#include "qmf/modforms.hpp"
#include "qmf/numeric.hpp"
#include "qmf/report.hpp"

namespace qmf {

// Fixed-precision p-adic integer: a residue mod p^N that carries its context
// (p, N). Mixing contexts is a hard error, never a silent coercion.
class PadicInt {
  public:
    PadicInt(long long p, int precision, Int residue)
        : p_(p), precision_(precision), modulus_(pow_int(Int(p), check(p, precision))),
          residue_(mod_floor(std::move(residue), modulus_)) {}

    long long p() const { return p_; }
    int precision() const { return precision_; }
    const Int& modulus() const { return modulus_; }
    const Int& residue() const { return residue_; }

    bool is_zero() const { return residue_ == 0; }

    // Largest v <= N with p^v | residue; v = N encodes "zero at this precision".
    int valuation() const {
        if (residue_ == 0) return precision_;
        Int r = residue_;
        int v = 0;
        while (r % p_ == 0) {
            r /= p_;
            ++v;
        }
        return v;
    }

    bool is_unit() const { return residue_ % p_ != 0; }

    friend PadicInt operator+(const PadicInt& a, const PadicInt& b) {
        a.require_same_context(b);
        return PadicInt(a.p_, a.precision_, a.residue_ + b.residue_);
    }

    friend PadicInt operator-(const PadicInt& a, const PadicInt& b) {
        a.require_same_context(b);
        return PadicInt(a.p_, a.precision_, a.residue_ - b.residue_);
    }

    friend PadicInt operator*(const PadicInt& a, const PadicInt& b) {
        a.require_same_context(b);
        return PadicInt(a.p_, a.precision_, a.residue_ * b.residue_);
    }

    PadicInt inverse() const {
        if (!is_unit()) raise(errc::non_unit, "p-adic inverse of a non-unit");
        return PadicInt(p_, precision_, mod_inverse(residue_, modulus_));
    }

    friend bool operator==(const PadicInt& a, const PadicInt& b) {
        a.require_same_context(b);
        return a.residue_ == b.residue_;
    }

  private:
    static unsigned long check(long long p, int precision) {
        if (!is_odd_prime(p)) raise(errc::invalid_prime, "p must be an odd prime");
        if (precision < 1) raise(errc::invalid_parameter, "precision must be >= 1");
        return static_cast<unsigned long>(precision);
    }

    void require_same_context(const PadicInt& other) const {
        if (p_ != other.p_ || precision_ != other.precision_)
            raise(errc::mixed_context, "operands carry different (p, N) contexts");
    }

    long long p_;
    int precision_;
    Int modulus_;
    Int residue_;
};

// num/den reduced into Z/p^N; requires the rational to be p-integral.
inline PadicInt padic_from_rational(const Int& numerator, const Int& denominator, long long p,
                                    int precision) {
    if (denominator == 0) raise(errc::invalid_parameter, "zero denominator");
    Rat r(numerator, denominator);
    if (!is_p_integral(r, Int(p)))
        raise(errc::denominator_divisible_by_p,
              "rational " + rational_to_string(r) + " is not " + std::to_string(p) + "-integral");
    Int modulus = pow_int(Int(p), static_cast<unsigned long>(precision));
    Int inv = mod_inverse(den(r), modulus);
    return PadicInt(p, precision, mod_floor(num(r), modulus) * inv);
}

inline PadicInt padic_from_rational(const Rat& r, long long p, int precision) {
    return padic_from_rational(num(r), den(r), p, precision);
}

// S_k(M) = sum_{n=1}^{M-1} n^k, computed by direct summation and by the
// Bernoulli closed form; the routes must agree. The closed form
// (B_{k+1}(M) - B_{k+1})/(k+1) sums from n = 0, which only matters at k = 0.
inline Int power_sum(unsigned k, const Int& M) {
    if (M < 1) raise(errc::invalid_parameter, "power_sum requires M >= 1");
    Int direct = 0;
    for (Int n = 1; n < M; ++n) direct += pow_int(n, k);
    BernoulliTable table(k + 1);
    Rat closed = (bernoulli_poly(table, k + 1, Rat(M)) - table.at(k + 1)) / Rat(k + 1);
    if (closed != Rat(direct + (k == 0 ? 1 : 0)))
        raise(errc::non_integral_result, "power-sum routes disagree (internal bug)");
    return direct;
}

// S_k^*(p^N) = S_k(p^N) - p^k S_k(p^{N-1}): the sum restricted to p-units.
inline Int power_sum_star(unsigned k, long long p, int N) {
    if (!is_odd_prime(p)) raise(errc::invalid_prime, "p must be an odd prime");
    if (N < 1) raise(errc::invalid_parameter, "N must be >= 1");
    Int pn = pow_int(Int(p), static_cast<unsigned long>(N));
    Int pn1 = pow_int(Int(p), static_cast<unsigned long>(N - 1));
    return power_sum(k, pn) - pow_int(Int(p), k) * power_sum(k, pn1);
}

// Verifies the p-adic limit B_k = lim S_k(p^N)/p^N: the valuation of
// S_k(p^N)/p^N - B_k must reach at least N - offset for every N <= N_max.
// Requires B_k p-integral, which excludes k = 0 and (p-1) | k.
inline CongruenceReport bernoulli_padic_limit_check(unsigned k, long long p, int N_max,
                                                    int offset = 1) {
    if (!is_odd_prime(p)) raise(errc::invalid_prime, "p must be an odd prime");
    if (N_max < 1) raise(errc::invalid_parameter, "N_max must be >= 1");
    Rat bk = bernoulli_number(k);
    if (k == 0 || !is_p_integral(bk, Int(p)))
        raise(errc::non_p_integral, "B_k is not p-integral for this (k, p)");
    CongruenceReport rep;
    rep.check = "bernoulli-padic-limit";
    rep.modulus = std::to_string(p) + "^N";
    rep.pass = true;
    for (int N = 1; N <= N_max; ++N) {
        Int pn = pow_int(Int(p), static_cast<unsigned long>(N));
        Rat diff = Rat(power_sum(k, pn), pn) - bk;
        rep.record_valuation(static_cast<std::size_t>(N), valuation_rat(diff, Int(p)), N - offset);
    }
    if (rep.first_fail) rep.pass = false;
    return rep;
}

// Regularized zeta value zeta_(p)^(c)(-k) = (1-c^{k+1})(1-p^k) zeta(-k);
// p-integral for every k >= 0 (the c-factor absorbs von Staudt denominators).
inline Rat zeta_reg(long long c, long long p, unsigned k) {
    if (!is_odd_prime(p)) raise(errc::invalid_prime, "p must be an odd prime");
    if (c <= 1 || c % p == 0) raise(errc::invalid_parameter, "c must be > 1 and coprime to p");
    // zeta(0) = -1/2; zeta(-k) = -B_{k+1}/(k+1) uniformly covers it via B_1.
    Rat zeta_minus_k = -bernoulli_number(k + 1) / Rat(k + 1);
    Rat value = (Rat(1) - Rat(pow_int(Int(c), k + 1))) *
                (Rat(1) - Rat(pow_int(Int(p), k))) * zeta_minus_k;
    if (!is_p_integral(value, Int(p)))
        raise(errc::non_p_integral, "regularized value unexpectedly non-integral (internal bug)");
    return value;
}

// Integer polynomial h(x) = sum alpha_i x^i with trailing zeros trimmed.
class IntPolynomial {
  public:
    IntPolynomial() = default;

    explicit IntPolynomial(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static IntPolynomial monomial(const Int& alpha, std::size_t degree) {
        std::vector<Int> c(degree + 1);
        c[degree] = alpha;
        return IntPolynomial(std::move(c));
    }

    // Accepts e.g. "x^2-x^22", "3*x^5 + x - 7".
    static IntPolynomial parse(const std::string& text);

    const std::vector<Int>& coeffs() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }

    std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

    Int operator()(const Int& x) const {
        Int acc = 0;
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    // Sparse evaluation: high-degree inputs here are typically x^k - x^k',
    // so per-term powmod beats dense Horner.
    Int eval_mod(const Int& x, const Int& m) const {
        Int acc = 0;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0) continue;
            acc = mod_floor(acc + coeffs_[i] * mod_pow(x, Int(i), m), m);
        }
        return acc;
    }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<Int> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i < a.coeffs_.size()) c[i] += a.coeffs_[i];
            if (i < b.coeffs_.size()) c[i] += b.coeffs_[i];
        }
        return IntPolynomial(std::move(c));
    }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            if (coeffs_[i] == 0) continue;
            Int a = coeffs_[i];
            if (out.empty()) {
                if (a < 0) out += "-";
            } else {
                out += a < 0 ? " - " : " + ";
            }
            Int mag = a < 0 ? Int(-a) : a;
            if (i == 0 || mag != 1) out += mag.str();
            if (i > 0) {
                if (mag != 1) out += "*";
                out += "x";
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out.empty() ? "0" : out;
    }

  private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Int> coeffs_;
};

inline IntPolynomial IntPolynomial::parse(const std::string& text) {
    std::vector<Int> coeffs;
    auto bad = [&] { raise(errc::invalid_parameter, "malformed polynomial '" + text + "'"); };
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && text[i] == ' ') ++i;
    };
    skip_ws();
    if (i == text.size()) return IntPolynomial();
    bool first = true;
    while (i < text.size()) {
        int sign = 1;
        skip_ws();
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            bad();
        }
        first = false;
        skip_ws();
        std::string digits;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') digits += text[i++];
        skip_ws();
        if (i < text.size() && text[i] == '*') {
            if (digits.empty()) bad();
            ++i;
            skip_ws();
        }
        bool has_x = i < text.size() && text[i] == 'x';
        if (!has_x && digits.empty()) bad();
        Int coeff = digits.empty() ? Int(1) : Int(digits);
        std::size_t deg = 0;
        if (has_x) {
            ++i;
            deg = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                std::string exp_digits;
                while (i < text.size() && text[i] >= '0' && text[i] <= '9') exp_digits += text[i++];
                if (exp_digits.empty()) bad();
                deg = std::stoull(exp_digits);
            }
        }
        if (coeffs.size() <= deg) coeffs.resize(deg + 1);
        coeffs[deg] += sign * coeff;
        skip_ws();
    }
    return IntPolynomial(std::move(coeffs));
}

// Kummer congruence checker. Hypothesis: h(a) == 0 mod p^N for every unit
// residue a mod p^N. Conclusion: sum alpha_i zeta_(p)^(c)(-i) == 0 mod p^N.
// Both verdicts live in the report; the conclusion is only evaluated when
// the hypothesis holds.
inline CongruenceReport kummer_check(const IntPolynomial& h, long long p, int N, long long c) {
    if (!is_odd_prime(p)) raise(errc::invalid_prime, "p must be an odd prime");
    if (N < 1) raise(errc::invalid_parameter, "N must be >= 1");
    if (c <= 1 || c % p == 0) raise(errc::invalid_parameter, "c must be > 1 and coprime to p");
    CongruenceReport rep;
    rep.check = "kummer";
    rep.modulus = std::to_string(p) + "^" + std::to_string(N);
    Int pn = pow_int(Int(p), static_cast<unsigned long>(N));
    if (pn > 50'000'000)
        raise(errc::range_exceeded, "hypothesis check enumerates (Z/p^N Z)*; needs p^N <= 5*10^7");
    rep.hypothesis_ok = true;
    for (Int a = 1; a < pn; ++a) {
        if (a % p == 0) continue;
        if (h.eval_mod(a, pn) != 0) {
            rep.hypothesis_ok = false;
            rep.note = "h(" + a.str() + ") != 0 mod " + pn.str();
            break;
        }
    }
    if (!rep.hypothesis_ok) {
        rep.conclusion_ok = false;
        rep.pass = false;
        rep.note += "; conclusion not asserted";
        return rep;
    }
    Rat combo;
    for (std::size_t i = 0; i < h.coeffs().size(); ++i) {
        if (h.coeffs()[i] == 0) continue;
        combo += Rat(h.coeffs()[i]) * zeta_reg(c, p, static_cast<unsigned>(i));
    }
    auto v = valuation_rat(combo, Int(p));
    rep.record_valuation(0, v, N);
    rep.conclusion_ok = !rep.first_fail;
    rep.pass = rep.hypothesis_ok && rep.conclusion_ok;
    return rep;
}

// Corollary form: zeta_(p)^(c)(-k) == zeta_(p)^(c)(-k2) mod p^N whenever
// k == k2 mod (p-1)p^{N-1}.
inline CongruenceReport kummer_continuity(unsigned k, unsigned k2, long long p, int N,
                                          long long c) {
    if (!is_odd_prime(p)) raise(errc::invalid_prime, "p must be an odd prime");
    if (N < 1) raise(errc::invalid_parameter, "N must be >= 1");
    Int step = Int(p - 1) * pow_int(Int(p), static_cast<unsigned long>(N - 1));
    if ((Int(k) - Int(k2)) % step != 0)
        raise(errc::precondition_violated, "k and k2 must agree mod (p-1)p^(N-1)");
    CongruenceReport rep;
    rep.check = "kummer-continuity";
    rep.modulus = std::to_string(p) + "^" + std::to_string(N);
    Rat diff = zeta_reg(c, p, k) - zeta_reg(c, p, k2);
    rep.record_valuation(0, valuation_rat(diff, Int(p)), N);
    rep.pass = !rep.first_fail;
    return rep;
}

// k-th moment of the Mazur measure on Z_p^*:
//   moment(0) = 0,  moment(k) = (1-c^k)(1-p^{k-1}) zeta(1-k)  (k >= 1),
// as an exact rational (always p-integral).
inline Rat mazur_moment_rational(unsigned k, long long c, long long p) {
    if (!is_odd_prime(p)) raise(errc::invalid_prime, "p must be an odd prime");
    if (c <= 1 || c % p == 0) raise(errc::invalid_parameter, "c must be > 1 and coprime to p");
    if (k == 0) return Rat(0);
    // zeta(1-k) = -B_k/k
    Rat zeta_val = -bernoulli_number(k) / Rat(k);
    Rat pk1(pow_int(Int(p), k - 1));
    return (Rat(1) - Rat(pow_int(Int(c), k))) * (Rat(1) - pk1) * zeta_val;
}

// Integral of a polynomial against the Mazur measure, reduced mod p^N.
inline PadicInt mazur_integrate_poly(const IntPolynomial& h, long long c, long long p, int N) {
    if (!is_odd_prime(p)) raise(errc::invalid_prime, "p must be an odd prime");
    if (c <= 1 || c % p == 0) raise(errc::invalid_parameter, "c must be > 1 and coprime to p");
    Rat acc;
    for (std::size_t i = 0; i < h.coeffs().size(); ++i) {
        if (h.coeffs()[i] == 0) continue;
        acc += Rat(h.coeffs()[i]) * mazur_moment_rational(static_cast<unsigned>(i), c, p);
    }
    return padic_from_rational(acc, p, N);
}

// The Mellin-transform name for the k-th moment: L_mu(x_p^k) = int x^k d mu.
inline PadicInt mellin_at_power(unsigned k, long long c, long long p, int N) {
    return mazur_integrate_poly(IntPolynomial::monomial(1, k), c, p, N);
}

// Kubota-Leopoldt special value zeta_p(x_p^k) = (1-p^k) zeta(-k) as an exact
// rational; defined only when zeta(-k) is p-integral, i.e. (p-1) does not
// divide k+1.
inline Rat kubota_leopoldt_rational(unsigned k, long long p) {
    if (!is_odd_prime(p)) raise(errc::invalid_prime, "p must be an odd prime");
    if (k < 1) raise(errc::invalid_parameter, "k must be >= 1");
    Rat z = zeta_neg(k);
    if (!is_p_integral(z, Int(p)))
        raise(errc::non_p_integral,
              "zeta(-" + std::to_string(k) + ") has " + std::to_string(p) + " in its denominator");
    return (Rat(1) - Rat(pow_int(Int(p), k))) * z;
}

inline PadicInt kubota_leopoldt_value(unsigned k, long long p, int N) {
    return padic_from_rational(kubota_leopoldt_rational(k, p), p, N);
}

}  // namespace qmf
