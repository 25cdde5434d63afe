#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "qmf/modforms.hpp"
#include "qmf/tau.hpp"

#include "test_helpers.hpp"

using qmf::BernoulliTable;
using qmf::Int;
using qmf::QSeries;
using qmf::Rat;
using qmf_test::thrown_code;

namespace {

// Second route to the Bernoulli numbers: invert the series (e^x - 1)/x
// with exact rationals, then B_k = k! * coefficient.
std::vector<Rat> bernoulli_by_series_inversion(std::size_t max_k) {
    std::size_t n = max_k;
    std::vector<Rat> expm1_over_x(n + 1);
    Rat factorial = 1;
    for (std::size_t i = 0; i <= n; ++i) {
        factorial *= Rat(i + 1);
        expm1_over_x[i] = Rat(1) / factorial;  // 1/(i+1)!
    }
    QSeries inv = qmf::inverse(QSeries(n, std::move(expm1_over_x)));
    std::vector<Rat> b(n + 1);
    Rat fact = 1;
    for (std::size_t k = 0; k <= n; ++k) {
        if (k > 0) fact *= Rat(k);
        b[k] = inv.coeff(k) * fact;
    }
    return b;
}

}  // namespace

TEST_CASE("bernoulli numbers") {
    BernoulliTable table(40);

    SECTION("reference values from the generating function") {
        CHECK(table.at(0) == 1);
        CHECK(table.at(1) == Rat(-1, 2));
        CHECK(table.at(2) == Rat(1, 6));
        CHECK(table.at(3) == 0);
        CHECK(table.at(4) == Rat(-1, 30));
        CHECK(table.at(6) == Rat(1, 42));
        CHECK(table.at(8) == Rat(-1, 30));
        CHECK(table.at(10) == Rat(5, 66));
        CHECK(table.at(12) == Rat(-691, 2730));
        CHECK(table.at(14) == Rat(7, 6));
        CHECK(table.at(16) == Rat(-3617, 510));
        CHECK(table.at(18) == Rat(43867, 798));
    }

    SECTION("odd entries vanish") {
        for (std::size_t k = 3; k <= 39; k += 2) CHECK(table.at(k) == 0);
    }

    SECTION("independent series-inversion route agrees") {
        auto by_inversion = bernoulli_by_series_inversion(40);
        for (std::size_t k = 0; k <= 40; ++k) CHECK(table.at(k) == by_inversion[k]);
    }
}

TEST_CASE("bernoulli polynomials") {
    BernoulliTable table(12);
    qmf_test::SeriesGen gen(7);
    for (unsigned k = 0; k <= 12; ++k) CHECK(qmf::bernoulli_poly(table, k, Rat(0)) == table.at(k));
    CHECK(qmf::bernoulli_poly(table, 1, Rat(1)) == Rat(1, 2));

    SECTION("power-sum identity (B_{k+1}(M) - B_{k+1})/(k+1) = sum n^k") {
        unsigned k = 3;
        long M = 10;
        Int direct = 0;
        for (long n = 1; n < M; ++n) direct += qmf::pow_int(Int(n), k);
        CHECK(direct == 2025);
        Rat closed = (qmf::bernoulli_poly(table, k + 1, Rat(M)) - table.at(k + 1)) / Rat(k + 1);
        CHECK(closed == Rat(direct));
    }
}

TEST_CASE("zeta at negative integers") {
    CHECK(qmf::zeta_neg(1) == Rat(-1, 12));
    CHECK(qmf::zeta_neg(2) == 0);
    CHECK(qmf::zeta_neg(11) == Rat(691, 32760));
    CHECK(qmf::zeta_neg(3) == Rat(1, 120));
}

TEST_CASE("eisenstein E_k expansions") {
    struct Row {
        long k;
        Rat coeff_q;
    };
    // 1 - (2k/B_k): the q-coefficients printed for E_4 .. E_14
    std::vector<Row> rows{{4, Rat(240)},  {6, Rat(-504)},         {8, Rat(480)},
                          {10, Rat(-264)}, {12, Rat(65520, 691)}, {14, Rat(-24)}};
    for (const auto& row : rows) {
        QSeries e = qmf::eisenstein_E(row.k, 6);
        CHECK(e.coeff(0) == 1);
        CHECK(e.coeff(1) == row.coeff_q);
        CHECK(e.coeff(2) == row.coeff_q * qmf::Rat(qmf::sigma(static_cast<unsigned>(row.k - 1), 2)));
    }
    CHECK(thrown_code([] { qmf::eisenstein_E(5, 4); }) == qmf::errc::invalid_weight);
    CHECK(thrown_code([] { qmf::eisenstein_E(2, 4); }) == qmf::errc::invalid_weight);
}

TEST_CASE("eisenstein Gfrak") {
    QSeries g12 = qmf::eisenstein_Gfrak(12, 8);
    CHECK(g12.coeff(0) == Rat(691, 65520));  // zeta(-11)/2
    for (long k : {4L, 6L, 8L, 10L, 12L}) CHECK(qmf::eisenstein_Gfrak(k, 4).coeff(1) == 1);
    CHECK(qmf::eisenstein_Gfrak(4, 6).coeff(5) == 126);
}

TEST_CASE("eisenstein Gstar") {
    const long long p = 5;
    QSeries g = qmf::eisenstein_Gstar(4, p, 30);

    CHECK(g.coeff(0) ==
          (Rat(1) - Rat(qmf::pow_int(Int(p), 3))) * Rat(-qmf::bernoulli_number(4) / Rat(8)));
    CHECK(g.coeff(5) == 1);   // sigma*_3(p) = 1
    CHECK(g.coeff(10) == 9);  // sigma*_3(10) = 1 + 8
    for (std::size_t n = 1; n <= 30; ++n) {
        if (n % p == 0) continue;
        CHECK(g.coeff(n) == Rat(qmf::sigma(3, static_cast<long long>(n))));
    }

    SECTION("coefficients match sigma_star everywhere") {
        for (std::size_t n = 1; n <= 30; ++n)
            CHECK(g.coeff(n) == Rat(qmf::sigma_star(3, static_cast<long long>(n), p)));
    }

    CHECK(thrown_code([] { qmf::eisenstein_Gstar(4, 2, 10); }) == qmf::errc::invalid_prime);
    CHECK(thrown_code([] { qmf::eisenstein_Gstar(4, 9, 10); }) == qmf::errc::invalid_prime);
}

TEST_CASE("discriminant expansions") {
    // the 19 coefficients of the reference expansion
    std::vector<long long> block{1,       -24,      252,     -1472,   4830,    -6048,  -16744,
                                 84480,   -113643,  -115920, 534612,  -370944, -577738, 401856,
                                 1217160, 987136,   -6905934, 2727432, 10661420};
    QSeries d = qmf::delta_eta(19);
    CHECK(d.coeff(0) == 0);
    for (std::size_t n = 1; n <= 19; ++n) CHECK(d.coeff(n) == Rat(block[n - 1]));

    SECTION("three construction routes agree") {
        QSeries fast = qmf::delta_eta(100);
        CHECK(fast == qmf::delta_eta_product(100));
        CHECK(fast == qmf::delta_eisenstein(100));
    }
}

TEST_CASE("one-dimensional weight spaces force E4*E4 = E8 and E4*E6 = E10") {
    std::size_t n = 100;
    CHECK(qmf::eisenstein_E(4, n) * qmf::eisenstein_E(4, n) == qmf::eisenstein_E(8, n));
    CHECK(qmf::eisenstein_E(4, n) * qmf::eisenstein_E(6, n) == qmf::eisenstein_E(10, n));
}

TEST_CASE("j invariant expansion") {
    QSeries j = qmf::j_invariant_times_q(3);
    CHECK(j.coeff(0) == 1);
    CHECK(j.coeff(1) == 744);
    CHECK(j.coeff(2) == 196884);
    CHECK(j.coeff(3) == 21493760);
}

TEST_CASE("dimension formulas") {
    CHECK(qmf::dim_Mk(12) == 2);
    CHECK(qmf::dim_Sk(12) == 1);
    CHECK(qmf::dim_Mk(2) == 0);
    CHECK(qmf::dim_Sk(2) == 0);
    CHECK(qmf::dim_Mk(0) == 1);
    CHECK(qmf::dim_Mk(-4) == 0);
    CHECK(qmf::dim_Mk(7) == 0);
    for (long k : {0L, 4L, 6L, 8L, 10L}) {
        CHECK(qmf::dim_Mk(k) == 1);
        CHECK(qmf::dim_Sk(k) == 0);
    }

    SECTION("monomial basis count equals the dimension") {
        for (long k = 0; k <= 200; k += 2)
            CHECK(static_cast<long>(qmf::monomial_basis(k).size()) == qmf::dim_Mk(k));
    }

    SECTION("multiplication by Delta: dim S_k = dim M_{k-12}") {
        for (long k = 12; k <= 200; k += 2) CHECK(qmf::dim_Sk(k) == qmf::dim_Mk(k - 12));
    }

    SECTION("explicit bases") {
        using Pair = std::pair<long, long>;
        CHECK(qmf::monomial_basis(12) == std::vector<Pair>{{3, 0}, {0, 2}});
        CHECK(qmf::monomial_basis(2).empty());
    }
}

TEST_CASE("ramanujan quotient series") {
    QSeries quot = qmf::ramanujan_quotient_series(200);
    // every coefficient integral by construction (no throw); check known block
    std::vector<long long> printed{-2861568,     -12437115,    -45414400,   -144788634,
                                   -412896000,   -1075797268,  -2593575936, -5863302600,
                                   -12517805568, -25471460475, -49597544448, -93053764671,
                                   -168582124800};
    for (std::size_t n = 7; n <= 19; ++n) CHECK(quot.coeff(n) == Rat(printed[n - 7]));

    SECTION("low coefficients equal (tau(n) - sigma_11(n))/691") {
        qmf::TauTable table(6);
        for (std::size_t n = 1; n <= 6; ++n) {
            Int diff = table.tau(n) - qmf::sigma(11, static_cast<long long>(n));
            CHECK(diff % 691 == 0);
            CHECK(quot.coeff(n) == Rat(diff / 691));
        }
        CHECK(quot.coeff(1) == 0);
        CHECK(quot.coeff(2) == -3);
        CHECK(quot.coeff(3) == -256);
        CHECK(quot.coeff(4) == -6075);
        CHECK(quot.coeff(5) == -70656);
        CHECK(quot.coeff(6) == -525300);
    }
}

TEST_CASE("eisenstein congruences mod p^N") {
    SECTION("variant (a): G_6* == G_26* mod 25") {
        auto rep = qmf::check_eisenstein_congruence(5, 6, 26, 2, 100);
        CHECK(rep.pass);
        CHECK(rep.min_valuation.value_or(qmf::kInfiniteValuation) >= 2);
    }
    SECTION("variant (b): (1-2^4) G_4* == (1-2^24) G_24* mod 25") {
        auto rep = qmf::check_eisenstein_congruence(5, 4, 24, 2, 100, 2);
        CHECK(rep.pass);
    }
    SECTION("k = k2 passes with infinite valuation") {
        auto rep = qmf::check_eisenstein_congruence(5, 6, 6, 2, 40);
        CHECK(rep.pass);
        CHECK_FALSE(rep.min_valuation.has_value());
        for (long v : rep.valuations) CHECK(v == qmf::kInfiniteValuation);
    }
    SECTION("hypothesis violation is rejected") {
        CHECK(thrown_code([] { qmf::check_eisenstein_congruence(5, 6, 8, 2, 10); }) ==
              qmf::errc::precondition_violated);
    }
    SECTION("variant (a) misuse at k = 0 mod p-1 hits the denominator guard") {
        CHECK(thrown_code([] { qmf::check_eisenstein_congruence(5, 4, 24, 2, 10); }) ==
              qmf::errc::denominator_not_p_unit);
    }
    SECTION("more exponent pairs at several primes") {
        // p = 3 forces variant (b): every even weight is 0 mod p-1 = 2
        CHECK(qmf::check_eisenstein_congruence(3, 4, 10, 1, 60, 2).pass);
        CHECK(qmf::check_eisenstein_congruence(7, 4, 46, 2, 60).pass);
        CHECK(qmf::check_eisenstein_congruence(3, 6, 12, 2, 60, 2).pass);
    }
}
