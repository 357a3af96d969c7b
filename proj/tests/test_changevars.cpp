#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kpcohft/changevars.hpp"
#include "kpcohft/tau.hpp"

#include <vector>

using namespace kpcohft;

namespace {

// Stirling numbers of the second kind, bottom-up recurrence.
Int stirling2(int n, int k) {
    if (n == 0 && k == 0) return 1;
    if (n <= 0 || k <= 0 || k > n) return 0;
    std::vector<std::vector<Int>> S(n + 1, std::vector<Int>(n + 1, 0));
    S[0][0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j) S[i][j] = Int(j) * S[i - 1][j] + S[i - 1][j - 1];
    return S[n][k];
}

QSeries pow_const1(const QSeries &f, const Rat &e) {
    return exp_series(log_series(f) * e);
}

// X of the inverse-series lemma: z/(1+(w+1)bz) * ((1+bz)/(1+(w+1)bz))^{1/w}
QSeries triple_hodge_X(const Rat &w, const Rat &b, int order) {
    QSeries one = QSeries::constant(1, order);
    QSeries z = QSeries::identity(order);
    QSeries d = one + z * ((w + 1) * b);
    QSeries ratio = (one + z * b) / d;
    return (z / d) * pow_const1(ratio, Rat(1) / w);
}

} // namespace

TEST_CASE("build_X on the single-Hodge data") {
    SpectralData sd = SpectralData::build_X(TauData::naive_hodge(), 10);
    // X = z e^{-z}
    for (int m = 1; m <= 10; ++m) {
        Rat expect = Rat((m % 2 == 1) ? 1 : -1) / Rat(factorial(m - 1));
        CHECK(sd.X.coeff(m) == expect);
    }
    // Q = 1 - z, reciprocal all ones
    CHECK(sd.Q.coeff(0) == 1);
    CHECK(sd.Q.coeff(1) == -1);
    for (int l = 2; l <= 10; ++l) CHECK(sd.Q.coeff(l) == 0);
    for (int l = 0; l <= 10; ++l) CHECK(sd.Tcal.coeff(l) == 1);

    // from_X_series round trip
    SpectralData sd2 = SpectralData::from_X_series(sd.X);
    CHECK(sd2.Q == sd.Q.truncated(sd2.Q.order()));
}

TEST_CASE("t recursion: paper rows and Stirling identity") {
    SpectralData sd = SpectralData::build_X(TauData::naive_hodge(), 14);
    LinearForm T0 = t_recursion(sd, 0, 0, 5);
    LinearForm T1 = t_recursion(sd, 0, 1, 5);
    LinearForm T2 = t_recursion(sd, 0, 2, 5);
    CHECK(T0 == LinearForm{{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}});
    CHECK(T1 == LinearForm{{1, 1}, {2, 3}, {3, 6}, {4, 10}, {5, 15}});
    CHECK(T2 == LinearForm{{1, 1}, {2, 7}, {3, 25}, {4, 65}, {5, 140}});

    // c_{k,m} = S(k+m, m) for k <= 4, m <= 8
    for (int k = 0; k <= 4; ++k) {
        LinearForm T = t_recursion(sd, 0, k, 8);
        for (int m = 1; m <= 8; ++m) {
            Rat c = T.count(m) ? T.at(m) : Rat(0);
            CHECK(c == Rat(stirling2(k + m, m)));
        }
    }
}

TEST_CASE("t recursion on the identity curve") {
    SpectralData sd = SpectralData::from_X_series(QSeries::identity(11));
    for (int j = 0; j <= 3; ++j)
        for (int k = -1; k <= 4; ++k) {
            LinearForm T = t_recursion(sd, j, k, 10);
            REQUIRE(T.size() == 1);
            CHECK(T.at(j + 1) == rat_pow(Rat(j + 1), k + 1) / Rat(j + 1));
        }
}

TEST_CASE("p_of_q") {
    SpectralData id = SpectralData::from_X_series(QSeries::identity(9));
    for (int k = 1; k <= 4; ++k) {
        LinearForm lf = p_of_q(id, k, 8);
        REQUIRE(lf.size() == 1);
        CHECK(lf.at(k) == 1);
    }
    SpectralData nh = SpectralData::build_X(TauData::naive_hodge(), 8);
    LinearForm p1 = p_of_q(nh, 1, 4);
    CHECK(p1 == LinearForm{{1, 1}, {2, -1}, {3, Rat(1) / 2}, {4, Rat(-1) / 6}});
    for (int k = 1; k <= 6; ++k) CHECK(p_of_q(nh, k, 8).at(k) == 1);
}

TEST_CASE("unstable one-point part") {
    SpectralData sd = SpectralData::build_X(TauData::naive_hodge(), 10);
    QSeries h01 = unstable_H01(sd, sd.y, 10);
    CHECK(sd.D(h01) == sd.y);
    LinearForm lf = unstable_H01_form(sd, sd.y, 10);
    CHECK(lf.at(1) == 1); // y = z = X + O(X^2), so b_1/1 = 1

    // tau-side H_{0,1} agrees: F's hbar^{-1} single-variable part
    PSeries F = free_energy(build_tau(TauData::naive_hodge(), 8, 16));
    auto h = extract_Hgn(F, 0, 1);
    for (const auto &[mu, c] : h) {
        REQUIRE(mu.size() == 1);
        Rat expect = lf.count(mu[0]) ? lf.at(mu[0]) : Rat(0);
        CHECK(c == expect);
    }
}

TEST_CASE("unstable two-point part") {
    // X = z: vanishes
    H02Result r0 = unstable_H02(QSeries::identity(9), 8);
    CHECK(r0.log_arg == 1);
    CHECK(r0.ser.is_zero());

    // Moebius X = az/(1+bz): constant log a
    {
        int n = 8;
        QSeries z = QSeries::identity(n + 1);
        QSeries X = (z * Rat(3)) / (QSeries::constant(1, n + 1) + z * Rat(2));
        H02Result r = unstable_H02(X, n);
        CHECK(r.log_arg == 3);
        CHECK(r.ser.is_zero());
    }

    // X = z e^{-z}: coefficient of z1 z2 is 1/2; symmetric
    {
        SpectralData sd = SpectralData::build_X(TauData::naive_hodge(), 9);
        H02Result r = unstable_H02(sd.X, 8);
        CHECK(r.log_arg == 1);
        CHECK(r.ser.coeff(1, 1) == Rat(1) / 2);
        for (int i = 0; i <= 8; ++i)
            for (int j = 0; j <= 8; ++j) CHECK(r.ser.coeff(i, j) == r.ser.coeff(j, i));

        // cross-check against the tau side: hbar^0 two-point part of F
        PSeries F = free_energy(build_tau(TauData::naive_hodge(), 6, 14));
        auto h = extract_Hgn(F, 0, 2);
        // H_{0,2}(X(z1),X(z2)) as a bivariate series. The second p-derivative
        // of a monomial coefficient picks up both orderings, including a
        // factor 2 when the two parts are equal.
        BivarSeries acc(6);
        for (const auto &[mu, c] : h) {
            REQUIRE(mu.size() == 2);
            QSeries a = sd.X.pow(mu[0]).truncated(6), b = sd.X.pow(mu[1]).truncated(6);
            BivarSeries t = BivarSeries::from_first(a, 6) * BivarSeries::from_second(b, 6);
            t += BivarSeries::from_first(b, 6) * BivarSeries::from_second(a, 6);
            acc += t * c;
        }
        for (int i = 0; i <= 6; ++i)
            for (int j = 0; j <= 6; ++j)
                if (i + j <= 6) CHECK(acc.coeff(i, j) == r.ser.coeff(i, j));
    }
}

TEST_CASE("flow lemma and generator") {
    // dX_beta/dbeta = (1/beta)(Q(beta z) - 1) X_beta for X_beta = X(beta z)/beta,
    // checked as a bivariate identity in (z, beta)
    SpectralData sd = SpectralData::build_X(TauData::naive_hodge(), 8);
    int N = 8;
    BivarSeries lhs(N), rhs(N);
    for (int k = 1; k <= N; ++k) {
        // X_beta = sum x_k beta^{k-1} z^k
        if (k - 2 >= 0) lhs.at(k, k - 2) += sd.X.coeff(k) * (k - 1);
    }
    for (int l = 1; l <= N; ++l)
        for (int k = 1; l + k <= N; ++k) {
            if (l + k - 2 > N) continue;
            rhs.at(l + k, l + k - 2) += sd.Q.coeff(l) * sd.X.coeff(k);
        }
    CHECK(lhs == rhs);

    // X = z gives the zero generator
    SpectralData id = SpectralData::from_X_series(QSeries::identity(9));
    FlowGenerator fg0 = flow_generator(id, 1, 8);
    for (int l = 1; l <= 8; ++l) CHECK(fg0.euler[l] == 0);
    CHECK(fg0.quad.is_zero());

    // quadratic completion equals -(1/2) dH02/dbeta for triple-Hodge data
    SpectralData th = SpectralData::from_X_series(triple_hodge_X(1, 1, 8));
    FlowGenerator fg = flow_generator(th, Rat(2) / 3, 6);
    BivarSeries q2 = flow_quad_from_h02(th, Rat(2) / 3, 6);
    CHECK(fg.quad == q2);
    CHECK(fg.euler[1] != 0);
}

TEST_CASE("finiteness detection") {
    SpectralData nh = SpectralData::build_X(TauData::naive_hodge(), 12);
    CHECK_FALSE(finiteness_check(nh, 12).polynomial);

    // Moebius X = z/(1+bz): degree 1
    {
        int n = 12;
        QSeries z = QSeries::identity(n + 1);
        QSeries X = z / (QSeries::constant(1, n + 1) + z * Rat(2));
        auto v = finiteness_check(SpectralData::from_X_series(X), 10);
        CHECK(v.polynomial);
        CHECK(v.degree == 1);
        REQUIRE(v.fully_factored);
        CHECK(v.roots_c == std::vector<Rat>{Rat(-2)});
        CHECK(v.log_coeffs == std::vector<Rat>{Rat(1)});
    }

    // triple Hodge: degree 2, roots -beta and -(w+1)beta
    {
        Rat w(3), b(2);
        auto v = finiteness_check(SpectralData::from_X_series(triple_hodge_X(w, b, 13)), 10);
        CHECK(v.polynomial);
        CHECK(v.degree == 2);
        REQUIRE(v.fully_factored);
        bool saw1 = false, saw2 = false;
        for (const Rat &c : v.roots_c) {
            if (c == -b) saw1 = true;
            if (c == -(w + 1) * b) saw2 = true;
        }
        CHECK(saw1);
        CHECK(saw2);
        // x = log z - sum A_j log(1 - c_j z) reproduces Q
        QSeries acc = QSeries::constant(1, 10);
        for (std::size_t j = 0; j < v.roots_c.size(); ++j) {
            // Q contribution: A_j c_j z/(1 - c_j z)
            QSeries geom(10);
            Rat p = 1;
            for (int m = 1; m <= 10; ++m) {
                p *= v.roots_c[j];
                geom.set_coeff(m, p);
            }
            acc += geom * v.log_coeffs[j];
        }
        SpectralData th = SpectralData::from_X_series(triple_hodge_X(w, b, 13));
        CHECK(acc == th.Q.truncated(10));
    }
}
