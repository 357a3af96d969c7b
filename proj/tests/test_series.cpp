#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kpcohft/bivariate.hpp"
#include "kpcohft/hlaurent.hpp"
#include "kpcohft/pseries.hpp"
#include "kpcohft/ratfn.hpp"
#include "kpcohft/zseries.hpp"

using namespace kpcohft;

TEST_CASE("rational parsing round trip") {
    CHECK(rat_from_string("3/4") == Rat(3) / 4);
    CHECK(rat_from_string("-7") == Rat(-7));
    CHECK(rat_to_string(Rat(22) / 7) == "22/7");
    CHECK_THROWS(rat_from_string("0.5"));
    CHECK(rat_pow(Rat(2) / 3, -2) == Rat(9) / 4);
}

TEST_CASE("hbar Laurent arithmetic and validity windows") {
    HLaurent a = HLaurent::term(1, -1) + HLaurent(2);  // h^-1 + 2, exact
    HLaurent b = HLaurent::term(3, 2);
    b.truncate_to(4); // 3h^2 known through h^4
    HLaurent p = a * b;
    // a has support bound -1, so p is reliable only through h^3
    CHECK(p.valid_to() == 3);
    CHECK(p.coeff(1) == 3);
    CHECK(p.coeff(2) == 6);
    CHECK_THROWS(p.coeff(4));

    HLaurent e = HLaurent::term(Rat(1), 2).exp(6);
    CHECK(e.coeff(0) == 1);
    CHECK(e.coeff(2) == 1);
    CHECK(e.coeff(4) == Rat(1) / 2);
    CHECK(e.coeff(6) == Rat(1) / 6);

    HLaurent inv = (HLaurent(1) + HLaurent::term(1, 1)).inverse(3);
    CHECK(inv.coeff(0) == 1);
    CHECK(inv.coeff(1) == -1);
    CHECK(inv.coeff(2) == 1);
    CHECK(inv.coeff(3) == -1);

    // inverse through a negative valuation
    HLaurent h = HLaurent::term(2, -1) + HLaurent(1);
    HLaurent hi = h.inverse(2);
    HLaurent prod = h * hi;
    CHECK(prod.coeff(0) == 1);
    CHECK(prod.coeff(1) == 0);
    // the h^-1 factor costs one order of reliability
    CHECK(prod.valid_to() == 1);
}

TEST_CASE("varsigma and S expansions") {
    // varsigma(t) = t + t^3/24 + t^5/1920 + ...
    HLaurent v = varsigma_hbar(1, 5);
    CHECK(v.coeff(1) == 1);
    CHECK(v.coeff(3) == Rat(1) / 24);
    CHECK(v.coeff(5) == Rat(1) / 1920);
    HLaurent s = s_factor_hbar(1, 4);
    CHECK(s.coeff(0) == 1);
    CHECK(s.coeff(2) == Rat(1) / 24);
    CHECK(s.coeff(4) == Rat(1) / 1920);
    HLaurent sinv = s.inverse(4);
    CHECK(sinv.coeff(2) == -Rat(1) / 24);
    CHECK(sinv.coeff(4) == Rat(7) / 5760);
}

TEST_CASE("univariate series basics") {
    QSeries z = QSeries::identity(8);
    QSeries e = exp_series(z);
    CHECK(e.coeff(4) == Rat(1) / 24);
    QSeries l = log_series(e);
    CHECK(l == z);
    QSeries r = reciprocal(e);
    CHECK((e * r).coeff(0) == 1);
    CHECK((e * r).coeff(5) == 0);

    // reversion of z e^{-z} is the tree function sum n^{n-1} z^n / n!
    QSeries f = z * exp_series(-z);
    QSeries g = reversion(f);
    Rat expect = 0;
    for (int n = 1; n <= 8; ++n) {
        Int num = 1;
        for (int i = 0; i < n - 1; ++i) num *= n;
        CHECK(g.coeff(n) == Rat(num) / Rat(factorial(n)));
    }
    QSeries comp = f.compose(g);
    CHECK(comp == QSeries::identity(8));
}

TEST_CASE("multivariate series, exp log derivative") {
    int W = 8;
    PSeries p1 = PSeries::variable(1, W);
    PSeries p2 = PSeries::variable(2, W);
    PSeries f = p1 * p1 * (Rat(1) / 2) + p2;
    PSeries e = exp_pseries(f);
    // coefficient of p1^2 p2 in exp(p1^2/2 + p2) is 1/2
    CHECK(e.coeff(monomial_from_parts({1, 1, 2})).coeff(0) == Rat(1) / 2);
    PSeries l = log_pseries(e);
    CHECK(l == f);

    PSeries d = e.derivative(1);
    CHECK(d.weight_cap() == W - 1);
    // d/dp1 exp = p1 exp; compare through the shrunken cap
    CHECK(d == (p1 * e).truncated(W - 1));

    // two-alphabet weights
    PMonomial m = monomial_from_parts({3}, kAlphabetB);
    CHECK(monomial_weight(m) == 3);
}

TEST_CASE("polynomials, gcd, roots") {
    Poly z = Poly::identity();
    Poly p = (z - Poly(1)) * (z - Poly(1)) * (z + Poly(Rat(1) / 2));
    auto roots = p.rational_roots();
    REQUIRE(roots.size() == 2);
    bool saw1 = false, sawhalf = false;
    for (auto &[r, m] : roots) {
        if (r == 1 && m == 2) saw1 = true;
        if (r == Rat(-1) / 2 && m == 1) sawhalf = true;
    }
    CHECK(saw1);
    CHECK(sawhalf);
    Poly g = poly_gcd(p, p.derivative());
    CHECK(g.degree() == 1); // (z-1)
    CHECK(g.eval(1) == 0);
}

TEST_CASE("rational function residues") {
    Poly z = Poly::identity();
    // f = (3z + 1) / (z(z-2)^2)
    RatFn f(Poly(1) + z * Rat(3), z * (z - Poly(2)) * (z - Poly(2)));
    CHECK(f.pole_order(0) == 1);
    CHECK(f.pole_order(2) == 2);
    CHECK(f.residue_at(0) == Rat(1) / 4);
    // residue at 2: d/dz[(3z+1)/z] at 2 = (-1/z^2)|_2 = -1/4... compute:
    // (3z+1)/z = 3 + 1/z, derivative -1/z^2 -> -1/4
    CHECK(f.residue_at(2) == -Rat(1) / 4);
    // sum of all residues including infinity vanishes
    CHECK(f.residue_at_infinity() == 0);

    RatFn g = RatFn(z * z * z, (z - Poly(1)));
    // expansion at infinity: z^3/(z-1) = z^2 + z + 1 + 1/(z-1)
    CHECK(g.residue_at(1) == 1);
    CHECK(g.residue_at_infinity() == -1);

    auto [val, c] = g.laurent_at(1, 3);
    CHECK(val == -1);
    CHECK(c[0] == 1);

    QSeries s = RatFn(Poly(1), Poly(1) - z).series(5);
    for (int i = 0; i <= 5; ++i) CHECK(s.coeff(i) == 1);
}

TEST_CASE("bivariate series") {
    int n = 6;
    QSeries z = QSeries::identity(n);
    BivarSeries a = BivarSeries::from_first(z, n);
    BivarSeries b = BivarSeries::from_second(z, n);
    BivarSeries prod = a * b;
    CHECK(prod.coeff(1, 1) == 1);
    BivarSeries l = log1p_bivar(prod);
    CHECK(l.coeff(1, 1) == 1);
    CHECK(l.coeff(2, 2) == -Rat(1) / 2);
    CHECK(l.d1().coeff(0, 1) == 1);
}
