#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kpcohft/hodge.hpp"
#include "kpcohft/kpcheck.hpp"
#include "kpcohft/tau.hpp"

#include <vector>

using namespace kpcohft;

namespace {

PSeries form_to_pseries(const LinearForm &lf, int cap) {
    PSeries f(cap);
    for (const auto &[m, c] : lf)
        if (m <= cap) f += PSeries::monomial(HLaurent(c), {{m, 1}}, cap);
    return f;
}

} // namespace

TEST_CASE("intersection numbers") {
    CHECK(intersection_number(0, 3, {0, 0, 0}, 0) == 1);
    CHECK(intersection_number(0, 4, {1, 0, 0, 0}, 0) == 1);
    CHECK(intersection_number(0, 4, {0, 1, 0, 0}, 0) == 1);
    CHECK(intersection_number(1, 1, {1}, 0) == Rat(1) / 24);
    CHECK(intersection_number(1, 1, {0}, 1) == Rat(1) / 24);
    CHECK(intersection_number(1, 2, {2, 0}, 0) == Rat(1) / 24);
    CHECK(intersection_number(1, 2, {1, 1}, 0) == Rat(1) / 24);
    CHECK(intersection_number(1, 2, {1, 0}, 1) == Rat(1) / 24);
    // degree mismatch and genus-zero lambda classes vanish
    CHECK(intersection_number(1, 1, {0}, 0) == 0);
    CHECK(intersection_number(0, 3, {1, 0, 0}, 0) == 0);
    CHECK(intersection_number(0, 4, {0, 0, 0, 0}, 1) == 0);
    // genus-zero closed form vs string equation at n=5
    CHECK(intersection_number(0, 5, {2, 0, 0, 0, 0}, 0) == 1);
    CHECK(intersection_number(0, 5, {1, 1, 0, 0, 0}, 0) == 2);
    CHECK_THROWS(intersection_number(2, 1, {4}, 0));
}

TEST_CASE("single-Hodge generating function matches the closed form") {
    SpectralData sd = SpectralData::build_X(TauData::naive_hodge(), 12);
    int M = 5, cap = 6;
    std::vector<LinearForm> T;
    for (int k = 0; k <= 2; ++k) T.push_back(t_recursion(sd, 0, k, M));
    PSeries G = cohft_generating({Rat(-1)}, T, 2, cap);

    PSeries T0 = form_to_pseries(T[0], cap), T1 = form_to_pseries(T[1], cap),
            T2 = form_to_pseries(T[2], cap);
    PSeries h1 = (T0 * T0 * T0 * (Rat(1) / 6) + T1 * (Rat(1) / 24) - T0 * (Rat(1) / 24)) *
                 HLaurent::term(1, 1);
    PSeries h2 = (T0 * T0 * T0 * T1 * (Rat(1) / 6) + T1 * T1 * (Rat(1) / 48) +
                  T0 * T2 * (Rat(1) / 24) - T0 * T1 * (Rat(1) / 24)) *
                 HLaurent::term(1, 2);
    PSeries expect = (h1 + h2).hbar_truncated(2);
    CHECK(G == expect);

    // this generating function solves the first two q-equations through hbar^2
    CHECK(kp_residual_q1(G, 2, 2).pass);
    CHECK(kp_residual_q2(G, 2, 1).pass);
    // negative control: a quadratic perturbation breaks KP
    PSeries Gbad = G + T0 * T0 * HLaurent::term(Rat(1, 7), 1);
    CHECK_FALSE(kp_residual_q1(Gbad, 2, 2).pass);
}

TEST_CASE("triple Hodge T recursion") {
    TripleHodgeParams p(Rat(1), Rat(2)); // u=1, s=2, w=3
    CHECK(p.w() == 3);
    CHECK(p.beta() == Rat(1) / 2);
    auto [a, b, c] = p.cy_triple();
    CHECK(Rat(1) / a + Rat(1) / b + Rat(1) / c == 0);

    CHECK(triple_hodge_T(p, 0, 8) == LinearForm{{1, 1}});
    // T_1 = u^2 q_1 + u(s^2+1)/s q_2 + q_3
    CHECK(triple_hodge_T(p, 1, 8) ==
          LinearForm{{1, 1}, {2, Rat(5) / 2}, {3, 1}});

    // u = 0: T_d = (2d-1)!! q_{2d+1}
    TripleHodgeParams p0(Rat(0), Rat(2));
    CHECK(triple_hodge_T(p0, 2, 8) == LinearForm{{5, 3}});
    CHECK(triple_hodge_T(p0, 3, 8) == LinearForm{{7, 15}});

    // w = 0 step operator has coefficients (u^2, 2u, 1)
    TripleHodgeParams pk(Rat(3), Rat(1));
    CHECK(triple_hodge_T(pk, 1, 8) == LinearForm{{1, 9}, {2, 6}, {3, 1}});
}

TEST_CASE("triple Hodge generating function solves KP through hbar^2") {
    for (auto [u, s] : std::vector<std::pair<Rat, Rat>>{{1, 2}, {1, 1}, {2, 3}}) {
        TripleHodgeParams p(u, s);
        std::vector<LinearForm> T;
        for (int k = 0; k <= 2; ++k) T.push_back(triple_hodge_T(p, k, 7));
        auto cy = p.cy_triple();
        PSeries G = cohft_generating({cy.begin(), cy.end()}, T, 2, 7);
        CHECK(kp_residual_q1(G, 2, 3).pass);
        CHECK(kp_residual_q2(G, 2, 2).pass);
    }
    // u = 0: KdV signature, only odd q-indices appear
    TripleHodgeParams p0(Rat(0), Rat(1));
    std::vector<LinearForm> T;
    for (int k = 0; k <= 2; ++k) T.push_back(triple_hodge_T(p0, k, 7));
    auto cy = p0.cy_triple();
    PSeries G = cohft_generating({cy.begin(), cy.end()}, T, 2, 7);
    CHECK(!G.is_zero());
    for (const auto &[mono, coef] : G.terms())
        for (const auto &[v, e] : mono) CHECK(v % 2 == 1);
}

TEST_CASE("substitution pipeline reproduces the generating function") {
    // vertex tau -> log -> p(q) substitution on the inversion-lemma X ->
    // unstable subtraction -> dictionary rescaling equals cohft_generating
    // on the Calabi-Yau triple, exactly
    for (auto [u, s] : std::vector<std::pair<Rat, Rat>>{{1, 2}, {2, 3}, {Rat(1) / 2, 3}}) {
        TripleHodgeParams p(u, s);
        PSeries G = triple_hodge_pipeline(p, 7, 2);
        std::vector<LinearForm> T;
        for (int k = 0; k <= 2; ++k) T.push_back(triple_hodge_T(p, k, 7));
        auto cy = p.cy_triple();
        PSeries Gd = cohft_generating({cy.begin(), cy.end()}, T, 2, 7);
        CHECK((G - Gd).is_zero());
        CHECK(kp_residual_q1(G, 2, 3).pass);
        CHECK(kp_residual_q2(G, 2, 2).pass);
    }
    // degenerate parameters have no vertex tau
    CHECK_THROWS(triple_hodge_pipeline(TripleHodgeParams(Rat(1), Rat(1)), 5, 2));
    CHECK_THROWS(triple_hodge_pipeline(TripleHodgeParams(Rat(0), Rat(2)), 5, 2));
}

TEST_CASE("vertex character sum equals the hypergeometric tau") {
    for (auto [w, beta] : std::vector<std::pair<Rat, Rat>>{
             {Rat(2), Rat(1)}, {Rat(-3), Rat(1) / 2}, {Rat(1) / 3, Rat(-2)}}) {
        PSeries lhs = mv_rhs(w, beta, 4, 4);
        TauData data = TauData::vertex_data(w, beta, 4, 5);
        PSeries rhs = build_tau(data, 4, 4);
        for (const auto &[mono, c] : lhs.terms()) {
            HLaurent a = c, b = rhs.coeff(mono);
            int hi = std::min({a.valid_to(), b.valid_to(), 4});
            for (int e = -4; e <= hi; ++e) CHECK(a.coeff(e) == b.coeff(e));
        }
    }
}

TEST_CASE("vertex tau reproduces the triple Hodge integral formula") {
    // free-energy coefficients against the ELSV-type formula
    //   (W+1)^{g+n-1}/|Aut mu| prod_i prod_{j<mu_i} (mu_i + jW)/(mu_i - 1)!
    //   int Lambda(-1)Lambda(-W)Lambda(W/(W+1))/prod(1 - mu_i psi)
    //   B^{|mu|} W^{2-2g-n} hbar^{2g-2+n}
    // at the flipped parameters (W, B) = (-w, -beta). The flip is forced by
    // the content-weight sign convention of build_tau: both sides have the
    // same X(z) = z(1 - beta w z)^{-1/w}.
    for (auto [w, beta] : std::vector<std::pair<Rat, Rat>>{
             {Rat(2), Rat(1) / 3}, {Rat(3), Rat(1) / 2}}) {
    Rat W = -w, B = -beta;
    Rat e1 = Rat(-1) - W + W / (W + 1);
    PSeries F = free_energy(build_tau(TauData::vertex_data(w, beta, 5, 6), 5, 8));
    auto hodge_int = [&](int g, int n, const Partition &mu) {
        // sum over psi exponents and lambda_1 power
        Rat acc = 0;
        int dim = 3 * g - 3 + n;
        std::function<void(int, std::vector<int>, Rat)> rec = [&](int i, std::vector<int> e,
                                                                  Rat f) {
            if (i == n) {
                int de = 0;
                for (int x : e) de += x;
                for (int lp = 0; lp <= 1; ++lp)
                    if (de + lp == dim)
                        acc += f * (lp ? e1 : Rat(1)) * intersection_number(g, n, e, lp);
                return;
            }
            for (int k = 0; k <= dim; ++k) {
                std::vector<int> e2 = e;
                e2.push_back(k);
                rec(i + 1, e2, f * rat_pow(Rat(mu[i]), k));
            }
        };
        rec(0, {}, 1);
        return acc;
    };
    auto formula = [&](int g, const Partition &mu) {
        int n = (int)mu.size(), d = 0;
        for (int m : mu) d += m;
        Rat v = rat_pow(W + 1, g + n - 1) * rat_pow(B, d) * rat_pow(W, 2 - 2 * g - n);
        // z_mu = prod mu_i * |Aut mu|
        v /= Rat(z_mu(mu));
        for (int m : mu) v *= Rat(m);
        for (int m : mu) {
            for (int j = 1; j <= m - 1; ++j) v *= (Rat(m) + Rat(j) * W);
            v /= Rat(factorial(m - 1));
        }
        return v * hodge_int(g, n, mu);
    };
    for (auto [g, mu] : std::vector<std::pair<int, Partition>>{
             {0, {1, 1, 1}}, {0, {2, 1, 1}}, {0, {1, 1, 1, 1}},
             {1, {1}}, {1, {2}}, {1, {3}}, {1, {1, 1}}, {1, {2, 1}}}) {
        int n = (int)mu.size();
        auto h = extract_Hgn(F, g, n);
        Rat got = h.count(mu) ? h.at(mu) : Rat(0);
        CHECK(got == formula(g, mu));
    }
    }
}

TEST_CASE("series inversion lemma") {
    CHECK(inversion_coefficient(Rat(7, 2), Rat(1), 1) == 1);
    CHECK(inversion_coefficient(Rat(0), Rat(1), 3) == Rat(9) / 2);
    // w=0: C_m = m^m/m! (times beta^{m-1})
    for (int m = 1; m <= 5; ++m)
        CHECK(inversion_coefficient(Rat(0), Rat(1), m) ==
              rat_pow(Rat(m), m) / Rat(factorial(m)));
    CHECK(inversion_check(Rat(3) / 5, Rat(2), 12).is_zero());
    CHECK(inversion_check(Rat(-7) / 4, Rat(1) / 3, 10).is_zero());

    CHECK(moebius_relation_check(Rat(1), Rat(1), 10).is_zero());
    CHECK(moebius_relation_check(Rat(5, 3), Rat(-1) / 2, 8).is_zero());

    for (const Rat &r : xdiffequation_residual(Rat(4, 7), 12)) CHECK(r == 0);
}
