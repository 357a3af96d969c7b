#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kpcohft/kpcheck.hpp"
#include "kpcohft/tau.hpp"

#include <array>
#include <utility>
#include <vector>

using namespace kpcohft;

namespace {

PSeries pvar(int k, int W) { return PSeries::variable(k, W); }

} // namespace

TEST_CASE("q-form residuals on simple inputs") {
    PSeries zero(8);
    CHECK(kp_residual_q1(zero, 6, 4).pass);
    CHECK(kp_residual_q2(zero, 6, 4).pass);

    // F = q2^2 is not a tau logarithm: residual is the constant 2
    PSeries F = pvar(2, 8) * pvar(2, 8);
    ResidualReport r = kp_residual_q1(F, 6, 4);
    CHECK_FALSE(r.pass);
    CHECK(r.residual.coeff({}).coeff(0) == 2);
}

TEST_CASE("t-form residuals and cross-substitution") {
    // hypergeometric tau log solves the first t-equation
    PSeries F = free_energy(build_tau(TauData::naive_hodge(), 6, 14));
    CHECK(kp_residual_t(F, 1, 6, 2).pass);
    CHECK(kp_residual_t(F, 2, 6, 1).pass);

    // t1 t2 alone is annihilated by every term of both equations
    PSeries f12 = pvar(1, 8) * pvar(2, 8) * (Rat(1) / 2);
    CHECK(kp_residual_t(f12, 1, 6, 4).pass);
    CHECK(kp_residual_t(f12, 2, 6, 3).pass);
    // t2^2 is a genuine failure: 3 F_{t2t2} = 6
    PSeries bad = pvar(2, 8) * pvar(2, 8) * (Rat(1) / 4);
    ResidualReport rb = kp_residual_t(bad, 1, 6, 4);
    CHECK_FALSE(rb.pass);
    CHECK(rb.residual.coeff({}).coeff(0) == 6);

    // the q-variables coincide with the power sums: the t-form equations are
    // 12 times the q-form ones
    PSeries G = pvar(1, 9) * pvar(1, 9) * pvar(1, 9) * pvar(1, 9) +
                pvar(2, 9) * pvar(1, 9) * Rat(5) + pvar(2, 9) * pvar(2, 9) * pvar(1, 9);
    for (int which : {1, 2}) {
        ResidualReport rt = kp_residual_t(G, which, 6, 4);
        ResidualReport rq = (which == 1) ? kp_residual_q1(G, 6, 4) : kp_residual_q2(G, 6, 4);
        CHECK(rt.residual == rq.residual * Rat(12));
        CHECK_FALSE(rt.pass);
    }

    // adding a linear form does not change any residual
    PSeries lin = pvar(1, 9) * Rat(7) + pvar(3, 9) * (Rat(-2) / 5);
    CHECK(kp_residual_q1(G + lin, 6, 4).residual == kp_residual_q1(G, 6, 4).residual);
    CHECK(kp_residual_t(G + lin, 2, 6, 4).residual == kp_residual_t(G, 2, 6, 4).residual);
}

TEST_CASE("pluecker relations") {
    // Z = exp(p1): a_nu = 1/prod(hooks); base relation 1/12 - 1/3 + 1/4 = 0
    PSeries Z = exp_pseries(pvar(1, 7));
    ResidualReport r = pluecker_check(Z, 7, 4);
    CHECK(r.pass);
    CHECK(r.relation_residuals.size() > 1); // base + translates

    // hypergeometric tau passes at |nu| <= 6
    PSeries Zh = build_tau(TauData::naive_hodge(), 6, 14);
    CHECK(pluecker_check(Zh, 6, 4).pass);

    // random-ish rational family II data
    std::vector<Rat> R1{0, Rat(1), Rat(1, 3)}, R2{1, Rat(-1, 2)}, R3{1, Rat(2, 5)},
        R4{1, Rat(0), Rat(1, 7)};
    TauData fam = TauData::family_II(Rat(3, 4), R1, R2, R3, R4, 1, 8, 4);
    PSeries Zf = build_tau(fam, 6, 14);
    CHECK(pluecker_check(Zf, 6, 4).pass);

    // perturbing one Schur coefficient breaks the relation
    PSeries Zbad = Z + schur_in_powersums({2, 1}, 7);
    CHECK_FALSE(pluecker_check(Zbad, 7, 4).pass);
}

TEST_CASE("hirota residual") {
    CHECK(hirota_residual(PSeries(9), 4, 4).pass);
    CHECK(hirota_residual(pvar(1, 9), 4, 4).pass); // translation tau exp(p1)

    PSeries F = free_energy(build_tau(TauData::naive_hodge(), 9, 20));
    CHECK(hirota_residual(F, 4, 2).pass);

    CHECK_FALSE(hirota_residual(pvar(2, 9) * pvar(2, 9), 4, 4).pass);
}

TEST_CASE("hirota obstruction is proportional to the first t-equation") {
    // For F = alpha p2^2 + beta p3 p1 + gamma p1^4 the first t-equation
    // residual has constant term 24 alpha - 12 beta + 24 gamma. The lowest
    // Hirota coefficient must be a fixed multiple of it.
    auto mkF = [](const Rat &a, const Rat &b, const Rat &c) {
        return pvar(2, 9) * pvar(2, 9) * a + pvar(3, 9) * pvar(1, 9) * b +
               pvar(1, 9) * pvar(1, 9) * pvar(1, 9) * pvar(1, 9) * c;
    };
    auto probe = [&](const Rat &a, const Rat &b, const Rat &c) {
        ResidualReport h = hirota_residual(mkF(a, b, c), 4, 4);
        // lowest total-weight monomial of the residual
        const auto &terms = h.residual.terms();
        Rat lowest = 0;
        int bestw = 1 << 20;
        PMonomial bm;
        for (const auto &[m, coef] : terms) {
            int w = monomial_weight(m);
            if (w < bestw) bestw = w, bm = m, lowest = coef.coeff(0);
        }
        return std::pair<PMonomial, Rat>(bm, lowest);
    };
    auto [m1, v1] = probe(1, 0, 0);
    Rat rho1 = 24;
    Rat kappa = v1 / rho1;
    CHECK(kappa != 0);
    for (auto [a, b, c] : std::vector<std::array<Rat, 3>>{
             {Rat(2), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)},
             {Rat(1), Rat(3), Rat(1, 2)}}) {
        ResidualReport h = hirota_residual(mkF(a, b, c), 4, 4);
        Rat rho = 24 * a - 12 * b + 24 * c;
        CHECK(h.residual.coeff(m1).coeff(0) == kappa * rho);
    }
    // a cancelling combination: 24a - 12b = 0
    ResidualReport h0 = hirota_residual(mkF(1, 2, 0), 4, 4);
    CHECK(h0.residual.coeff(m1).coeff(0) == 0);
}
