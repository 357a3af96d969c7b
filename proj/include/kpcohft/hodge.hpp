#ifndef KPCOHFT_HODGE_HPP
#define KPCOHFT_HODGE_HPP

#include "kpcohft/changevars.hpp"
#include "kpcohft/pseries.hpp"
#include "kpcohft/zseries.hpp"

#include <array>
#include <vector>

namespace kpcohft {

/// psi and lambda_1 intersection numbers on the moduli of stable curves for
/// g <= 1, computed from the genus-zero closed form and the string and
/// dilaton equations seeded by the two genus-one values 1/24. Returns 0 on
/// degree mismatch; throws for g >= 2.
Rat intersection_number(int g, int n, std::vector<int> psi_exponents, int lambda_power);

/// Generating function of a rank-one CohFT given by a product of total Hodge
/// classes with weights `lambda_weights` (one factor Lambda(a) per entry):
/// sum over stable (g,n) with 1 <= 2g-2+n <= hbar_max of
///   hbar^{2g-2+n}/n! * sum_{k's, e} <lambda_1^e psi^k> e_1(weights)^e
///   * prod_i T_{k_i}
/// with the T_k given as linear forms in q. Requires hbar_max <= 2 (the
/// intersection table stops at genus one).
PSeries cohft_generating(const std::vector<Rat> &lambda_weights,
                         const std::vector<LinearForm> &T, int hbar_max, int qcap);

/// Parameters of the Calabi-Yau triple Hodge theory, using w = s^2 - 1 so
/// that sqrt(w+1) = s stays rational.
struct TripleHodgeParams {
    Rat u;
    Rat s;
    TripleHodgeParams(const Rat &u_, const Rat &s_);
    Rat w() const { return s * s - 1; }
    Rat beta() const { return u * u * u / s; }
    /// (a, b, c) with 1/a + 1/b + 1/c = 0
    std::array<Rat, 3> cy_triple() const;
};

/// T_0 = q_1, T_{k+1} = sum_m m (u^2 q_m + u(w+2)/s q_{m+1} + q_{m+2}) d/dq_m T_k,
/// truncated at q-index M.
LinearForm triple_hodge_T(const TripleHodgeParams &p, int k, int M);

/// Character-sum form of the topological vertex partition function,
/// normalized to match build_tau on the corresponding Family II data:
///   sum_{mu,nu} chi^nu_mu / z_mu e^{(1/2 - 1/w) hbar f_2(nu)}
///   prod_box (beta w / varsigma(hbar h_box)) p_mu.
PSeries mv_rhs(const Rat &w, const Rat &beta, int size_cap, int hbar_cap);

/// Full change-of-variables pipeline for the triple Hodge theory: the
/// vertex partition function at the content-sign-flipped parameters
/// (-w, -beta), logged, with p_k substituted by the q-forms of the
/// inversion-lemma X(z), unstable hbar <= 0 parts dropped, and the
/// dictionary rescaling hbar^s -> (beta w)^s hbar^s, q-weight m -> u^{-4m}
/// applied. The result equals cohft_generating on the Calabi-Yau triple
/// with the triple_hodge_T forms, identically. Requires w != 0.
PSeries triple_hodge_pipeline(const TripleHodgeParams &p, int qcap, int hbar_cap);

/// Closed-form X(z) = z/(1+(w+1)bz) * ((1+bz)/(1+(w+1)bz))^{1/w}.
QSeries inversion_X(const Rat &w, const Rat &beta, int order);

/// Coefficients of the inverse series z(X) = sum_m C_m X^m,
/// C_m = prod_{j=1}^{m-1}(m + j w)/(m-1)! * beta^{m-1}.
Rat inversion_coefficient(const Rat &w, const Rat &beta, int m);

/// compose(z(X), X(z)) - z, expected identically zero through `order`.
QSeries inversion_check(const Rat &w, const Rat &beta, int order);

/// Difference between inversion_X and the vertex-curve
/// X(z) = z (1 - beta w z)^{1/w} precomposed with z -> z/(1+(w+1)beta z).
QSeries moebius_relation_check(const Rat &w, const Rat &beta, int order);

/// Residuals of dX/dbeta + ((w+2)z + (w+1)beta z^2) z dX/dz = 0 for the
/// inversion_X series, reduced by homogeneity X_m(beta) = x_m beta^{m-1} to
/// (m-1)x_m + (w+2)(m-1)x_{m-1} + (w+1)(m-2)x_{m-2} per degree m.
std::vector<Rat> xdiffequation_residual(const Rat &w, int order);

} // namespace kpcohft

#endif
