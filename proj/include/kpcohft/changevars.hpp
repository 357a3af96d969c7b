#ifndef KPCOHFT_CHANGEVARS_HPP
#define KPCOHFT_CHANGEVARS_HPP

#include "kpcohft/bivariate.hpp"
#include "kpcohft/pseries.hpp"
#include "kpcohft/tau.hpp"
#include "kpcohft/zseries.hpp"

#include <map>
#include <vector>

namespace kpcohft {

/// Spectral-side series data: X = z e^{-psi(y(z))} with X = z + O(z^2),
/// Q = z X'/X, and the reciprocal coefficients T_l with Q^{-1} = sum T_l z^l.
/// x(z) = log z - psi(y(z)) is never materialized; the log z part lives in
/// the operators D = (z/Q) d/dz and Q only.
struct SpectralData {
    QSeries X;
    QSeries Q;
    QSeries Tcal;     // reciprocal of Q
    QSeries y;        // y(z) at hbar = 0 (zero when constructed from X alone)
    QSeries psi_of_y; // psi(y(z))

    static SpectralData build_X(const TauData &data, int order);
    static SpectralData from_X_series(const QSeries &X);

    /// D f = (z/Q) df/dz.
    QSeries D(const QSeries &f) const;
};

/// Finite q-linear form sum_m coeff[m] q_m, truncated at the caller's cap.
using LinearForm = std::map<int, Rat>;

/// Coefficients of X^k as a z-series, reindexed z^m -> q_m: the linear
/// change of variables p_k(q).
LinearForm p_of_q(const SpectralData &sd, int k, int M);

/// T^j_k forms: base T^j_{-1} = q_{j+1}/(j+1); step applies the T-weighted
/// Euler operator sum m T_l q_{m+l} d/dq_m. Computed both through the
/// q-operator recursion and through D^{k+1} z^{j+1}/(j+1); throws if the two
/// routes disagree.
LinearForm t_recursion(const SpectralData &sd, int j, int k, int M);

/// Substitutes p_k -> p_of_q(k) into a series in p. Entries beyond the
/// weight cap of F are dropped; the substitution preserves weight grading
/// upward so no reliable coefficient is lost.
PSeries substitute_p_of_q(const PSeries &F, const SpectralData &sd);

/// Removes all hbar exponents <= 0 from every coefficient: exactly the
/// subtraction of the unstable (0,1) and (0,2) parts of a free energy.
PSeries drop_nonpositive_hbar(const PSeries &F);

/// H_{0,1} as a z-series with D(H01) = y(z); the X^0 coefficient of y must
/// vanish. Also exposed as the p-linear form sum b_k/k p_k.
QSeries unstable_H01(const SpectralData &sd, const QSeries &y, int order);
LinearForm unstable_H01_form(const SpectralData &sd, const QSeries &y, int order);

/// H_{0,2}(z1,z2) = log((z1^{-1}-z2^{-1})/(X1^{-1}-X2^{-1})) for a series
/// X = a z + O(z^2), split as log(log_arg) + ser with ser(0,0) = 0.
struct H02Result {
    Rat log_arg;
    BivarSeries ser;
};
H02Result unstable_H02(const QSeries &X, int order);

/// The KP-preserving flow generator at a rational beta:
///   A = (1 - 1/Q(beta z)) (z/beta) d/dz - (1/2) dH02/dbeta at fixed X.
/// euler[l] is the coefficient of z^{l+1} d/dz (equal to -T_l beta^{l-1});
/// quad is the quadratic completion as a bivariate series in (z1, z2),
/// whose z1^i z2^j coefficient multiplies q_i q_j under the correspondence.
struct FlowGenerator {
    std::vector<Rat> euler; // index l = 1..order
    BivarSeries quad;
};
FlowGenerator flow_generator(const SpectralData &sd, const Rat &beta, int order);

/// -(1/2) dH02/dbeta at fixed X from the closed form
///   dH02/dbeta|_X = (1/(beta(z1^{-1}-z2^{-1})))(1/(z1 Q(beta z1)) -
///   1/(z2 Q(beta z2))) - 1/beta,
/// for cross-checking the quadratic part of the flow generator.
BivarSeries flow_quad_from_h02(const SpectralData &sd, const Rat &beta, int order);

/// Detects whether Q^{-1} is a polynomial (all T_l = 0 beyond some degree,
/// up to the inspection cap) and factors it over the rationals when it is.
struct FinitenessVerdict {
    bool polynomial = false;
    int degree = -1;                        // degree of Q^{-1} when polynomial
    bool fully_factored = false;            // all roots rational and simple
    std::vector<Rat> roots_c;               // Q^{-1} = prod (1 - c_j z)
    std::vector<Rat> log_coeffs;            // A_j with x = log z - sum A_j log(1-c_j z)
};
FinitenessVerdict finiteness_check(const SpectralData &sd, int degree_cap);

} // namespace kpcohft

#endif
