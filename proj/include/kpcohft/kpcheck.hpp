#ifndef KPCOHFT_KPCHECK_HPP
#define KPCOHFT_KPCHECK_HPP

#include "kpcohft/partitions.hpp"
#include "kpcohft/pseries.hpp"

#include <string>
#include <utility>
#include <vector>

namespace kpcohft {

/// Outcome of one integrability check. `residual` holds the surviving PDE
/// residual restricted to the asserted window; `relation_residuals` holds
/// named scalar residuals (one per Plucker relation). pass is true iff every
/// asserted coefficient is exactly zero.
struct ResidualReport {
    std::string label;
    PSeries residual;
    std::vector<std::pair<std::string, HLaurent>> relation_residuals;
    int weight_cap = 0;
    int hbar_cap = 0;
    bool pass = false;
};

/// First KP equation for F in the q-variables:
/// F_{q2 q2} - F_{q3 q1} + F_{q1^4}/12 + (F_{q1 q1})^2 / 2.
ResidualReport kp_residual_q1(const PSeries &F, int hbar_cap, int weight_cap);

/// Second KP equation in the q-variables:
/// F_{q3 q2} - F_{q4 q1} + F_{q2 q1^3}/6 + F_{q2 q1} F_{q1 q1}.
ResidualReport kp_residual_q2(const PSeries &F, int hbar_cap, int weight_cap);

/// KP equations in the standard times t_k = p_k / k, for F given in the
/// power-sum variables p_k. which selects the first or second equation:
///   1: 3 F_{t2 t2} - 4 F_{t3 t1} + F_{t1^4} + 6 (F_{t1 t1})^2
///   2: 2 F_{t3 t2} - 3 F_{t4 t1} + F_{t2 t1^3} + 6 F_{t2 t1} F_{t1 t1}
ResidualReport kp_residual_t(const PSeries &F, int which, int hbar_cap, int weight_cap);

/// Re-expands Z (constant term 1, power-sum variables) on the Schur basis and
/// checks the three-term Plucker relation
///   a_{(2,2)} a_{()} - a_{(2,1)} a_{(1)} + a_{(2)} a_{(1,1)} = 0
/// together with its translates under prepending a first row of length r and
/// under adding a first column of height c, for all sizes within size_cap.
ResidualReport pluecker_check(const PSeries &Z, int size_cap, int hbar_cap);

/// Bilinear residue identity for tau = exp F at small caps: the z^{-1}
/// coefficient of
///   exp(sum_k (p_k - p'_k) z^k / k) tau({p_k - z^{-k}}) tau({p'_k + z^{-k}})
/// must vanish identically in the two alphabets. Coefficients are asserted
/// for monomials of weight <= weight_cap in each alphabet separately.
ResidualReport hirota_residual(const PSeries &F, int weight_cap, int hbar_cap);

} // namespace kpcohft

#endif
