#ifndef KPCOHFT_SPECTRAL_HPP
#define KPCOHFT_SPECTRAL_HPP

#include "kpcohft/ratfn.hpp"
#include "kpcohft/zseries.hpp"

#include <map>
#include <memory>
#include <vector>

namespace kpcohft {

struct RamPoint {
    bool at_infinity;
    Rat a; // meaningful when finite
};

/// Rational spectral curve on the line: one-forms dx = f(z) dz, dy = h(z) dz.
/// Validated at construction: every zero of dx (including at infinity) is
/// simple and rational, dy is regular and nonzero there.
class SpectralCurve {
public:
    SpectralCurve(RatFn dx, RatFn dy);

    const RatFn &dx() const { return dx_; }
    const RatFn &dy() const { return dy_; }
    const std::vector<RamPoint> &ramification() const { return ram_; }
    std::vector<Rat> finite_ramification() const;

    /// x = z^2, y = z.
    static SpectralCurve airy();

    SpectralCurve with_dy_scaled(const Rat &lambda) const;

private:
    RatFn dx_, dy_;
    std::vector<RamPoint> ram_;
};

/// Local deck transformation at a finite simple ramification point a:
/// the series sigma(t) = -t + O(t^2) with x(a + sigma(t)) = x(a + t).
QSeries local_involution(const SpectralCurve &c, const Rat &a, int depth);

/// Stable correlator as a finite sum of separable terms
///   sum_j c_j prod_i f_{j,i}(z_i) dz_i
/// with rational f whose poles lie at the ramification points.
struct TensorTerm {
    Rat c;
    std::vector<RatFn> f;
};
struct OmegaRep {
    int g = 0, n = 0;
    std::vector<TensorTerm> terms;

    /// Value of the coefficient function at a point tuple (differentials
    /// stripped).
    Rat eval(const std::vector<Rat> &z) const;
    OmegaRep scaled(const Rat &s) const;
};

/// Memoized Eynard-Orantin recursion over one curve. Correlators are exact;
/// the residues are computed on truncated local series of generous depth.
class CorrelatorTable {
public:
    explicit CorrelatorTable(SpectralCurve curve);
    ~CorrelatorTable();
    const SpectralCurve &curve() const { return curve_; }
    const OmegaRep &get(int g, int n);

    struct Local;

private:
    const Local &local(const Rat &a);
    SpectralCurve curve_;
    std::map<std::pair<int, int>, OmegaRep> table_;
    std::map<Rat, std::unique_ptr<Local>> locals_;
};

/// Convenience wrapper: fresh table, single correlator.
OmegaRep tr_correlator(const SpectralCurve &c, int g, int n);

struct LoopEquationReport {
    bool linear_pass = false;
    bool quadratic_pass = false;
    int linear_order = 0;    // observed vanishing order in t of omega + sigma*omega
    int quadratic_order = 0; // observed vanishing order of the quadratic combination
};

/// Abstract loop equations at every ramification point, checked on series
/// with the spectator slots evaluated at generic rational points. Passing a
/// replacement for the top correlator allows negative controls.
LoopEquationReport loop_equation_check(CorrelatorTable &tab, int g, int n, int depth,
                                       const OmegaRep *replace_top = nullptr);

/// X(z) = z exp(int_0^z (dx - dz/z)); requires dx - dz/z regular at 0.
QSeries curve_X(const SpectralCurve &c, int order);

/// Compositional inverse of a series f = z + O(z^2).
QSeries revert_series(const QSeries &f);

/// omega re-expanded at z_i = 0 in the coordinate X: terms
/// c * prod_i phi_i(X_i) dX_i with phi given as X-series.
struct DossTerm {
    Rat c;
    std::vector<QSeries> phi;
};
std::vector<DossTerm> doss_expand(const SpectralCurve &c, const OmegaRep &w, int order);

/// Ordered coefficient of prod X_i^{k_i} in sum_j c_j prod phi_{j,i}.
Rat doss_coefficient(const std::vector<DossTerm> &d, const std::vector<int> &k);

/// Rebuilds every slot function from its principal parts at the finite
/// ramification points and compares; true iff omega is its own projection.
bool projection_check(const SpectralCurve &c, const OmegaRep &w);

/// Residueless one-form basis dxi^a = dz/(z-a)^2, one per ramification point
/// (the base form at an infinite point is described in the coordinate 1/z
/// and left empty here).
struct XiBasis {
    std::vector<RamPoint> points;
    std::vector<RatFn> base;
};
XiBasis xi_basis(const SpectralCurve &c);

/// One step of dxi_{k+1} = d(dxi_k / dx).
RatFn xi_next(const SpectralCurve &c, const RatFn &xi);

} // namespace kpcohft

#endif
