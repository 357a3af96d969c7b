#ifndef KPCOHFT_TAU_HPP
#define KPCOHFT_TAU_HPP

#include "kpcohft/hlaurent.hpp"
#include "kpcohft/partitions.hpp"
#include "kpcohft/pseries.hpp"
#include "kpcohft/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace kpcohft {

enum class FamilyTag { FamilyI, FamilyII, ExtendedFamilyII, Generic };

/// Data of a hypergeometric partition function: the weight generator
/// psi(h^2, y) = sum c_{k,m} y^k h^{2m} and the time specialization
/// yhat(h^2, z) = sum s_{k,m} z^k h^{2m}, both with k >= 1 (no constant
/// terms). The *_hbar_valid bounds record through which hbar order the
/// coefficient tables are complete; factories that expand transcendental
/// factors set them to the expansion depth.
struct TauData {
    std::map<std::pair<int, int>, Rat> psi_hat; // (k, m) -> c_{k,m}
    std::map<std::pair<int, int>, Rat> y_hat;   // (k, m) -> s_{k,m}
    FamilyTag tag = FamilyTag::Generic;
    int psi_hbar_valid = HLaurent::kInf;
    int y_hbar_valid = HLaurent::kInf;

    /// psi(h^2, y) = y, yhat = z: the single-Hodge model.
    static TauData naive_hodge();

    /// Family II data: psi = alpha*y, yhat = R1/R2 + lambda *
    /// S(lambda^{-1} h z d/dz)^{-1} log(R3/R4), with R1(0)=0, R2(0)!=0,
    /// R3(0)=R4(0)=1. Coefficients computed for k <= kmax, m <= mmax.
    static TauData family_II(const Rat &alpha, const std::vector<Rat> &R1,
                             const std::vector<Rat> &R2, const std::vector<Rat> &R3,
                             const std::vector<Rat> &R4, const Rat &lambda, int kmax,
                             int mmax);

    /// The topological-vertex data: psi = -y/w, yhat_k = (beta w)^k /
    /// (k S(k hbar)). Requires w != 0.
    static TauData vertex_data(const Rat &w, const Rat &beta, int kmax, int mmax);

    /// The hbar-rescaling action: psi(l^{-2}h^2, l^{-1}y), l*yhat(l^{-2}h^2, z).
    TauData rescaled(const Rat &lambda) const;
};

/// exp of the content sum of psi over the boxes of nu, evaluated at
/// y = -hbar * content, truncated at hbar^cap.
HLaurent content_weight(const TauData &data, const Partition &nu, int cap);

/// The power-sum value yhat_k(h^2)/h as a Laurent polynomial in hbar.
HLaurent yhat_over_h(const TauData &data, int k);

/// s_nu evaluated at p_k = yhat_k/h.
HLaurent schur_specialize(const TauData &data, const Partition &nu, int cap);

/// The hypergeometric partition function
///   Z(p) = sum_{|nu| <= W} content_weight(nu) schur_specialize(nu) s_nu(p),
/// with every hbar coefficient tracked through hbar^e_max where reliable.
/// The nu-sum runs in parallel over partitions.
PSeries build_tau(const TauData &data, int W, int e_max);

/// F = log Z; requires constant term exactly 1.
PSeries free_energy(const PSeries &Z);

/// Coefficients of the genus-g n-point part: maps the index multiset mu
/// (as a partition, length n) to [hbar^{2g-2+n}] of the p_mu coefficient
/// of F. Throws if a requested coefficient lies outside the validity
/// window of F.
std::map<Partition, Rat> extract_Hgn(const PSeries &F, int g, int n);

} // namespace kpcohft

#endif
