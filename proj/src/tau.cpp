#include "kpcohft/tau.hpp"

#include "kpcohft/parallel.hpp"
#include "kpcohft/ratfn.hpp"
#include "kpcohft/zseries.hpp"

#include <mutex>
#include <stdexcept>

namespace kpcohft {

TauData TauData::naive_hodge() {
    TauData d;
    d.psi_hat[{1, 0}] = 1;
    d.y_hat[{1, 0}] = 1;
    d.tag = FamilyTag::FamilyII; // psi = y, yhat = z is alpha=1, R1/R2=z
    return d;
}

TauData TauData::family_II(const Rat &alpha, const std::vector<Rat> &R1,
                           const std::vector<Rat> &R2, const std::vector<Rat> &R3,
                           const std::vector<Rat> &R4, const Rat &lambda, int kmax,
                           int mmax) {
    Poly p1(R1), p2(R2), p3(R3), p4(R4);
    if (!p1.is_zero() && p1.coeff(0) != 0)
        throw std::invalid_argument("family_II: R1 must vanish at 0");
    if (p2.coeff(0) == 0) throw std::invalid_argument("family_II: R2(0) = 0");
    if (p3.coeff(0) != 1 || p4.coeff(0) != 1)
        throw std::invalid_argument("family_II: R3(0) and R4(0) must be 1");
    if (lambda == 0) throw std::invalid_argument("family_II: lambda = 0");

    TauData d;
    d.tag = (lambda == 1) ? FamilyTag::FamilyII : FamilyTag::ExtendedFamilyII;
    if (alpha != 0) d.psi_hat[{1, 0}] = alpha;

    QSeries base = p1.series(kmax) / p2.series(kmax);
    QSeries lg = log_series(p3.series(kmax)) - log_series(p4.series(kmax));
    int cap = 2 * mmax;
    for (int k = 1; k <= kmax; ++k) {
        HLaurent v = HLaurent(base.coeff(k));
        if (lg.coeff(k) != 0) {
            HLaurent s = s_factor_hbar(Rat(k) / lambda, cap).inverse(cap);
            v += s * (lambda * lg.coeff(k));
        }
        for (const auto &[e, c] : v.coeffs()) {
            // S-inverse is even in hbar
            d.y_hat[{k, e / 2}] = c;
        }
    }
    d.y_hbar_valid = cap;
    return d;
}

TauData TauData::vertex_data(const Rat &w, const Rat &beta, int kmax, int mmax) {
    if (w == 0) throw std::invalid_argument("vertex_data: w = 0");
    TauData d;
    d.tag = FamilyTag::FamilyII;
    d.psi_hat[{1, 0}] = Rat(-1) / w;
    int cap = 2 * mmax;
    Rat bw = beta * w;
    Rat bwk = 1;
    for (int k = 1; k <= kmax; ++k) {
        bwk *= bw;
        if (bwk == 0) break;
        HLaurent v = s_factor_hbar(k, cap).inverse(cap) * (bwk / Rat(k));
        for (const auto &[e, c] : v.coeffs()) d.y_hat[{k, e / 2}] = c;
    }
    d.y_hbar_valid = cap;
    return d;
}

TauData TauData::rescaled(const Rat &lambda) const {
    if (lambda == 0) throw std::invalid_argument("rescaled: lambda = 0");
    TauData d = *this;
    d.psi_hat.clear();
    d.y_hat.clear();
    for (const auto &[km, c] : psi_hat)
        d.psi_hat[km] = c * rat_pow(lambda, -km.first - 2 * km.second);
    for (const auto &[km, s] : y_hat)
        d.y_hat[km] = s * rat_pow(lambda, 1 - 2 * km.second);
    if (lambda != 1 && tag == FamilyTag::FamilyII) d.tag = FamilyTag::ExtendedFamilyII;
    return d;
}

HLaurent content_weight(const TauData &data, const Partition &nu, int cap) {
    HLaurent arg;
    for (int c : contents(nu)) {
        for (const auto &[km, coef] : data.psi_hat) {
            auto [k, m] = km;
            // psi evaluated at y = hbar * content: term c_{k,m} c^k h^{k+2m}.
            // The sign of the content argument is fixed so that the simple
            // Hurwitz model gives D H_{0,1}(X(z)) = y(z) with X = z e^{-z};
            // the opposite sign produces the image under the involution
            // p_k -> (-1)^{k-1} p_k instead.
            int e = k + 2 * m;
            if (e > cap) continue;
            Rat val = coef * rat_pow(Rat(c), k);
            if (val != 0) arg += HLaurent::term(val, e);
        }
    }
    arg.truncate_to(std::min(cap, data.psi_hbar_valid));
    return arg.exp(cap);
}

HLaurent yhat_over_h(const TauData &data, int k) {
    HLaurent v;
    for (const auto &[km, s] : data.y_hat)
        if (km.first == k && s != 0) v += HLaurent::term(s, 2 * km.second - 1);
    v.truncate_to(data.y_hbar_valid);
    return v;
}

HLaurent schur_specialize(const TauData &data, const Partition &nu, int cap) {
    int n = partition_size(nu);
    if (n == 0) return HLaurent(1);
    HLaurent acc;
    std::map<int, HLaurent> yh;
    for (const Partition &mu : partitions_of(n)) {
        Int chi = character(nu, mu);
        if (chi == 0) continue;
        HLaurent prod(1);
        for (int k : mu) {
            auto it = yh.find(k);
            if (it == yh.end()) it = yh.emplace(k, yhat_over_h(data, k)).first;
            prod *= it->second;
            prod.truncate_to(cap);
            if (prod.is_zero() && prod.valid_to() >= cap) break;
        }
        acc += prod * (Rat(chi) / Rat(z_mu(mu)));
    }
    return acc;
}

PSeries build_tau(const TauData &data, int W, int e_max) {
    for (const auto &[km, c] : data.psi_hat)
        if (km.first < 1) throw std::invalid_argument("build_tau: psi constant term");
    for (const auto &[km, s] : data.y_hat)
        if (km.first < 1) throw std::invalid_argument("build_tau: yhat constant term");

    std::vector<Partition> nus = partitions_up_to(W);
    // warm the character cache serially; partitions_of is cheap
    for (int n = 1; n <= W; ++n)
        for (const auto &nu : partitions_of(n)) character(nu, nu);

    int cap = e_max + 2 * W; // room for the hbar^{-|nu|} leading behavior
    PSeries tau = PSeries::constant(HLaurent(1), W);
    std::mutex mtx;
    parallel_for((int)nus.size(), [&](int i) {
        const Partition &nu = nus[i];
        if (nu.empty()) return;
        HLaurent a = schur_specialize(data, nu, cap);
        if (a.is_zero() && a.valid_to() >= cap) return;
        a *= content_weight(data, nu, cap);
        PSeries term = schur_in_powersums(nu, W) * a;
        std::lock_guard<std::mutex> lk(mtx);
        tau += term;
    });
    return tau;
}

PSeries free_energy(const PSeries &Z) { return log_pseries(Z); }

std::map<Partition, Rat> extract_Hgn(const PSeries &F, int g, int n) {
    int e = 2 * g - 2 + n;
    std::map<Partition, Rat> out;
    for (const auto &[mono, c] : F.terms()) {
        if (monomial_length(mono) != n) continue;
        bool base = true;
        Partition mu;
        for (const auto &[v, mult] : mono) {
            if (v & ~kVarWeightMask) base = false;
            for (int t = 0; t < mult; ++t) mu.push_back(v);
        }
        if (!base) continue;
        std::sort(mu.rbegin(), mu.rend());
        Rat val = c.coeff(e); // throws beyond the validity window
        if (val != 0) out[mu] = val;
    }
    return out;
}

} // namespace kpcohft
