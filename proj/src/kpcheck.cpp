#include "kpcohft/kpcheck.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace kpcohft {

namespace {

std::string partition_name(const Partition &p) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << ")";
    return os.str();
}

ResidualReport finish_pde(std::string label, PSeries R, int hbar_cap, int weight_cap) {
    ResidualReport rep;
    rep.label = std::move(label);
    rep.weight_cap = std::min(weight_cap, R.weight_cap());
    rep.hbar_cap = hbar_cap;
    rep.residual = R.truncated(rep.weight_cap).hbar_truncated(hbar_cap);
    rep.pass = rep.residual.is_zero();
    return rep;
}

// derivative in the KP time t_k = p_k / k, for F in the p-variables
PSeries dt(const PSeries &F, int k) { return F.derivative(k) * Rat(k); }

} // namespace

ResidualReport kp_residual_q1(const PSeries &F, int hbar_cap, int weight_cap) {
    if (F.weight_cap() < 4)
        throw std::invalid_argument("kp_residual_q1: need weight cap >= 4");
    PSeries F11 = F.derivative(1).derivative(1);
    PSeries R = F.derivative(2).derivative(2) - F.derivative(3).derivative(1) +
                F11.derivative(1).derivative(1) * Rat(Rat(1) / 12) +
                (F11 * F11) * Rat(Rat(1) / 2);
    return finish_pde("kp-q1", std::move(R), hbar_cap, weight_cap);
}

ResidualReport kp_residual_q2(const PSeries &F, int hbar_cap, int weight_cap) {
    if (F.weight_cap() < 5)
        throw std::invalid_argument("kp_residual_q2: need weight cap >= 5");
    PSeries F21 = F.derivative(2).derivative(1);
    PSeries R = F.derivative(3).derivative(2) - F.derivative(4).derivative(1) +
                F21.derivative(1).derivative(1) * Rat(Rat(1) / 6) +
                F21 * F.derivative(1).derivative(1);
    return finish_pde("kp-q2", std::move(R), hbar_cap, weight_cap);
}

ResidualReport kp_residual_t(const PSeries &F, int which, int hbar_cap, int weight_cap) {
    if (which != 1 && which != 2)
        throw std::invalid_argument("kp_residual_t: which must be 1 or 2");
    PSeries R;
    if (which == 1) {
        if (F.weight_cap() < 4)
            throw std::invalid_argument("kp_residual_t: need weight cap >= 4");
        PSeries F11 = dt(dt(F, 1), 1);
        R = dt(dt(F, 2), 2) * Rat(3) - dt(dt(F, 3), 1) * Rat(4) +
            dt(dt(F11, 1), 1) + (F11 * F11) * Rat(6);
    } else {
        if (F.weight_cap() < 5)
            throw std::invalid_argument("kp_residual_t: need weight cap >= 5");
        PSeries F21 = dt(dt(F, 2), 1);
        R = dt(dt(F, 3), 2) * Rat(2) - dt(dt(F, 4), 1) * Rat(3) +
            dt(dt(F21, 1), 1) + (F21 * dt(dt(F, 1), 1)) * Rat(6);
    }
    return finish_pde(which == 1 ? "kp-t1" : "kp-t2", std::move(R), hbar_cap, weight_cap);
}

ResidualReport pluecker_check(const PSeries &Z, int size_cap, int hbar_cap) {
    if (!(Z.coeff({}) - HLaurent(1)).is_zero())
        throw std::invalid_argument("pluecker_check: constant term must be 1");
    if (Z.weight_cap() < size_cap)
        throw std::invalid_argument("pluecker_check: size cap exceeds weight cap");

    // Schur coefficients a_nu = sum_mu chi^nu_mu [p_mu] Z, |nu| <= size_cap
    std::map<Partition, HLaurent> a;
    a[{}] = HLaurent(1);
    for (int n = 1; n <= size_cap; ++n) {
        std::vector<Partition> parts = partitions_of(n);
        for (const Partition &nu : parts) {
            HLaurent v;
            for (const Partition &mu : parts) {
                Int chi = character(nu, mu);
                if (chi == 0) continue;
                v += Z.coeff_of_parts(mu) * Rat(chi);
            }
            a[nu] = v;
        }
    }
    auto have = [&](const Partition &p) { return partition_size(p) <= size_cap; };

    // sextuples (P1,...,P6) checked as a(P1)a(P2) - a(P3)a(P4) + a(P5)a(P6)
    std::vector<std::array<Partition, 6>> rels;
    std::array<Partition, 6> base = {
        Partition{2, 2}, Partition{}, Partition{2, 1},
        Partition{1},    Partition{2}, Partition{1, 1}};
    rels.push_back(base);
    for (int r = 2; r + 4 <= size_cap; ++r) {
        std::array<Partition, 6> t;
        for (int i = 0; i < 6; ++i) {
            t[i] = Partition{r};
            t[i].insert(t[i].end(), base[i].begin(), base[i].end());
        }
        rels.push_back(t);
    }
    for (int c = 2; c + 4 <= size_cap; ++c) {
        std::array<Partition, 6> t;
        for (int i = 0; i < 6; ++i) {
            Partition p = base[i];
            p.resize(c, 0);
            for (int &x : p) x += 1;
            t[i] = p;
        }
        rels.push_back(t);
    }

    ResidualReport rep;
    rep.label = "pluecker";
    rep.weight_cap = size_cap;
    rep.hbar_cap = hbar_cap;
    rep.pass = true;
    for (const auto &rel : rels) {
        bool ok = true;
        for (const Partition &p : rel) ok = ok && have(p);
        if (!ok) continue;
        HLaurent res = a.at(rel[0]) * a.at(rel[1]) - a.at(rel[2]) * a.at(rel[3]) +
                       a.at(rel[4]) * a.at(rel[5]);
        res.truncate_to(hbar_cap);
        std::string name = partition_name(rel[0]) + partition_name(rel[1]);
        rep.relation_residuals.emplace_back(name, res);
        if (!res.is_zero()) rep.pass = false;
    }
    return rep;
}

namespace {

Rat binom(int n, int k) {
    return Rat(factorial(n)) / (Rat(factorial(k)) * Rat(factorial(n - k)));
}

// Expands tau({p_k + sign * z^{-k}}): result[n] is the z^{-n} coefficient,
// a PSeries with monomial weight capped at rho_cap.
std::vector<PSeries> shift_expand(const PSeries &tau, int sign, int zmax, int rho_cap) {
    std::vector<PSeries> out(zmax + 1, PSeries(rho_cap));
    for (const auto &[mono, c] : tau.terms()) {
        // choose how many of each variable's powers feed the z-shift
        std::function<void(std::size_t, int, const Rat &, PMonomial)> rec =
            [&](std::size_t i, int zdeg, const Rat &f, PMonomial rest) {
                if (i == mono.size()) {
                    if (monomial_weight(rest) > rho_cap) return;
                    out[zdeg] += PSeries::monomial(c * f, rest, rho_cap);
                    return;
                }
                auto [v, e] = mono[i];
                int k = var_weight(v);
                for (int j = 0; j <= e; ++j) {
                    int nz = zdeg + k * j;
                    if (nz > zmax) break;
                    Rat nf = f * binom(e, j);
                    if (sign < 0 && j % 2 == 1) nf = -nf;
                    PMonomial nr = rest;
                    if (j < e) nr.emplace_back(v, e - j);
                    rec(i + 1, nz, nf, nr);
                }
            };
        rec(0, 0, Rat(1), {});
    }
    return out;
}

PSeries to_alphabet_b(const PSeries &F) {
    PSeries r(F.weight_cap(), F.nmax());
    for (const auto &[mono, c] : F.terms()) {
        PMonomial m = mono;
        for (auto &[v, e] : m) v += kAlphabetB;
        r += PSeries::monomial(c, m, F.weight_cap(), F.nmax());
    }
    return r;
}

} // namespace

ResidualReport hirota_residual(const PSeries &F, int weight_cap, int hbar_cap) {
    if (!F.coeff({}).is_zero())
        throw std::invalid_argument("hirota_residual: F must have zero constant term");
    // tau must be complete through WT to assert residual total weight WT - 1
    int WT = std::min(F.weight_cap(), 2 * weight_cap + 1);
    int total_cap = WT - 1;

    PSeries tauA = exp_pseries(F.truncated(WT));
    PSeries tauB = to_alphabet_b(tauA);
    std::vector<PSeries> SA = shift_expand(tauA, -1, WT, total_cap);
    std::vector<PSeries> SB = shift_expand(tauB, +1, WT, total_cap);

    // C[n] = z^{-n} coefficient of the shifted bilinear product
    std::vector<PSeries> C(WT + 1, PSeries(total_cap));
    for (int a = 0; a <= WT; ++a)
        for (int b = 0; a + b <= WT; ++b) {
            if (SA[a].is_zero() || SB[b].is_zero()) continue;
            C[a + b] += SA[a] * SB[b];
        }

    // E[m] = z^m coefficient of exp(sum_k (p_k - p'_k) z^k / k):
    // m E[m] = sum_k (p_k - p'_k) E[m-k]
    std::vector<PSeries> E(total_cap + 1, PSeries(total_cap));
    E[0] = PSeries::constant(HLaurent(1), total_cap);
    for (int m = 1; m <= total_cap; ++m) {
        PSeries acc(total_cap);
        for (int k = 1; k <= m; ++k) {
            PSeries u = PSeries::variable(k, total_cap) -
                        PSeries::variable(k + kAlphabetB, total_cap);
            acc += u * E[m - k];
        }
        E[m] = acc * (Rat(1) / m);
    }

    PSeries R(total_cap);
    for (int m = 0; m <= total_cap && m + 1 <= WT; ++m) {
        if (E[m].is_zero() || C[m + 1].is_zero()) continue;
        R += E[m] * C[m + 1];
    }

    // assert only monomials within the per-alphabet weight window
    ResidualReport rep;
    rep.label = "hirota";
    rep.weight_cap = weight_cap;
    rep.hbar_cap = hbar_cap;
    PSeries kept(total_cap);
    for (const auto &[mono, c] : R.terms()) {
        int wa = 0, wb = 0;
        for (const auto &[v, e] : mono)
            ((v & kAlphabetB) ? wb : wa) += var_weight(v) * e;
        if (wa > weight_cap || wb > weight_cap) continue;
        HLaurent h = c;
        h.truncate_to(hbar_cap);
        if (!h.is_zero()) kept += PSeries::monomial(h, mono, total_cap);
    }
    rep.residual = kept;
    rep.pass = kept.is_zero();
    return rep;
}

} // namespace kpcohft
