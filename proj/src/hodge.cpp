#include "kpcohft/hodge.hpp"

#include "kpcohft/partitions.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace kpcohft {

Rat intersection_number(int g, int n, std::vector<int> e, int lp) {
    if (g < 0 || g > 1) throw std::out_of_range("intersection_number: only g <= 1 tabulated");
    if (n < 1 || (int)e.size() != n || lp < 0)
        throw std::invalid_argument("intersection_number: bad arguments");
    for (int x : e)
        if (x < 0) throw std::invalid_argument("intersection_number: negative exponent");
    int deg = lp;
    for (int x : e) deg += x;
    if (deg != 3 * g - 3 + n) return 0;

    if (g == 0) {
        if (lp > 0 || n < 3) return 0;
        // <tau_{a_1} ... tau_{a_n}>_0 = (n-3)! / prod a_i!
        Rat v = Rat(factorial(n - 3));
        for (int x : e) v /= Rat(factorial(x));
        return v;
    }
    if (lp >= 2) return 0; // lambda_1^2 = 0 in genus one
    // base cases
    if (n == 1) return Rat(1) / 24; // <tau_1>_1 and <lambda_1>_1
    // string equation: remove a tau_0 slot
    for (int i = 0; i < n; ++i) {
        if (e[i] != 0) continue;
        std::vector<int> rest;
        for (int j = 0; j < n; ++j)
            if (j != i) rest.push_back(e[j]);
        Rat v = 0;
        for (std::size_t j = 0; j < rest.size(); ++j) {
            if (rest[j] == 0) continue;
            std::vector<int> r2 = rest;
            r2[j] -= 1;
            v += intersection_number(g, n - 1, r2, lp);
        }
        return v;
    }
    // dilaton equation: remove a tau_1 slot
    for (int i = 0; i < n; ++i) {
        if (e[i] != 1) continue;
        std::vector<int> rest;
        for (int j = 0; j < n; ++j)
            if (j != i) rest.push_back(e[j]);
        return Rat(2 * g - 2 + (n - 1)) * intersection_number(g, n - 1, rest, lp);
    }
    // sum of exponents is 3g-3+n = n with every exponent >= 2: impossible
    throw std::logic_error("intersection_number: recursion failed to reduce");
}

PSeries cohft_generating(const std::vector<Rat> &lambda_weights,
                         const std::vector<LinearForm> &T, int hbar_max, int qcap) {
    if (hbar_max > 2)
        throw std::out_of_range("cohft_generating: intersection table stops at genus one");
    Rat e1 = 0;
    for (const Rat &a : lambda_weights) e1 += a;

    std::vector<PSeries> Tf;
    for (const LinearForm &lf : T) {
        PSeries f(qcap);
        for (const auto &[m, c] : lf)
            if (m <= qcap) f += PSeries::monomial(HLaurent(c), {{m, 1}}, qcap);
        Tf.push_back(f);
    }

    PSeries G(qcap);
    for (int g = 0; g <= 1; ++g)
        for (int n = 1; 2 * g - 2 + n <= hbar_max; ++n) {
            int s = 2 * g - 2 + n;
            if (s < 1) continue;
            for (int lp = 0; lp <= (g == 1 ? 1 : 0); ++lp) {
                int dtot = 3 * g - 3 + n - lp;
                if (dtot < 0) continue;
                // ordered tuples (k_1,...,k_n) with sum dtot
                std::vector<int> k(n, 0);
                std::function<void(int, int)> rec = [&](int i, int left) {
                    if (i == n - 1) {
                        k[i] = left;
                        Rat num = intersection_number(g, n, k, lp);
                        if (lp == 1) num *= e1;
                        if (num == 0) return;
                        for (int kk : k)
                            if (kk >= (int)Tf.size())
                                throw std::invalid_argument(
                                    "cohft_generating: missing T form");
                        PSeries term =
                            PSeries::constant(HLaurent::term(num / Rat(factorial(n)), s), qcap);
                        for (int kk : k) term *= Tf[kk];
                        G += term;
                        return;
                    }
                    for (int v = 0; v <= left; ++v) {
                        k[i] = v;
                        rec(i + 1, left - v);
                    }
                };
                rec(0, dtot);
            }
        }
    return G;
}

TripleHodgeParams::TripleHodgeParams(const Rat &u_, const Rat &s_) : u(u_), s(s_) {
    if (s == 0) throw std::invalid_argument("TripleHodgeParams: s = 0 (w = -1 is the "
                                            "Moebius case and has no T-recursion)");
}

std::array<Rat, 3> TripleHodgeParams::cy_triple() const {
    Rat ww = w();
    return {-u * u, -u * u * ww, u * u * ww / (ww + 1)};
}

LinearForm triple_hodge_T(const TripleHodgeParams &p, int k, int M) {
    if (k < 0) throw std::invalid_argument("triple_hodge_T: k < 0");
    LinearForm T{{1, 1}}; // T_0 = q_1
    Rat u2 = p.u * p.u;
    Rat mid = p.u * (p.w() + 2) / p.s;
    for (int step = 0; step < k; ++step) {
        LinearForm nt;
        for (const auto &[m, c] : T) {
            Rat mc = Rat(m) * c;
            if (m <= M && u2 != 0) nt[m] += mc * u2;
            if (m + 1 <= M && mid != 0) nt[m + 1] += mc * mid;
            if (m + 2 <= M) nt[m + 2] += mc;
        }
        for (auto it = nt.begin(); it != nt.end();)
            it = (it->second == 0) ? nt.erase(it) : std::next(it);
        T = std::move(nt);
    }
    return T;
}

PSeries mv_rhs(const Rat &w, const Rat &beta, int size_cap, int hbar_cap) {
    if (w == 0) throw std::invalid_argument("mv_rhs: w = 0");
    Rat bw = beta * w;
    PSeries Z = PSeries::constant(HLaurent(1), size_cap);
    Rat expo_c = Rat(1) / 2 - Rat(1) / w;
    for (int m = 1; m <= size_cap; ++m) {
        std::vector<Partition> parts = partitions_of(m);
        for (const Partition &mu : parts) {
            HLaurent coef;
            for (const Partition &nu : parts) {
                Int chi = character(nu, mu);
                if (chi == 0) continue;
                HLaurent v = HLaurent::term(expo_c * Rat(content_sum(nu)), 1).exp(hbar_cap);
                for (int h : hook_lengths(nu)) {
                    // beta w / varsigma(hbar h) = (beta w / h) hbar^{-1} / S(h hbar)
                    v *= s_factor_hbar(h, hbar_cap).inverse(hbar_cap) *
                         HLaurent::term(bw / h, -1);
                    v.truncate_to(hbar_cap);
                }
                coef += v * (Rat(chi) / Rat(z_mu(mu)));
            }
            if (!coef.is_zero())
                Z += PSeries::monomial(coef, monomial_from_parts(mu), size_cap);
        }
    }
    return Z;
}

PSeries triple_hodge_pipeline(const TripleHodgeParams &p, int qcap, int hbar_cap) {
    Rat w = p.w(), beta = p.beta();
    if (w == 0 || p.u == 0)
        throw std::invalid_argument("triple_hodge_pipeline: w = 0 or u = 0 (the vertex "
                                    "data degenerates; use cohft_generating directly)");
    TauData td = TauData::vertex_data(-w, -beta, qcap, hbar_cap + qcap);
    PSeries F = free_energy(build_tau(td, qcap, hbar_cap + qcap));
    SpectralData sd = SpectralData::from_X_series(inversion_X(w, beta, qcap + 2));
    PSeries G = drop_nonpositive_hbar(substitute_p_of_q(F, sd)).hbar_truncated(hbar_cap);
    // dictionary rescaling onto the CohFT normalization
    Rat a = beta * w;
    Rat b = Rat(1) / rat_pow(p.u, 4);
    PSeries r(G.weight_cap(), G.nmax());
    for (const auto &[m, c] : G.terms()) {
        Rat bw = rat_pow(b, monomial_weight(m));
        HLaurent h;
        for (const auto &[e, v] : c.coeffs()) h += HLaurent::term(v * rat_pow(a, e) * bw, e);
        h.truncate_to(c.valid_to());
        r += PSeries::monomial(h, m, G.weight_cap());
    }
    return r;
}

namespace {

QSeries pow_const1(const QSeries &f, const Rat &e) { return exp_series(log_series(f) * e); }

} // namespace

QSeries inversion_X(const Rat &w, const Rat &beta, int order) {
    if (w == 0) throw std::invalid_argument("inversion_X: w = 0");
    QSeries one = QSeries::constant(1, order);
    QSeries z = QSeries::identity(order);
    QSeries d = one + z * ((w + 1) * beta);
    return (z / d) * pow_const1((one + z * beta) / d, Rat(1) / w);
}

Rat inversion_coefficient(const Rat &w, const Rat &beta, int m) {
    if (m < 1) throw std::invalid_argument("inversion_coefficient: m < 1");
    Rat v = Rat(1) / Rat(factorial(m - 1));
    for (int j = 1; j <= m - 1; ++j) v *= (Rat(m) + Rat(j) * w);
    return v * rat_pow(beta, m - 1);
}

QSeries inversion_check(const Rat &w, const Rat &beta, int order) {
    QSeries zX(order);
    for (int m = 1; m <= order; ++m) zX.set_coeff(m, inversion_coefficient(w, beta, m));
    return zX.compose(inversion_X(w, beta, order)) - QSeries::identity(order);
}

QSeries moebius_relation_check(const Rat &w, const Rat &beta, int order) {
    QSeries one = QSeries::constant(1, order);
    QSeries z = QSeries::identity(order);
    QSeries Xv = z * pow_const1(one - z * (beta * w), Rat(1) / w);
    QSeries mob = z / (one + z * ((w + 1) * beta));
    return Xv.compose(mob) - inversion_X(w, beta, order);
}

std::vector<Rat> xdiffequation_residual(const Rat &w, int order) {
    QSeries X = inversion_X(w, 1, order);
    std::vector<Rat> res;
    for (int m = 2; m <= order; ++m) {
        Rat r = Rat(m - 1) * X.coeff(m) + (w + 2) * Rat(m - 1) * X.coeff(m - 1);
        if (m >= 3) r += (w + 1) * Rat(m - 2) * X.coeff(m - 2);
        res.push_back(r);
    }
    return res;
}

} // namespace kpcohft
