#include "kpcohft/changevars.hpp"

#include "kpcohft/ratfn.hpp"

#include <stdexcept>

namespace kpcohft {

SpectralData SpectralData::build_X(const TauData &data, int order) {
    QSeries y(order);
    for (const auto &[km, s] : data.y_hat)
        if (km.second == 0 && km.first <= order) y.set_coeff(km.first, s);
    QSeries psi(order);
    for (const auto &[km, c] : data.psi_hat)
        if (km.second == 0 && km.first <= order) psi.set_coeff(km.first, c);
    SpectralData sd;
    sd.y = y;
    sd.psi_of_y = psi.compose(y);
    sd.X = exp_series(-sd.psi_of_y).shifted_up(1).truncated(order);
    sd.Q = QSeries::constant(1, order) - sd.psi_of_y.euler();
    sd.Tcal = reciprocal(sd.Q);
    return sd;
}

SpectralData SpectralData::from_X_series(const QSeries &X) {
    if (X.coeff(0) != 0 || X.coeff(1) != 1)
        throw std::invalid_argument("from_X_series: X must be z + O(z^2)");
    int n = X.order() - 1;
    QSeries xdown(n);
    for (int i = 0; i <= n; ++i) xdown.set_coeff(i, X.coeff(i + 1));
    SpectralData sd;
    sd.psi_of_y = -log_series(xdown);
    sd.X = X.truncated(n);
    sd.Q = QSeries::constant(1, n) - sd.psi_of_y.euler();
    sd.Tcal = reciprocal(sd.Q);
    sd.y = QSeries::zero(n);
    return sd;
}

QSeries SpectralData::D(const QSeries &f) const { return Tcal * f.euler(); }

LinearForm p_of_q(const SpectralData &sd, int k, int M) {
    if (M > sd.X.order())
        throw std::invalid_argument("p_of_q: cap exceeds spectral series order");
    QSeries xk = sd.X.pow(k);
    LinearForm lf;
    for (int m = k; m <= M; ++m)
        if (xk.coeff(m) != 0) lf[m] = xk.coeff(m);
    return lf;
}

LinearForm t_recursion(const SpectralData &sd, int j, int k, int M) {
    if (j < 0 || k < -1) throw std::invalid_argument("t_recursion: bad indices");
    if (M > sd.Tcal.order())
        throw std::invalid_argument("t_recursion: cap exceeds spectral series order");

    // q-operator route
    LinearForm T;
    if (j + 1 <= M) T[j + 1] = Rat(1) / (j + 1);
    for (int step = 0; step <= k; ++step) {
        LinearForm nt;
        for (const auto &[m, c] : T)
            for (int l = 0; m + l <= M; ++l) {
                Rat t = sd.Tcal.coeff(l);
                if (t != 0) nt[m + l] += Rat(m) * c * t;
            }
        for (auto it = nt.begin(); it != nt.end();)
            it = (it->second == 0) ? nt.erase(it) : std::next(it);
        T = std::move(nt);
    }

    // D-operator route: D^{k+1} z^{j+1}/(j+1)
    QSeries f = QSeries::monomial(Rat(1) / (j + 1), j + 1, M);
    for (int step = 0; step <= k; ++step) f = sd.D(f);
    for (int m = 1; m <= M; ++m) {
        Rat a = f.coeff(m);
        auto it = T.find(m);
        Rat b = (it == T.end()) ? Rat(0) : it->second;
        if (a != b) throw std::logic_error("t_recursion: operator routes disagree");
    }
    return T;
}

PSeries substitute_p_of_q(const PSeries &F, const SpectralData &sd) {
    int W = F.weight_cap();
    if (W > sd.X.order())
        throw std::invalid_argument("substitute_p_of_q: weight cap exceeds series order");
    std::map<int, PSeries> forms;
    auto form = [&](int kk) -> const PSeries & {
        auto it = forms.find(kk);
        if (it == forms.end()) {
            PSeries f(W);
            for (const auto &[m, c] : p_of_q(sd, kk, W))
                f += PSeries::monomial(HLaurent(c), {{m, 1}}, W);
            it = forms.emplace(kk, std::move(f)).first;
        }
        return it->second;
    };
    PSeries out(W, F.nmax());
    for (const auto &[mono, coef] : F.terms()) {
        PSeries term = PSeries::constant(coef, W);
        for (const auto &[v, mult] : mono) {
            if (v & ~kVarWeightMask)
                throw std::invalid_argument("substitute_p_of_q: non-primary alphabet");
            for (int t = 0; t < mult; ++t) term *= form(v);
        }
        out += term;
    }
    return out;
}

PSeries drop_nonpositive_hbar(const PSeries &F) {
    PSeries out(F.weight_cap(), F.nmax());
    for (const auto &[mono, coef] : F.terms()) {
        HLaurent h;
        for (const auto &[e, c] : coef.coeffs())
            if (e >= 1) h += HLaurent::term(c, e);
        h.truncate_to(coef.valid_to());
        if (!h.is_zero())
            out += PSeries::monomial(h, mono, F.weight_cap(), F.nmax());
    }
    return out;
}

QSeries unstable_H01(const SpectralData &sd, const QSeries &y, int order) {
    QSeries r = y.truncated(std::min(order, sd.X.order()));
    int n = r.order();
    if (r.coeff(0) != 0)
        throw std::domain_error("unstable_H01: constant term of y must vanish");
    QSeries acc(n), xp = QSeries::constant(1, n);
    for (int k = 1; k <= n; ++k) {
        xp *= sd.X;
        Rat b = r.coeff(k);
        if (b == 0) continue;
        r -= xp * b;
        acc += xp * (b / k);
    }
    return acc;
}

LinearForm unstable_H01_form(const SpectralData &sd, const QSeries &y, int order) {
    QSeries r = y.truncated(std::min(order, sd.X.order()));
    int n = r.order();
    if (r.coeff(0) != 0)
        throw std::domain_error("unstable_H01: constant term of y must vanish");
    LinearForm lf;
    QSeries xp = QSeries::constant(1, n);
    for (int k = 1; k <= n; ++k) {
        xp *= sd.X;
        Rat b = r.coeff(k);
        if (b == 0) continue;
        r -= xp * b;
        lf[k] = b / k;
    }
    return lf;
}

H02Result unstable_H02(const QSeries &X, int order) {
    if (X.order() < order + 1)
        throw std::invalid_argument("unstable_H02: X order too small");
    Rat a = X.coeff(1);
    if (X.coeff(0) != 0 || a == 0)
        throw std::invalid_argument("unstable_H02: X must be a z + O(z^2), a != 0");
    QSeries xdown(order);
    for (int i = 0; i <= order; ++i) xdown.set_coeff(i, X.coeff(i + 1));
    QSeries g = reciprocal(xdown); // z/X
    // (z1^{-1}-z2^{-1})/(X1^{-1}-X2^{-1}) = 1/(g0 - W),
    // W = sum_{k>=2} g_k z1 z2 sum_{i+j=k-2} z1^i z2^j
    BivarSeries W(order);
    for (int k = 2; k <= order; ++k) {
        Rat gk = g.coeff(k);
        if (gk == 0) continue;
        for (int i = 0; i + 1 <= order; ++i) {
            int jj = k - 2 - i;
            if (jj < 0) break;
            if (jj + 1 > order) continue;
            W.at(i + 1, jj + 1) += gk;
        }
    }
    // -log(g0 - W) = log a - log(1 - a W)
    H02Result res;
    res.log_arg = a;
    res.ser = -log1p_bivar(-(W * a));
    return res;
}

FlowGenerator flow_generator(const SpectralData &sd, const Rat &beta, int order) {
    if (beta == 0) throw std::invalid_argument("flow_generator: beta = 0");
    if (order > sd.Tcal.order())
        throw std::invalid_argument("flow_generator: order exceeds series order");
    FlowGenerator fg;
    fg.euler.assign(order + 1, Rat(0));
    Rat bp = 1; // beta^{l-1}
    for (int l = 1; l <= order; ++l) {
        fg.euler[l] = -sd.Tcal.coeff(l) * bp;
        bp *= beta;
    }
    // completion of e_l z^{l+1} d/dz by e_l * (1/2) sum_{k=1}^{l-1} q_k q_{l-k}
    BivarSeries quad(order);
    for (int l = 1; l <= order; ++l) {
        if (fg.euler[l] == 0) continue;
        for (int k = 1; k <= l - 1; ++k)
            quad.at(k, l - k) += fg.euler[l] / 2;
    }
    fg.quad = quad;
    return fg;
}

BivarSeries flow_quad_from_h02(const SpectralData &sd, const Rat &beta, int order) {
    if (beta == 0) throw std::invalid_argument("flow_quad_from_h02: beta = 0");
    // f(z) = (1/beta)(1 - 1/Q(beta z)) = -sum_{l>=1} T_l beta^{l-1} z^l
    // -(1/2) dH02/dbeta|_X = -(1/2)(z1^{-1}f(z1) - z2^{-1}f(z2))/(z1^{-1}-z2^{-1})
    //                      = (1/2) z1 z2 sum_m f_{m+1} sum_{i+j=m-1} z1^i z2^j
    std::vector<Rat> f(order + 1, Rat(0));
    Rat bp = 1;
    for (int l = 1; l <= order; ++l) {
        f[l] = -sd.Tcal.coeff(l) * bp;
        bp *= beta;
    }
    BivarSeries quad(order);
    for (int l = 2; l <= order; ++l) { // f_l pairs with z1^{i+1} z2^{j+1}, i+j=l-2
        if (f[l] == 0) continue;
        for (int i = 0; i <= l - 2; ++i) {
            int jj = l - 2 - i;
            if (i + 1 > order || jj + 1 > order) continue;
            quad.at(i + 1, jj + 1) += f[l] / 2;
        }
    }
    return quad;
}

FinitenessVerdict finiteness_check(const SpectralData &sd, int degree_cap) {
    if (degree_cap > sd.Tcal.order())
        throw std::invalid_argument("finiteness_check: cap exceeds series order");
    int d = 0;
    for (int l = 0; l <= degree_cap; ++l)
        if (sd.Tcal.coeff(l) != 0) d = l;
    FinitenessVerdict v;
    // require at least two observed trailing zeros to call it polynomial
    if (d > degree_cap - 2) return v;
    v.polynomial = true;
    v.degree = d;
    std::vector<Rat> pc(d + 1);
    for (int l = 0; l <= d; ++l) pc[l] = sd.Tcal.coeff(l);
    Poly P(pc);
    auto roots = P.rational_roots();
    int total = 0;
    bool simple = true;
    for (const auto &[rho, m] : roots) {
        total += m;
        if (m != 1 || rho == 0) simple = false;
    }
    if (total != d || !simple) return v;
    v.fully_factored = true;
    for (const auto &[rho, m] : roots) v.roots_c.push_back(Rat(1) / rho);
    for (std::size_t j = 0; j < v.roots_c.size(); ++j) {
        Rat A = 1;
        for (std::size_t k = 0; k < v.roots_c.size(); ++k) {
            if (k == j) continue;
            A /= (Rat(1) - v.roots_c[k] / v.roots_c[j]);
        }
        v.log_coeffs.push_back(A);
    }
    return v;
}

} // namespace kpcohft
