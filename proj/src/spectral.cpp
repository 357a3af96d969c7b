#include "kpcohft/spectral.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>

namespace kpcohft {

namespace {

// Depth of all local series. Residues only ever need the t^{-1} coefficient
// of products whose pole orders stay below 10 for the supported (g,n), so
// this is comfortably exact.
constexpr int kDepth = 18;

Poly poly_pow(const Poly &p, int e) {
    Poly r(1);
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

// Laurent series sum_i c[i] t^{val+i}; c[0] != 0 unless identically zero.
struct LSer {
    int val = 0;
    std::vector<Rat> c = std::vector<Rat>(kDepth, Rat(0));

    bool is_zero() const {
        for (const auto &x : c)
            if (x != 0) return false;
        return true;
    }
    Rat coeff(int e) const {
        int i = e - val;
        return (i >= 0 && i < (int)c.size()) ? c[i] : Rat(0);
    }
    void normalize() {
        int lead = 0;
        while (lead < (int)c.size() && c[lead] == 0) ++lead;
        if (lead == (int)c.size()) {
            val = 0;
            return;
        }
        if (lead == 0) return;
        c.erase(c.begin(), c.begin() + lead);
        c.resize(kDepth, Rat(0));
        val += lead;
    }
};

LSer lser_from_taylor(const QSeries &q) {
    LSer r;
    for (int i = 0; i < kDepth && i <= q.order(); ++i) r.c[i] = q.coeff(i);
    r.normalize();
    return r;
}

QSeries taylor_from_lser(const LSer &l) {
    if (l.val < 0) throw std::logic_error("taylor_from_lser: negative valuation");
    QSeries q(kDepth);
    for (int i = 0; i < (int)l.c.size(); ++i)
        if (l.val + i <= kDepth) q.set_coeff(l.val + i, l.c[i]);
    return q;
}

LSer lmul(const LSer &a, const LSer &b) {
    LSer r;
    r.val = a.val + b.val;
    for (int i = 0; i < kDepth; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; i + j < kDepth; ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    r.normalize();
    return r;
}

LSer lscale(const LSer &a, const Rat &s) {
    LSer r = a;
    for (auto &x : r.c) x *= s;
    return r;
}

LSer ladd(const LSer &a, const LSer &b) {
    LSer r;
    r.val = std::min(a.val, b.val);
    for (int i = 0; i < kDepth; ++i) {
        int e = r.val + i;
        r.c[i] = a.coeff(e) + b.coeff(e);
    }
    r.normalize();
    return r;
}

LSer linv(const LSer &a) {
    if (a.c[0] == 0) throw std::domain_error("linv: zero series");
    LSer r;
    r.val = -a.val;
    Rat inv0 = Rat(1) / a.c[0];
    r.c[0] = inv0;
    for (int i = 1; i < kDepth; ++i) {
        Rat acc = 0;
        for (int j = 1; j <= i; ++j) acc += a.c[j] * r.c[i - j];
        r.c[i] = -acc * inv0;
    }
    return r;
}

LSer lser_from_ratfn(const RatFn &f, const Rat &a) {
    if (f.is_zero()) return LSer{};
    auto [val, coeffs] = f.laurent_at(a, kDepth);
    LSer r;
    r.val = val;
    for (int i = 0; i < kDepth; ++i) r.c[i] = coeffs[i];
    r.normalize();
    return r;
}

QSeries series_derivative(const QSeries &f) {
    QSeries r(f.order());
    for (int i = 1; i <= f.order(); ++i) r.set_coeff(i - 1, f.coeff(i) * Rat(i));
    return r;
}

// divide by t^m, requiring the low coefficients to vanish
QSeries shift_down(const QSeries &f, int m) {
    QSeries r(f.order());
    for (int i = 0; i < m; ++i)
        if (f.coeff(i) != 0) throw std::logic_error("shift_down: nonzero low coefficient");
    for (int i = m; i <= f.order(); ++i) r.set_coeff(i - m, f.coeff(i));
    return r;
}

// Entangled expansion: sum_k c[k](z_slot) t^k.
struct Ent {
    int slot = 0;
    std::vector<RatFn> c;
};

struct Contribution {
    LSer scalar;
    std::vector<Ent> ents;
    std::map<int, RatFn> spect;
};

RatFn inv_pole(const Rat &a, int power) {
    // 1 / (z - a)^power
    return RatFn(Poly(1), poly_pow(Poly::identity() - Poly(a), power));
}

} // namespace

SpectralCurve::SpectralCurve(RatFn dx, RatFn dy) : dx_(std::move(dx)), dy_(std::move(dy)) {
    if (dx_.is_zero()) throw std::invalid_argument("SpectralCurve: dx = 0");
    const Poly &num = dx_.num();
    auto roots = num.rational_roots();
    int covered = 0;
    for (const auto &[a, m] : roots) {
        if (m != 1) throw std::invalid_argument("SpectralCurve: non-simple zero of dx");
        covered += m;
        if (dy_.pole_order(a) > 0)
            throw std::invalid_argument("SpectralCurve: dy has a pole at a zero of dx");
        if (dy_.eval(a) == 0)
            throw std::invalid_argument("SpectralCurve: dx and dy share a zero");
        ram_.push_back({false, a});
    }
    if (covered < num.degree())
        throw std::invalid_argument("SpectralCurve: irrational ramification point");
    int d = num.degree() - dx_.den().degree();
    int inf_order = -d - 2; // vanishing order of dx at infinity
    if (inf_order >= 2)
        throw std::invalid_argument("SpectralCurve: non-simple zero of dx at infinity");
    if (inf_order == 1) ram_.push_back({true, Rat(0)});
    std::sort(ram_.begin(), ram_.end(), [](const RamPoint &p, const RamPoint &q) {
        if (p.at_infinity != q.at_infinity) return !p.at_infinity;
        return p.a < q.a;
    });
}

std::vector<Rat> SpectralCurve::finite_ramification() const {
    std::vector<Rat> r;
    for (const auto &p : ram_)
        if (!p.at_infinity) r.push_back(p.a);
    return r;
}

SpectralCurve SpectralCurve::airy() {
    return SpectralCurve(RatFn(Poly::monomial(2, 1)), RatFn(Poly(1)));
}

SpectralCurve SpectralCurve::with_dy_scaled(const Rat &lambda) const {
    return SpectralCurve(dx_, dy_ * lambda);
}

QSeries local_involution(const SpectralCurve &c, const Rat &a, int depth) {
    LSer f = lser_from_ratfn(c.dx(), a);
    if (f.val != 1) throw std::invalid_argument("local_involution: not a simple zero of dx");
    int ord = std::max(depth, kDepth);
    QSeries s(ord); // x(a+t) - x(a)
    for (int i = 0; i < (int)f.c.size() && f.val + i + 1 <= ord; ++i)
        s.set_coeff(f.val + i + 1, f.c[i] / Rat(f.val + i + 1));
    QSeries sd = series_derivative(s);
    QSeries sigma = -QSeries::identity(ord);
    for (int it = 0; it < 8; ++it) {
        QSeries num = s.compose(sigma) - s;          // valuation >= 3
        QSeries den = sd.compose(sigma);             // valuation 1
        QSeries corr = shift_down(num, 1) / shift_down(den, 1);
        sigma = sigma - corr;
    }
    if (!(s.compose(sigma) - s).is_zero())
        throw std::logic_error("local_involution: Newton iteration failed");
    QSeries out(depth);
    for (int i = 0; i <= depth; ++i) out.set_coeff(i, sigma.coeff(i));
    return out;
}

Rat OmegaRep::eval(const std::vector<Rat> &z) const {
    if ((int)z.size() != n) throw std::invalid_argument("OmegaRep::eval: wrong arity");
    Rat total = 0;
    for (const auto &t : terms) {
        Rat v = t.c;
        for (int i = 0; i < n; ++i) v *= t.f[i].eval(z[i]);
        total += v;
    }
    return total;
}

OmegaRep OmegaRep::scaled(const Rat &s) const {
    OmegaRep r = *this;
    for (auto &t : r.terms) t.c *= s;
    return r;
}

struct CorrelatorTable::Local {
    Rat a;
    QSeries s, sder, Y;
    QSeries sigma, sigma_der;
    std::vector<QSeries> sigma_pow;     // sigma^m for m >= 0
    std::vector<QSeries> sigma_hat_neg; // (t/sigma)^m = shat^{-m}
    LSer half_invD;                     // 1/2 / ((Y - Y.sigma) sder)
    LSer b02_local;                     // sigma' / (t - sigma)^2

    LSer compose_sigma(const LSer &r) const {
        LSer out;
        out.val = r.val;
        for (int i = 0; i < (int)r.c.size(); ++i) {
            int m = r.val + i;
            if (r.c[i] == 0 || m >= kDepth) continue;
            // sigma^m = t^m * shat^m
            const QSeries &hat =
                (m >= 0) ? sigma_pow[m] : sigma_hat_neg[-m]; // sigma^m / t^m as Taylor
            for (int j = 0; j <= hat.order(); ++j) {
                int idx = m + j - out.val;
                if (idx >= 0 && idx < kDepth) out.c[idx] += r.c[i] * hat.coeff(j);
            }
        }
        out.normalize();
        return out;
    }
};

CorrelatorTable::CorrelatorTable(SpectralCurve curve) : curve_(std::move(curve)) {}
CorrelatorTable::~CorrelatorTable() = default;

const CorrelatorTable::Local &CorrelatorTable::local(const Rat &a) {
    auto it = locals_.find(a);
    if (it != locals_.end()) return *it->second;
    Local ld;
    ld.a = a;
    LSer f = lser_from_ratfn(curve_.dx(), a);
    ld.s = QSeries(kDepth);
    for (int i = 0; i < (int)f.c.size() && f.val + i + 1 <= kDepth; ++i)
        ld.s.set_coeff(f.val + i + 1, f.c[i] / Rat(f.val + i + 1));
    ld.sder = taylor_from_lser(f);
    LSer h = lser_from_ratfn(curve_.dy(), a);
    ld.Y = QSeries(kDepth);
    for (int i = 0; i < (int)h.c.size() && h.val + i + 1 <= kDepth; ++i)
        ld.Y.set_coeff(h.val + i + 1, h.c[i] / Rat(h.val + i + 1));
    ld.sigma = local_involution(curve_, a, kDepth);
    ld.sigma_der = series_derivative(ld.sigma);

    QSeries shat = shift_down(ld.sigma, 1); // sigma/t, constant -1
    QSeries shat_inv = reciprocal(shat);
    ld.sigma_pow.resize(kDepth + 1);
    ld.sigma_hat_neg.resize(kDepth + 1);
    QSeries one = QSeries::constant(1, kDepth);
    ld.sigma_pow[0] = one;
    ld.sigma_hat_neg[0] = one;
    for (int m = 1; m <= kDepth; ++m) {
        ld.sigma_pow[m] = ld.sigma_pow[m - 1] * shat; // stored as sigma^m / t^m
        ld.sigma_hat_neg[m] = ld.sigma_hat_neg[m - 1] * shat_inv;
    }

    QSeries ydiff = ld.Y - ld.Y.compose(ld.sigma);
    LSer denom = lmul(lser_from_taylor(ydiff), lser_from_taylor(ld.sder));
    ld.half_invD = lscale(linv(denom), Rat(1) / 2);

    QSeries tms = QSeries::identity(kDepth) - ld.sigma; // t - sigma, valuation 1
    LSer tmsl = lser_from_taylor(tms);
    ld.b02_local = lmul(lser_from_taylor(ld.sigma_der), linv(lmul(tmsl, tmsl)));

    return *locals_.emplace(a, std::make_unique<Local>(std::move(ld))).first->second;
}

namespace {

// omega_{0,2}(arg, z_slot) with arg = a+t (side 0) or a+sigma(t) (side 1),
// including the d(sigma) Jacobian on side 1.
Ent ent_b02(const CorrelatorTable::Local &ld, int side, int slot) {
    Ent e;
    e.slot = slot;
    e.c.assign(kDepth, RatFn());
    if (side == 0) {
        // 1/(z - z_j)^2 at z = a+t: sum_m (m+1)(-1)^m t^m (a-z_j)^{-m-2};
        // the two (-1)^m factors cancel once the pole is written in z_j - a
        for (int k = 0; k < kDepth; ++k) e.c[k] = inv_pole(ld.a, k + 2) * Rat(k + 1);
    } else {
        for (int m = 0; m < kDepth; ++m) {
            QSeries sm = ld.sigma_pow[m] * ld.sigma_der; // sigma^m sigma' / t^m
            RatFn pole = inv_pole(ld.a, m + 2) * Rat(m + 1);
            for (int j = 0; j + m < kDepth; ++j) {
                Rat cf = sm.coeff(j);
                if (cf != 0) e.c[j + m] += pole * cf;
            }
        }
    }
    return e;
}

Ent ent_kernel(const CorrelatorTable::Local &ld) {
    Ent e;
    e.slot = 0;
    e.c.assign(kDepth, RatFn());
    // 1/(z0 - a - t) = sum_k t^k / (z0-a)^{k+1}
    for (int k = 0; k < kDepth; ++k) e.c[k] = inv_pole(ld.a, k + 1);
    // minus 1/(z0 - a - sigma(t)) = sum_m sigma^m / (z0-a)^{m+1}
    for (int m = 0; m < kDepth; ++m) {
        RatFn pole = inv_pole(ld.a, m + 1);
        const QSeries &hat = ld.sigma_pow[m]; // sigma^m / t^m
        for (int j = 0; j + m < kDepth; ++j) {
            Rat cf = hat.coeff(j);
            if (cf != 0) e.c[j + m] -= pole * cf;
        }
    }
    return e;
}

void multiply_into(Contribution &acc, const Contribution &b) {
    acc.scalar = lmul(acc.scalar, b.scalar);
    for (const auto &e : b.ents) acc.ents.push_back(e);
    for (const auto &[slot, f] : b.spect) {
        auto [it, fresh] = acc.spect.emplace(slot, f);
        if (!fresh) it->second *= f;
    }
}

LSer unit_lser() {
    LSer u;
    u.c[0] = 1;
    return u;
}

} // namespace

const OmegaRep &CorrelatorTable::get(int g, int n) {
    auto key = std::make_pair(g, n);
    auto found = table_.find(key);
    if (found != table_.end()) return found->second;
    if (g < 0 || n < 1 || 2 * g - 2 + n <= 0)
        throw std::invalid_argument("CorrelatorTable::get: unstable (g,n)");
    for (const auto &p : curve_.ramification())
        if (p.at_infinity)
            throw std::invalid_argument(
                "CorrelatorTable: correlators need finite ramification points");

    // Pre-compute dependencies so map references stay valid during assembly.
    int n0 = n - 1;
    if (g >= 1 && !(g == 1 && n0 == 0)) get(g - 1, n0 + 2);
    for (int g1 = 0; g1 <= g; ++g1)
        for (int mask = 0; mask < (1 << n0); ++mask) {
            int sz = __builtin_popcount(mask), rest = n0 - sz;
            if ((g1 == 0 && sz == 0) || (g - g1 == 0 && rest == 0)) continue;
            if (!(g1 == 0 && sz == 1)) get(g1, 1 + sz);
            if (!(g - g1 == 0 && rest == 1)) get(g - g1, 1 + rest);
        }

    OmegaRep out;
    out.g = g;
    out.n = n;

    auto localize = [&](const Local &ld, const RatFn &f, int side) {
        LSer l = lser_from_ratfn(f, ld.a);
        if (side == 1) l = lmul(ld.compose_sigma(l), lser_from_taylor(ld.sigma_der));
        return l;
    };

    // Terms of one tensor factor of W: part (gp, 1+|I|) evaluated at the
    // recursion variable (side 0: z, side 1: sigma z) and the spectators I.
    auto part_terms = [&](const Local &ld, int gp, const std::vector<int> &I, int side) {
        std::vector<Contribution> res;
        if (gp == 0 && I.size() == 1) {
            Contribution co;
            co.scalar = unit_lser();
            co.ents.push_back(ent_b02(ld, side, I[0]));
            res.push_back(std::move(co));
            return res;
        }
        const OmegaRep &rep = table_.at({gp, 1 + (int)I.size()});
        for (const auto &t : rep.terms) {
            Contribution co;
            co.scalar = lscale(localize(ld, t.f[0], side), t.c);
            for (std::size_t j = 0; j < I.size(); ++j) co.spect.emplace(I[j], t.f[1 + j]);
            res.push_back(std::move(co));
        }
        return res;
    };

    for (const Rat &a : curve_.finite_ramification()) {
        const Local &ld = local(a);
        Ent kernel = ent_kernel(ld);
        std::vector<Contribution> contribs;

        // omega_{g-1, n0+2}(z, sigma z, spectators)
        if (g >= 1) {
            if (g == 1 && n0 == 0) {
                Contribution co;
                co.scalar = ld.b02_local;
                contribs.push_back(std::move(co));
            } else {
                const OmegaRep &rep = table_.at({g - 1, n0 + 2});
                for (const auto &t : rep.terms) {
                    Contribution co;
                    co.scalar = lscale(
                        lmul(localize(ld, t.f[0], 0), localize(ld, t.f[1], 1)), t.c);
                    for (int j = 0; j < n0; ++j) co.spect.emplace(1 + j, t.f[2 + j]);
                    contribs.push_back(std::move(co));
                }
            }
        }

        // stable splittings, (0,1) parts excluded
        for (int g1 = 0; g1 <= g; ++g1)
            for (int mask = 0; mask < (1 << n0); ++mask) {
                std::vector<int> I1, I2;
                for (int j = 0; j < n0; ++j)
                    ((mask >> j) & 1 ? I1 : I2).push_back(1 + j);
                int g2 = g - g1;
                if ((g1 == 0 && I1.size() == 0) || (g2 == 0 && I2.size() == 0)) continue;
                for (const auto &p1 : part_terms(ld, g1, I1, 0))
                    for (const auto &p2 : part_terms(ld, g2, I2, 1)) {
                        Contribution co = p1;
                        multiply_into(co, p2);
                        contribs.push_back(std::move(co));
                    }
            }

        for (auto &co : contribs) {
            co.scalar = lmul(co.scalar, ld.half_invD);
            co.ents.push_back(kernel);
            // residue: coefficient of t^{-1} in scalar * prod ents
            int ne = (int)co.ents.size();
            std::vector<int> k(ne, 0);
            std::function<void(int, int)> rec = [&](int e, int used) {
                if (e == ne) {
                    Rat cf = co.scalar.coeff(-1 - used);
                    if (cf == 0) return;
                    TensorTerm term;
                    term.c = cf;
                    term.f.assign(n, RatFn());
                    bool dead = false;
                    std::vector<bool> seen(n, false);
                    for (int i = 0; i < ne; ++i) {
                        const RatFn &fac = co.ents[i].c[k[i]];
                        if (fac.is_zero()) { dead = true; break; }
                        int s = co.ents[i].slot;
                        term.f[s] = seen[s] ? term.f[s] * fac : fac;
                        seen[s] = true;
                    }
                    if (dead) return;
                    for (const auto &[slot, f] : co.spect) {
                        term.f[slot] = seen[slot] ? term.f[slot] * f : f;
                        seen[slot] = true;
                    }
                    for (int s = 0; s < n; ++s)
                        if (!seen[s]) throw std::logic_error("correlator: uncovered slot");
                    out.terms.push_back(std::move(term));
                    return;
                }
                int room = -1 - co.scalar.val - used;
                for (int kk = 0; kk <= room && kk < kDepth; ++kk) {
                    k[e] = kk;
                    rec(e + 1, used + kk);
                }
            };
            if (-1 - co.scalar.val >= 0) rec(0, 0);
        }
    }

    // merge identical factor vectors
    std::vector<TensorTerm> merged;
    for (auto &t : out.terms) {
        bool hit = false;
        for (auto &m : merged)
            if (m.f == t.f) {
                m.c += t.c;
                hit = true;
                break;
            }
        if (!hit) merged.push_back(std::move(t));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const TensorTerm &t) { return t.c == 0; }),
                 merged.end());
    out.terms = std::move(merged);
    return table_.emplace(key, std::move(out)).first->second;
}

OmegaRep tr_correlator(const SpectralCurve &c, int g, int n) {
    CorrelatorTable tab(c);
    return tab.get(g, n);
}

LoopEquationReport loop_equation_check(CorrelatorTable &tab, int g, int n, int depth,
                                       const OmegaRep *replace_top) {
    const OmegaRep &top = replace_top ? *replace_top : tab.get(g, n);
    const SpectralCurve &curve = tab.curve();
    int n0 = n - 1;

    // generic rational spectator values away from the ramification points
    std::vector<Rat> vals;
    {
        Rat cand = Rat(3) / 7;
        auto bad = [&](const Rat &v) {
            for (const Rat &a : curve.finite_ramification())
                if (v == a) return true;
            for (const Rat &u : vals)
                if (v == u) return true;
            return false;
        };
        while ((int)vals.size() < n0) {
            while (bad(cand)) cand += Rat(1) / 13;
            vals.push_back(cand);
            cand += Rat(2) / 11;
        }
    }

    auto spect_value = [&](const TensorTerm &t, const std::vector<int> &I) {
        Rat v = t.c;
        for (std::size_t j = 0; j < I.size(); ++j) v *= t.f[1 + j].eval(vals[I[j] - 1]);
        return v;
    };

    LoopEquationReport rep;
    rep.linear_order = depth;
    rep.quadratic_order = depth;
    std::vector<int> all;
    for (int j = 1; j <= n0; ++j) all.push_back(j);

    for (const Rat &a : tab.curve().finite_ramification()) {
        // private local data (mirrors the correlator table's)
        QSeries sigma = local_involution(curve, a, kDepth);
        QSeries sigma_der = series_derivative(sigma);
        LSer sdl = lser_from_taylor(sigma_der);
        LSer fdx = lser_from_ratfn(curve.dx(), a);
        LSer fdy = lser_from_ratfn(curve.dy(), a);
        QSeries Y(kDepth);
        for (int i = 0; i < kDepth; ++i)
            if (fdy.val + i + 1 <= kDepth)
                Y.set_coeff(fdy.val + i + 1, fdy.c[i] / Rat(fdy.val + i + 1));
        auto comp = [&](const LSer &r) { // r(a + sigma(t))
            LSer out;
            out.val = r.val;
            QSeries shat = shift_down(sigma, 1);
            QSeries hat_pow = QSeries::constant(1, kDepth);
            QSeries shat_inv = reciprocal(shat);
            // positive powers on demand
            std::vector<QSeries> pos{QSeries::constant(1, kDepth)};
            std::vector<QSeries> neg{QSeries::constant(1, kDepth)};
            for (int m = 1; m <= kDepth; ++m) {
                pos.push_back(pos.back() * shat);
                neg.push_back(neg.back() * shat_inv);
            }
            for (int i = 0; i < (int)r.c.size(); ++i) {
                int m = r.val + i;
                if (r.c[i] == 0 || m >= kDepth) continue;
                const QSeries &hat = (m >= 0) ? pos[m] : neg[-m];
                for (int j = 0; j <= hat.order(); ++j) {
                    int idx = m + j - out.val;
                    if (idx >= 0 && idx < kDepth) out.c[idx] += r.c[i] * hat.coeff(j);
                }
            }
            out.normalize();
            return out;
        };
        auto side_lser = [&](const OmegaRep &w, const std::vector<int> &I, int side) {
            LSer total;
            for (const auto &t : w.terms) {
                LSer l = lser_from_ratfn(t.f[0], a);
                if (side == 1) l = lmul(comp(l), sdl);
                total = ladd(total, lscale(l, spect_value(t, I)));
            }
            return total;
        };
        auto b02_spect = [&](int j, int side) { // omega_{0,2}(arg, z_j) at z_j = vals
            Rat c = a - vals[j - 1];
            LSer out;
            if (side == 0) {
                for (int k = 0; k < kDepth; ++k) {
                    Rat s = Rat(k + 1) / rat_pow(c, k + 2);
                    out.c[k] = (k % 2 == 0) ? s : -s;
                }
            } else {
                QSeries acc(kDepth);
                QSeries sp = QSeries::constant(1, kDepth);
                for (int m = 0; m < kDepth; ++m) {
                    Rat s = Rat(m + 1) / rat_pow(c, m + 2);
                    if (m % 2 == 1) s = -s;
                    acc += (sp * sigma_der) * s;
                    sp *= sigma;
                }
                out = lser_from_taylor(acc);
                return out;
            }
            out.normalize();
            return out;
        };
        auto omega01 = [&](int side) { // y dx with y(a) := 0
            LSer y = lser_from_taylor(Y);
            if (side == 0) return lmul(y, fdx);
            return lmul(comp(y), lmul(comp(fdx), sdl));
        };

        // linear: omega(z) + omega(sigma z)
        LSer lin = ladd(side_lser(top, all, 0), side_lser(top, all, 1));
        int lo = lin.is_zero() ? depth : std::min(lin.val, depth);
        rep.linear_order = std::min(rep.linear_order, lo);

        // quadratic combination, all parts included
        LSer quad;
        if (g >= 1) {
            if (g == 1 && n0 == 0) {
                QSeries tms = QSeries::identity(kDepth) - sigma;
                LSer tmsl = lser_from_taylor(tms);
                quad = ladd(quad, lmul(sdl, linv(lmul(tmsl, tmsl))));
            } else {
                const OmegaRep &mid = tab.get(g - 1, n0 + 2);
                for (const auto &t : mid.terms) {
                    LSer l = lmul(lser_from_ratfn(t.f[0], a),
                                  lmul(comp(lser_from_ratfn(t.f[1], a)), sdl));
                    Rat v = t.c;
                    for (int j = 0; j < n0; ++j) v *= t.f[2 + j].eval(vals[j]);
                    quad = ladd(quad, lscale(l, v));
                }
            }
        }
        for (int g1 = 0; g1 <= g; ++g1)
            for (int mask = 0; mask < (1 << n0); ++mask) {
                std::vector<int> I1, I2;
                for (int j = 0; j < n0; ++j) ((mask >> j) & 1 ? I1 : I2).push_back(1 + j);
                int g2 = g - g1;
                auto half = [&](int gp, const std::vector<int> &I, int side) {
                    if (gp == 0 && I.empty()) return omega01(side);
                    if (gp == 0 && I.size() == 1) return b02_spect(I[0], side);
                    const OmegaRep &w = (gp == g && (int)I.size() == n0 && replace_top)
                                            ? *replace_top
                                            : tab.get(gp, 1 + (int)I.size());
                    return side_lser(w, I, side);
                };
                quad = ladd(quad, lmul(half(g1, I1, 0), half(g2, I2, 1)));
            }
        int qo = quad.is_zero() ? depth : std::min(quad.val, depth);
        rep.quadratic_order = std::min(rep.quadratic_order, qo);
    }

    rep.linear_pass = rep.linear_order >= 1;
    rep.quadratic_pass = rep.quadratic_order >= 2;
    return rep;
}

QSeries curve_X(const SpectralCurve &c, int order) {
    RatFn g = c.dx() - RatFn(Poly(1), Poly::identity());
    if (g.pole_order(0) > 0)
        throw std::invalid_argument("curve_X: dx - dz/z singular at the origin");
    QSeries gs = g.series(order);
    QSeries G(order);
    for (int i = 0; i <= order - 1; ++i) G.set_coeff(i + 1, gs.coeff(i) / Rat(i + 1));
    return QSeries::identity(order) * exp_series(G);
}

QSeries revert_series(const QSeries &f) {
    if (f.coeff(0) != 0 || f.coeff(1) != 1)
        throw std::invalid_argument("revert_series: need f = z + O(z^2)");
    return reversion(f);
}

std::vector<DossTerm> doss_expand(const SpectralCurve &c, const OmegaRep &w, int order) {
    QSeries X = curve_X(c, order + 1);
    QSeries zX = revert_series(X);
    QSeries zXd = series_derivative(zX);
    for (const Rat &a : c.finite_ramification())
        if (a == 0) throw std::invalid_argument("doss_expand: ramification at the origin");
    std::vector<DossTerm> out;
    for (const auto &t : w.terms) {
        DossTerm d;
        d.c = t.c;
        for (const RatFn &f : t.f) {
            QSeries num = f.num().series(order + 1).compose(zX);
            QSeries den = f.den().series(order + 1).compose(zX);
            d.phi.push_back((num / den) * zXd);
        }
        out.push_back(std::move(d));
    }
    return out;
}

Rat doss_coefficient(const std::vector<DossTerm> &d, const std::vector<int> &k) {
    Rat total = 0;
    for (const auto &t : d) {
        Rat v = t.c;
        for (std::size_t i = 0; i < k.size(); ++i) v *= t.phi[i].coeff(k[i]);
        total += v;
    }
    return total;
}

bool projection_check(const SpectralCurve &c, const OmegaRep &w) {
    for (const auto &t : w.terms)
        for (const RatFn &f : t.f) {
            RatFn pp;
            for (const Rat &a : c.finite_ramification()) {
                int po = f.pole_order(a);
                if (po == 0) continue;
                auto [val, coeffs] = f.laurent_at(a, po);
                for (int i = 0; i < po; ++i) {
                    int e = val + i;
                    if (e < 0 && coeffs[i] != 0) pp += inv_pole(a, -e) * coeffs[i];
                }
            }
            if (!(pp == f)) return false;
        }
    return true;
}

XiBasis xi_basis(const SpectralCurve &c) {
    XiBasis b;
    b.points = c.ramification();
    for (const auto &p : b.points)
        b.base.push_back(p.at_infinity ? RatFn() : inv_pole(p.a, 2));
    return b;
}

RatFn xi_next(const SpectralCurve &c, const RatFn &xi) { return (xi / c.dx()).derivative(); }

} // namespace kpcohft
