#ifndef KPCOHFT_PSERIES_HPP
#define KPCOHFT_PSERIES_HPP

#include "kpcohft/hlaurent.hpp"
#include "kpcohft/rational.hpp"

#include <map>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace kpcohft {

/// A monomial in the variables p_1, p_2, ... as (variable id, multiplicity)
/// pairs sorted by id. Variable ids carry their weight in the low bits so a
/// second alphabet can share the ring (used by the Hirota check).
using PMonomial = std::vector<std::pair<int, int>>;

constexpr int kVarWeightMask = 0xFFFF;
constexpr int kAlphabetB = 1 << 16;

inline int var_weight(int var) { return var & kVarWeightMask; }

inline int monomial_weight(const PMonomial &m) {
    int w = 0;
    for (const auto &[v, e] : m) w += var_weight(v) * e;
    return w;
}
inline int monomial_length(const PMonomial &m) {
    int n = 0;
    for (const auto &[v, e] : m) n += e;
    return n;
}

inline PMonomial monomial_from_parts(const std::vector<int> &parts, int alphabet_offset = 0) {
    std::map<int, int> mult;
    for (int p : parts) mult[p + alphabet_offset]++;
    return PMonomial(mult.begin(), mult.end());
}

/// Truncated multivariate polynomial in p_1, p_2, ... with HLaurent
/// coefficients, graded by weight deg p_k = k. Sparse. Coefficients of
/// monomials with weight <= weight_cap() are exact; operations intersect
/// caps.
class PSeries {
public:
    static constexpr int kInf = HLaurent::kInf;

    PSeries() : wcap_(kInf), nmax_(kInf) {}
    explicit PSeries(int weight_cap, int nmax = kInf) : wcap_(weight_cap), nmax_(nmax) {}

    static PSeries constant(const HLaurent &c, int weight_cap, int nmax = kInf) {
        PSeries s(weight_cap, nmax);
        if (!c.is_zero()) s.t_[{}] = c;
        return s;
    }
    static PSeries monomial(const HLaurent &c, const PMonomial &m, int weight_cap,
                            int nmax = kInf) {
        PSeries s(weight_cap, nmax);
        if (!c.is_zero() && monomial_weight(m) <= weight_cap && monomial_length(m) <= nmax)
            s.t_[m] = c;
        return s;
    }
    static PSeries variable(int var, int weight_cap, int nmax = kInf) {
        return monomial(HLaurent(1), {{var, 1}}, weight_cap, nmax);
    }

    int weight_cap() const { return wcap_; }
    int nmax() const { return nmax_; }
    const std::map<PMonomial, HLaurent> &terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    int min_weight() const {
        int w = kInf;
        for (const auto &[m, c] : t_) w = std::min(w, monomial_weight(m));
        return w;
    }

    HLaurent coeff(const PMonomial &m) const {
        if (monomial_weight(m) > wcap_ || monomial_length(m) > nmax_)
            throw std::out_of_range("PSeries::coeff: monomial beyond truncation caps");
        auto it = t_.find(m);
        return it == t_.end() ? HLaurent() : it->second;
    }

    HLaurent coeff_of_parts(const std::vector<int> &parts) const {
        return coeff(monomial_from_parts(parts));
    }

    PSeries truncated(int weight_cap, int nmax = kInf) const {
        PSeries r(std::min(wcap_, weight_cap), std::min(nmax_, nmax));
        for (const auto &[m, c] : t_)
            if (monomial_weight(m) <= r.wcap_ && monomial_length(m) <= r.nmax_) r.t_[m] = c;
        return r;
    }

    /// Truncates every coefficient's hbar validity to `cap`.
    PSeries hbar_truncated(int cap) const {
        PSeries r(wcap_, nmax_);
        for (const auto &[m, c] : t_) {
            HLaurent h = c;
            h.truncate_to(cap);
            if (!h.is_zero()) r.t_[m] = h;
        }
        return r;
    }

    friend PSeries operator+(const PSeries &a, const PSeries &b) {
        PSeries r = a.truncated(b.wcap_, b.nmax_);
        for (const auto &[m, c] : b.t_) {
            if (monomial_weight(m) > r.wcap_ || monomial_length(m) > r.nmax_) continue;
            auto [it, fresh] = r.t_.emplace(m, c);
            if (!fresh) it->second += c;
        }
        r.normalize();
        return r;
    }
    friend PSeries operator-(const PSeries &a, const PSeries &b) { return a + (-b); }
    PSeries operator-() const {
        PSeries r = *this;
        for (auto &[m, c] : r.t_) c = -c;
        return r;
    }
    friend PSeries operator*(const PSeries &a, const PSeries &b) {
        PSeries r(std::min(a.wcap_, b.wcap_), std::min(a.nmax_, b.nmax_));
        for (const auto &[ma, ca] : a.t_) {
            int wa = monomial_weight(ma), la = monomial_length(ma);
            for (const auto &[mb, cb] : b.t_) {
                if (wa + monomial_weight(mb) > r.wcap_) continue;
                if (la + monomial_length(mb) > r.nmax_) continue;
                HLaurent c = ca * cb;
                if (c.is_zero()) continue;
                PMonomial m = merge(ma, mb);
                auto [it, fresh] = r.t_.emplace(std::move(m), c);
                if (!fresh) it->second += c;
            }
        }
        r.normalize();
        return r;
    }
    friend PSeries operator*(const PSeries &a, const HLaurent &s) {
        PSeries r(a.wcap_, a.nmax_);
        for (const auto &[m, c] : a.t_) {
            HLaurent x = c * s;
            if (!x.is_zero()) r.t_[m] = x;
        }
        return r;
    }
    friend PSeries operator*(const PSeries &a, const Rat &s) {
        if (s == 0) return PSeries(a.wcap_, a.nmax_);
        PSeries r = a;
        for (auto &[m, c] : r.t_) c = c * s;
        return r;
    }
    friend PSeries operator*(const Rat &s, const PSeries &a) { return a * s; }

    PSeries &operator+=(const PSeries &b) { return *this = *this + b; }
    PSeries &operator-=(const PSeries &b) { return *this = *this - b; }
    PSeries &operator*=(const PSeries &b) { return *this = *this * b; }

    /// Partial derivative with respect to the variable `var`. The reliable
    /// weight window shrinks by the variable's weight.
    PSeries derivative(int var) const {
        PSeries r(wcap_ == kInf ? kInf : wcap_ - var_weight(var), nmax_);
        for (const auto &[m, c] : t_) {
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i].first != var) continue;
                PMonomial dm = m;
                int e = dm[i].second;
                if (e == 1)
                    dm.erase(dm.begin() + i);
                else
                    dm[i].second = e - 1;
                r.t_[dm] += c * Rat(e);
                break;
            }
        }
        r.normalize();
        return r;
    }

    bool operator==(const PSeries &b) const { return t_ == b.t_; }

    friend std::ostream &operator<<(std::ostream &os, const PSeries &s) {
        if (s.t_.empty()) return os << "0";
        bool first = true;
        for (const auto &[m, c] : s.t_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c << ")";
            for (const auto &[v, e] : m) {
                os << "*p" << (v & kVarWeightMask);
                if (v & ~kVarWeightMask) os << "'";
                if (e > 1) os << "^" << e;
            }
        }
        return os;
    }

private:
    static PMonomial merge(const PMonomial &a, const PMonomial &b) {
        PMonomial r;
        r.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i].first < b[j].first)
                r.push_back(a[i++]);
            else if (a[i].first > b[j].first)
                r.push_back(b[j++]);
            else {
                r.emplace_back(a[i].first, a[i].second + b[j].second);
                ++i, ++j;
            }
        }
        for (; i < a.size(); ++i) r.push_back(a[i]);
        for (; j < b.size(); ++j) r.push_back(b[j]);
        return r;
    }

    void normalize() {
        for (auto it = t_.begin(); it != t_.end();) {
            if (it->second.is_zero() || monomial_weight(it->first) > wcap_ ||
                monomial_length(it->first) > nmax_)
                it = t_.erase(it);
            else
                ++it;
        }
    }

    int wcap_;
    int nmax_;
    std::map<PMonomial, HLaurent> t_;
};

/// exp of a series with zero constant term.
inline PSeries exp_pseries(const PSeries &f) {
    if (!f.coeff({}).is_zero())
        throw std::domain_error("exp_pseries: nonzero constant term");
    int mw = f.min_weight();
    if (f.is_zero()) mw = 1;
    PSeries r = PSeries::constant(HLaurent(1), f.weight_cap(), f.nmax());
    PSeries p = r;
    Int kfac = 1;
    for (int k = 1; k * mw <= f.weight_cap(); ++k) {
        p *= f;
        if (p.is_zero()) break;
        kfac *= k;
        r += p * (Rat(1) / Rat(kfac));
    }
    return r;
}

/// log of a series with constant term 1.
inline PSeries log_pseries(const PSeries &f) {
    HLaurent c0 = f.coeff({});
    if (!(c0 - HLaurent(1)).is_zero())
        throw std::domain_error("log_pseries: constant term is not 1");
    PSeries u = f - PSeries::constant(HLaurent(1), f.weight_cap(), f.nmax());
    int mw = u.is_zero() ? 1 : u.min_weight();
    PSeries r(f.weight_cap(), f.nmax());
    PSeries p = PSeries::constant(HLaurent(1), f.weight_cap(), f.nmax());
    for (int k = 1; k * mw <= f.weight_cap(); ++k) {
        p *= u;
        if (p.is_zero()) break;
        Rat s = (k % 2 == 1) ? Rat(1) / k : Rat(-1) / k;
        r += p * s;
    }
    return r;
}

} // namespace kpcohft

#endif
