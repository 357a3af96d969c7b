#ifndef KPCOHFT_HLAURENT_HPP
#define KPCOHFT_HLAURENT_HPP

#include "kpcohft/rational.hpp"

#include <map>
#include <ostream>
#include <stdexcept>

namespace kpcohft {

/// Truncated Laurent polynomial in the genus parameter hbar, over exact
/// rationals.
///
/// Every value carries a validity bound `valid_to()`: coefficients of
/// hbar^e with e <= valid_to() are exact, higher ones are unknown and never
/// stored. The bound propagates through arithmetic automatically, e.g. the
/// product of a series known through hbar^6 with one supported on
/// hbar^{-2} and above is only exact through hbar^4. Exact polynomial
/// values carry an infinite bound.
class HLaurent {
public:
    static constexpr int kInf = 1 << 20;

    HLaurent() : hi_(kInf) {}
    HLaurent(const Rat &c) : hi_(kInf) {
        if (c != 0) c_[0] = c;
    }
    HLaurent(int c) : HLaurent(Rat(c)) {}

    static HLaurent term(const Rat &c, int e) {
        HLaurent h;
        if (c != 0) h.c_[e] = c;
        return h;
    }

    bool is_zero() const { return c_.empty(); }
    int valid_to() const { return hi_; }

    /// Lower bound on the support of the (untruncated) value.
    int support_bound() const {
        if (!c_.empty()) return c_.begin()->first;
        return hi_ == kInf ? kInf : sat(hi_ + 1);
    }

    /// Smallest exponent with a nonzero stored coefficient; kInf if zero.
    int order() const { return c_.empty() ? kInf : c_.begin()->first; }

    Rat coeff(int e) const {
        if (e > hi_)
            throw std::domain_error("HLaurent::coeff: exponent beyond validity window");
        auto it = c_.find(e);
        return it == c_.end() ? Rat(0) : it->second;
    }

    const std::map<int, Rat> &coeffs() const { return c_; }

    HLaurent &truncate_to(int hi) {
        if (hi < hi_) {
            hi_ = hi;
            c_.erase(c_.upper_bound(hi_), c_.end());
        }
        return *this;
    }

    /// Errors out if the value can have exponents below `lo` (spurious
    /// negative powers signal an inconsistent computation).
    const HLaurent &require_support_at_least(int lo) const {
        if (support_bound() < lo)
            throw std::domain_error("HLaurent: hbar exponent below configured floor");
        return *this;
    }

    friend HLaurent operator+(const HLaurent &a, const HLaurent &b) {
        HLaurent r = a;
        r.hi_ = std::min(a.hi_, b.hi_);
        for (const auto &[e, c] : b.c_) r.c_[e] += c;
        r.normalize();
        return r;
    }
    friend HLaurent operator-(const HLaurent &a, const HLaurent &b) { return a + (-b); }
    HLaurent operator-() const {
        HLaurent r = *this;
        for (auto &[e, c] : r.c_) c = -c;
        return r;
    }

    friend HLaurent operator*(const HLaurent &a, const HLaurent &b) {
        HLaurent r;
        r.hi_ = std::min(sat(a.hi_ + b.support_bound()), sat(b.hi_ + a.support_bound()));
        for (const auto &[ea, ca] : a.c_)
            for (const auto &[eb, cb] : b.c_) {
                if (ea + eb > r.hi_) continue;
                r.c_[ea + eb] += ca * cb;
            }
        r.normalize();
        return r;
    }

    friend HLaurent operator*(const HLaurent &a, const Rat &s) {
        if (s == 0) return HLaurent();
        HLaurent r = a;
        for (auto &[e, c] : r.c_) c *= s;
        return r;
    }
    friend HLaurent operator*(const Rat &s, const HLaurent &a) { return a * s; }
    friend HLaurent operator/(const HLaurent &a, const Rat &s) {
        if (s == 0) throw std::domain_error("HLaurent: division by zero scalar");
        return a * (Rat(1) / s);
    }

    HLaurent &operator+=(const HLaurent &b) { return *this = *this + b; }
    HLaurent &operator-=(const HLaurent &b) { return *this = *this - b; }
    HLaurent &operator*=(const HLaurent &b) { return *this = *this * b; }

    bool operator==(const HLaurent &b) const { return c_ == b.c_; }

    HLaurent pow(int n) const {
        HLaurent r(1);
        for (int i = 0; i < n; ++i) r *= *this;
        return r;
    }

    /// exp of a value supported on strictly positive exponents, truncated at
    /// hbar^cap.
    HLaurent exp(int cap) const {
        if (support_bound() < 1)
            throw std::domain_error("HLaurent::exp: argument must vanish at hbar^0");
        HLaurent f = *this;
        f.truncate_to(std::min(cap, f.hi_));
        HLaurent r(1), p(1);
        r.truncate_to(std::min(cap, f.hi_));
        Int kfac = 1;
        for (int k = 1; k <= cap; ++k) {
            p *= f;
            if (p.is_zero()) break;
            kfac *= k;
            r += p / Rat(kfac);
        }
        return r;
    }

    /// Multiplicative inverse, truncated at hbar^cap (relative to the
    /// valuation). Requires a nonzero value exactly known at its lowest order.
    HLaurent inverse(int cap) const {
        if (is_zero()) throw std::domain_error("HLaurent::inverse of zero");
        int v = order();
        Rat c0 = c_.begin()->second;
        // u = f / (c0 hbar^v) - 1, supported on positive exponents
        HLaurent u = HLaurent::term(Rat(1) / c0, -v) * (*this) - HLaurent(1);
        HLaurent geo(1), p(1);
        geo.truncate_to(std::min(cap, u.is_zero() ? kInf : u.valid_to()));
        for (int k = 1; k <= cap + v + 8; ++k) {
            p *= -u;
            p.truncate_to(cap + v);
            if (p.is_zero()) break;
            geo += p;
        }
        HLaurent r = HLaurent::term(Rat(1) / c0, -v) * geo;
        r.truncate_to(cap);
        return r;
    }

    friend std::ostream &operator<<(std::ostream &os, const HLaurent &h) {
        if (h.is_zero()) return os << "0";
        bool first = true;
        for (const auto &[e, c] : h.c_) {
            if (!first) os << " + ";
            os << "(" << c << ")h^" << e;
            first = false;
        }
        return os;
    }

private:
    static int sat(long long x) {
        if (x >= kInf) return kInf;
        if (x <= -kInf) return -kInf;
        return static_cast<int>(x);
    }

    void normalize() {
        for (auto it = c_.begin(); it != c_.end();) {
            if (it->second == 0 || it->first > hi_)
                it = c_.erase(it);
            else
                ++it;
        }
    }

    std::map<int, Rat> c_;
    int hi_;
};

inline bool is_zero(const Rat &r) { return r == 0; }
inline bool is_zero(const HLaurent &h) { return h.is_zero(); }

/// The odd series varsigma(t) = e^{t/2} - e^{-t/2} evaluated at t = c*hbar,
/// truncated at hbar^cap.
inline HLaurent varsigma_hbar(const Rat &c, int cap) {
    HLaurent r;
    Rat c2 = c * c;
    Rat coeff = c; // c^{2j+1} / (4^j (2j+1)!)
    for (int j = 0; 2 * j + 1 <= cap; ++j) {
        if (j > 0) coeff *= c2 / Rat(4 * (2 * j) * (2 * j + 1));
        r += HLaurent::term(coeff, 2 * j + 1);
    }
    r.truncate_to(cap);
    return r;
}

/// S(t) = varsigma(t)/t at t = c*hbar: the even series 1 + t^2/24 + ...
inline HLaurent s_factor_hbar(const Rat &c, int cap) {
    HLaurent r;
    Rat c2 = c * c;
    Rat coeff = 1;
    for (int j = 0; 2 * j <= cap; ++j) {
        if (j > 0) coeff *= c2 / Rat(4 * (2 * j) * (2 * j + 1));
        r += HLaurent::term(coeff, 2 * j);
    }
    r.truncate_to(cap);
    return r;
}

} // namespace kpcohft

#endif
