#ifndef KPCOHFT_ZSERIES_HPP
#define KPCOHFT_ZSERIES_HPP

#include "kpcohft/hlaurent.hpp"
#include "kpcohft/rational.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace kpcohft {

/// Truncated univariate power series in the spectral coordinate z, dense,
/// with coefficients in an exact ring T (Rat or HLaurent). Coefficients are
/// reliable through z^order() inclusive; binary operations intersect the
/// orders of their operands.
template <typename T>
class Series {
public:
    Series() : c_(1) {}
    explicit Series(int order) : c_(order + 1) {}
    Series(int order, std::vector<T> coeffs) : c_(std::move(coeffs)) { c_.resize(order + 1); }

    static Series zero(int order) { return Series(order); }
    static Series constant(const T &v, int order) {
        Series s(order);
        s.c_[0] = v;
        return s;
    }
    static Series identity(int order) { // the series z
        Series s(order);
        if (order >= 1) s.c_[1] = T(1);
        return s;
    }
    static Series monomial(const T &v, int k, int order) {
        Series s(order);
        if (k <= order) s.c_[k] = v;
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const T &coeff(int i) const {
        if (i < 0 || i > order())
            throw std::out_of_range("Series::coeff: index beyond truncation order");
        return c_[i];
    }
    void set_coeff(int i, const T &v) { c_.at(i) = v; }

    bool is_zero() const {
        for (const auto &x : c_)
            if (!kpcohft::is_zero(x)) return false;
        return true;
    }
    int valuation() const { // kInf-style large value for zero
        for (int i = 0; i <= order(); ++i)
            if (!kpcohft::is_zero(c_[i])) return i;
        return order() + 1;
    }

    Series truncated(int n) const {
        Series r = *this;
        r.c_.resize(std::min(n, order()) + 1);
        return r;
    }

    friend Series operator+(const Series &a, const Series &b) {
        Series r(std::min(a.order(), b.order()));
        for (int i = 0; i <= r.order(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }
    friend Series operator-(const Series &a, const Series &b) {
        Series r(std::min(a.order(), b.order()));
        for (int i = 0; i <= r.order(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
        return r;
    }
    Series operator-() const {
        Series r = *this;
        for (auto &x : r.c_) x = -x;
        return r;
    }
    friend Series operator*(const Series &a, const Series &b) {
        Series r(std::min(a.order(), b.order()));
        for (int i = 0; i <= a.order(); ++i) {
            if (kpcohft::is_zero(a.c_[i])) continue;
            for (int j = 0; i + j <= r.order() && j <= b.order(); ++j) {
                if (kpcohft::is_zero(b.c_[j])) continue;
                r.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return r;
    }
    friend Series operator*(const Series &a, const T &s) {
        Series r = a;
        for (auto &x : r.c_) x = x * s;
        return r;
    }
    friend Series operator*(const T &s, const Series &a) { return a * s; }

    Series &operator+=(const Series &b) { return *this = *this + b; }
    Series &operator-=(const Series &b) { return *this = *this - b; }
    Series &operator*=(const Series &b) { return *this = *this * b; }

    /// Multiplication by z^k; the truncation order grows with the shift.
    Series shifted_up(int k) const {
        Series r(order() + k);
        for (int i = 0; i <= order(); ++i) r.c_[i + k] = c_[i];
        return r;
    }

    Series derivative() const {
        if (order() == 0) return Series(0);
        Series r(order() - 1);
        for (int i = 1; i <= order(); ++i) r.c_[i - 1] = c_[i] * T(i);
        return r;
    }

    /// Antiderivative with zero constant term.
    Series integrated() const {
        Series r(order() + 1);
        for (int i = 0; i <= order(); ++i) r.c_[i + 1] = c_[i] * inv_int(i + 1);
        return r;
    }

    /// Euler operator z d/dz.
    Series euler() const {
        Series r = *this;
        for (int i = 0; i <= order(); ++i) r.c_[i] = c_[i] * T(i);
        return r;
    }

    Series pow(int n) const {
        Series r = constant(T(1), order());
        Series b = *this;
        while (n > 0) {
            if (n & 1) r *= b;
            b *= b;
            n >>= 1;
        }
        return r;
    }

    /// f(g(z)); g must have zero constant term.
    Series compose(const Series &g) const {
        if (!kpcohft::is_zero(g.c_[0]))
            throw std::domain_error("Series::compose: inner series has nonzero constant term");
        int n = std::min(order(), g.order());
        Series r = constant(c_[order()], n);
        Series gt = g.truncated(n);
        for (int i = order() - 1; i >= 0; --i) {
            r = r * gt;
            r.c_[0] = r.c_[0] + c_[i];
        }
        return r;
    }

    friend std::ostream &operator<<(std::ostream &os, const Series &s) {
        os << "[";
        for (int i = 0; i <= s.order(); ++i) {
            if (i) os << ", ";
            os << s.c_[i];
        }
        return os << "]";
    }

    bool operator==(const Series &b) const {
        int n = std::min(order(), b.order());
        for (int i = 0; i <= n; ++i)
            if (!kpcohft::is_zero(c_[i] - b.c_[i])) return false;
        // trailing coefficients beyond the shared order must vanish too
        for (int i = n + 1; i <= order(); ++i)
            if (!kpcohft::is_zero(c_[i])) return false;
        for (int i = n + 1; i <= b.order(); ++i)
            if (!kpcohft::is_zero(b.c_[i])) return false;
        return true;
    }

private:
    static T inv_int(int n) { return T(1) * Rat(Rat(1) / n); }

    std::vector<T> c_;
};

using QSeries = Series<Rat>;   // hbar-free series
using HSeries = Series<HLaurent>;

/// exp of a series with zero constant term.
template <typename T>
Series<T> exp_series(const Series<T> &f) {
    if (!is_zero(f.coeff(0)))
        throw std::domain_error("exp_series: nonzero constant term");
    Series<T> r = Series<T>::constant(T(1), f.order());
    Series<T> p = Series<T>::constant(T(1), f.order());
    Int kfac = 1;
    for (int k = 1; k <= f.order(); ++k) {
        p *= f;
        if (p.is_zero()) break;
        kfac *= k;
        r += p * T(Rat(Rat(1) / Rat(kfac)));
    }
    return r;
}

/// log of a series with constant term 1.
template <typename T>
Series<T> log_series(const Series<T> &f) {
    if (!is_zero(f.coeff(0) - T(1)))
        throw std::domain_error("log_series: constant term is not 1");
    Series<T> u = f;
    u.set_coeff(0, T(0));
    Series<T> r(f.order());
    Series<T> p = Series<T>::constant(T(1), f.order());
    for (int k = 1; k <= f.order(); ++k) {
        p *= u;
        if (p.is_zero()) break;
        Rat s = (k % 2 == 1) ? Rat(1) / k : Rat(-1) / k;
        r += p * T(s);
    }
    return r;
}

/// Reciprocal of a series over Rat with nonzero constant term.
inline QSeries reciprocal(const QSeries &f) {
    if (f.coeff(0) == 0)
        throw std::domain_error("reciprocal: zero constant term");
    int n = f.order();
    QSeries r(n);
    Rat c0inv = Rat(1) / f.coeff(0);
    r.set_coeff(0, c0inv);
    for (int i = 1; i <= n; ++i) {
        Rat acc = 0;
        for (int j = 1; j <= i; ++j) acc += f.coeff(j) * r.coeff(i - j);
        r.set_coeff(i, -acc * c0inv);
    }
    return r;
}

inline QSeries operator/(const QSeries &a, const QSeries &b) { return a * reciprocal(b); }

/// Compositional inverse of f = c1 z + O(z^2), c1 != 0, by Newton iteration
/// with doubling precision: g solves f(g(z)) = z through the truncation
/// order.
inline QSeries reversion(const QSeries &f) {
    if (f.coeff(0) != 0)
        throw std::domain_error("reversion: nonzero constant term");
    if (f.order() < 1 || f.coeff(1) == 0)
        throw std::domain_error("reversion: vanishing linear coefficient");
    int n = f.order();
    QSeries g(1);
    g.set_coeff(1, Rat(1) / f.coeff(1));
    QSeries fp = f.derivative();
    int prec = 1;
    while (prec < n) {
        prec = std::min(2 * prec + 1, n);
        QSeries gt = g.truncated(prec);
        // pad to the working precision
        QSeries gw(prec);
        for (int i = 0; i <= gt.order(); ++i) gw.set_coeff(i, gt.coeff(i));
        QSeries num = f.truncated(prec).compose(gw) - QSeries::identity(prec);
        QSeries den = fp.truncated(prec - 1);
        // derivative lowers the order by one; recompose at full precision
        QSeries denw(prec);
        for (int i = 0; i <= den.order(); ++i) denw.set_coeff(i, den.coeff(i));
        QSeries corr = num / denw.compose(gw);
        g = gw - corr;
    }
    return g.truncated(n);
}

enum class SMode { Forward, Inverse };

/// Applies S(scale * k * hbar)^{+-1} to the z^k term of f, expanding each
/// factor as an even hbar-series truncated at hbar^cap.
inline HSeries apply_s_operator(const Rat &scale, const HSeries &f, SMode mode, int cap) {
    HSeries r(f.order());
    for (int k = 0; k <= f.order(); ++k) {
        if (is_zero(f.coeff(k))) continue;
        HLaurent s = s_factor_hbar(scale * k, cap);
        if (mode == SMode::Inverse) s = s.inverse(cap);
        r.set_coeff(k, f.coeff(k) * s);
    }
    return r;
}

/// Lifts an hbar-free series into HLaurent coefficients.
inline HSeries lift(const QSeries &f) {
    HSeries r(f.order());
    for (int i = 0; i <= f.order(); ++i) r.set_coeff(i, HLaurent(f.coeff(i)));
    return r;
}

/// Projects an HLaurent-coefficient series that is actually hbar-free;
/// throws if any coefficient depends on hbar.
inline QSeries project_hbar_free(const HSeries &f) {
    QSeries r(f.order());
    for (int i = 0; i <= f.order(); ++i) {
        const HLaurent &h = f.coeff(i);
        for (const auto &[e, c] : h.coeffs())
            if (e != 0)
                throw std::domain_error("series coefficient unexpectedly depends on hbar");
        r.set_coeff(i, h.coeff(0));
    }
    return r;
}

} // namespace kpcohft

#endif
