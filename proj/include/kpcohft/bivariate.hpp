#ifndef KPCOHFT_BIVARIATE_HPP
#define KPCOHFT_BIVARIATE_HPP

#include "kpcohft/rational.hpp"
#include "kpcohft/zseries.hpp"

#include <ostream>
#include <stdexcept>
#include <vector>

namespace kpcohft {

/// Truncated power series in two variables z1, z2 over Rat, dense on the
/// square [0,order]^2. Total-degree exactness is not tracked; callers keep
/// both inputs at the same order and read coefficients with i+j <= order.
class BivarSeries {
public:
    BivarSeries() : n_(0), c_(1) {}
    explicit BivarSeries(int order) : n_(order), c_((order + 1) * (order + 1)) {}

    static BivarSeries constant(const Rat &v, int order) {
        BivarSeries s(order);
        s.at(0, 0) = v;
        return s;
    }
    /// f(z1) viewed as a bivariate series.
    static BivarSeries from_first(const QSeries &f, int order) {
        BivarSeries s(order);
        for (int i = 0; i <= std::min(order, f.order()); ++i) s.at(i, 0) = f.coeff(i);
        return s;
    }
    static BivarSeries from_second(const QSeries &f, int order) {
        BivarSeries s(order);
        for (int j = 0; j <= std::min(order, f.order()); ++j) s.at(0, j) = f.coeff(j);
        return s;
    }

    int order() const { return n_; }
    Rat &at(int i, int j) { return c_[i * (n_ + 1) + j]; }
    const Rat &at(int i, int j) const { return c_[i * (n_ + 1) + j]; }
    Rat coeff(int i, int j) const {
        if (i < 0 || j < 0 || i > n_ || j > n_)
            throw std::out_of_range("BivarSeries::coeff beyond truncation");
        return at(i, j);
    }

    bool is_zero() const {
        for (const auto &x : c_)
            if (x != 0) return false;
        return true;
    }

    BivarSeries truncated(int order) const {
        BivarSeries r(std::min(order, n_));
        for (int i = 0; i <= r.n_; ++i)
            for (int j = 0; j <= r.n_; ++j) r.at(i, j) = at(i, j);
        return r;
    }

    friend BivarSeries operator+(const BivarSeries &a, const BivarSeries &b) {
        BivarSeries r(std::min(a.n_, b.n_));
        for (int i = 0; i <= r.n_; ++i)
            for (int j = 0; j <= r.n_; ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
        return r;
    }
    friend BivarSeries operator-(const BivarSeries &a, const BivarSeries &b) {
        return a + (-b);
    }
    BivarSeries operator-() const {
        BivarSeries r = *this;
        for (auto &x : r.c_) x = -x;
        return r;
    }
    friend BivarSeries operator*(const BivarSeries &a, const BivarSeries &b) {
        BivarSeries r(std::min(a.n_, b.n_));
        for (int i1 = 0; i1 <= a.n_; ++i1)
            for (int j1 = 0; j1 <= a.n_; ++j1) {
                if (a.at(i1, j1) == 0) continue;
                for (int i2 = 0; i1 + i2 <= r.n_ && i2 <= b.n_; ++i2)
                    for (int j2 = 0; j1 + j2 <= r.n_ && j2 <= b.n_; ++j2) {
                        if (b.at(i2, j2) == 0) continue;
                        r.at(i1 + i2, j1 + j2) += a.at(i1, j1) * b.at(i2, j2);
                    }
            }
        return r;
    }
    friend BivarSeries operator*(const BivarSeries &a, const Rat &s) {
        BivarSeries r = a;
        for (auto &x : r.c_) x *= s;
        return r;
    }
    friend BivarSeries operator*(const Rat &s, const BivarSeries &a) { return a * s; }

    BivarSeries &operator+=(const BivarSeries &b) { return *this = *this + b; }
    BivarSeries &operator-=(const BivarSeries &b) { return *this = *this - b; }
    BivarSeries &operator*=(const BivarSeries &b) { return *this = *this * b; }

    bool operator==(const BivarSeries &b) const {
        int n = std::min(n_, b.n_);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                if (at(i, j) != b.at(i, j)) return false;
        return true;
    }

    BivarSeries d1() const { // d/dz1
        BivarSeries r(n_);
        for (int i = 1; i <= n_; ++i)
            for (int j = 0; j <= n_; ++j) r.at(i - 1, j) = at(i, j) * i;
        return r;
    }
    BivarSeries d2() const {
        BivarSeries r(n_);
        for (int i = 0; i <= n_; ++i)
            for (int j = 1; j <= n_; ++j) r.at(i, j - 1) = at(i, j) * j;
        return r;
    }

    /// Restriction z2 = 0.
    QSeries at_z2_zero() const {
        QSeries r(n_);
        for (int i = 0; i <= n_; ++i) r.set_coeff(i, at(i, 0));
        return r;
    }

    friend std::ostream &operator<<(std::ostream &os, const BivarSeries &s) {
        bool any = false;
        for (int i = 0; i <= s.n_; ++i)
            for (int j = 0; j <= s.n_; ++j) {
                if (s.at(i, j) == 0) continue;
                if (any) os << " + ";
                os << "(" << s.at(i, j) << ")z1^" << i << " z2^" << j;
                any = true;
            }
        if (!any) os << "0";
        return os;
    }

private:
    int n_;
    std::vector<Rat> c_;
};

/// log(1 + h) for h with zero constant term.
inline BivarSeries log1p_bivar(const BivarSeries &h) {
    if (h.coeff(0, 0) != 0)
        throw std::domain_error("log1p_bivar: nonzero constant term");
    int n = h.order();
    BivarSeries r(n), p = BivarSeries::constant(1, n);
    for (int k = 1; k <= 2 * n; ++k) {
        p *= h;
        if (p.is_zero()) break;
        Rat s = (k % 2 == 1) ? Rat(1) / k : Rat(-1) / k;
        r += p * s;
    }
    return r;
}

} // namespace kpcohft

#endif
