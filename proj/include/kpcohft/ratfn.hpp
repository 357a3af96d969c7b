#ifndef KPCOHFT_RATFN_HPP
#define KPCOHFT_RATFN_HPP

#include "kpcohft/rational.hpp"
#include "kpcohft/zseries.hpp"

#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace kpcohft {

/// Exact polynomial over Rat, coefficients by ascending degree, no trailing
/// zeros (the zero polynomial has an empty coefficient vector).
class Poly {
public:
    Poly() = default;
    Poly(std::vector<Rat> c) : c_(std::move(c)) { trim(); }
    Poly(const Rat &c) {
        if (c != 0) c_.push_back(c);
    }
    Poly(int c) : Poly(Rat(c)) {}

    static Poly monomial(const Rat &c, int k) {
        if (c == 0) return Poly();
        std::vector<Rat> v(k + 1);
        v[k] = c;
        return Poly(std::move(v));
    }
    static Poly identity() { return monomial(1, 1); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    const std::vector<Rat> &coeffs() const { return c_; }
    Rat coeff(int i) const {
        return (i >= 0 && i <= degree()) ? c_[i] : Rat(0);
    }
    Rat leading() const { return is_zero() ? Rat(0) : c_.back(); }

    Rat eval(const Rat &x) const {
        Rat r = 0;
        for (int i = degree(); i >= 0; --i) r = r * x + c_[i];
        return r;
    }

    friend Poly operator+(const Poly &a, const Poly &b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly &a, const Poly &b) { return a + (-b); }
    Poly operator-() const {
        Poly r = *this;
        for (auto &x : r.c_) x = -x;
        return r;
    }
    friend Poly operator*(const Poly &a, const Poly &b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly &a, const Rat &s) {
        if (s == 0) return Poly();
        Poly r = a;
        for (auto &x : r.c_) x *= s;
        return r;
    }
    friend Poly operator*(const Rat &s, const Poly &a) { return a * s; }

    Poly &operator+=(const Poly &b) { return *this = *this + b; }
    Poly &operator-=(const Poly &b) { return *this = *this - b; }
    Poly &operator*=(const Poly &b) { return *this = *this * b; }

    bool operator==(const Poly &b) const { return c_ == b.c_; }

    Poly derivative() const {
        if (degree() < 1) return Poly();
        std::vector<Rat> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat((int)i);
        return Poly(std::move(r));
    }

    /// Euclidean division: returns (quotient, remainder).
    std::pair<Poly, Poly> divmod(const Poly &d) const {
        if (d.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
        Poly q, r = *this;
        Rat linv = Rat(1) / d.leading();
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int k = r.degree() - d.degree();
            Rat c = r.leading() * linv;
            Poly t = monomial(c, k);
            q += t;
            r -= t * d;
        }
        return {q, r};
    }

    /// p(z^{-1}) z^{deg p}: coefficient reversal.
    Poly reversed() const {
        std::vector<Rat> r(c_.rbegin(), c_.rend());
        return Poly(std::move(r));
    }

    /// p(z + a)
    Poly shifted(const Rat &a) const {
        Poly r;
        for (int i = degree(); i >= 0; --i) {
            r = r * (identity() + Poly(a));
            r += Poly(c_[i]);
        }
        return r;
    }

    /// Order of vanishing at a rational point (0 if nonvanishing; throws on
    /// the zero polynomial).
    int vanishing_order(const Rat &a) const {
        if (is_zero()) throw std::domain_error("Poly: vanishing order of zero polynomial");
        Poly p = *this;
        int m = 0;
        while (p.eval(a) == 0) {
            // deflate by (z - a)
            auto [q, rem] = p.divmod(identity() - Poly(a));
            p = q;
            ++m;
        }
        return m;
    }

    /// All rational roots with multiplicity, found from integer divisor pairs
    /// of the (cleared-denominator) leading and constant coefficients.
    std::vector<std::pair<Rat, int>> rational_roots() const;

    /// Taylor coefficients at z=0 up to the requested order (exact beyond the
    /// degree too, they are just zero).
    QSeries series(int order) const {
        QSeries s(order);
        for (int i = 0; i <= std::min(order, degree()); ++i) s.set_coeff(i, c_[i]);
        return s;
    }

    friend std::ostream &operator<<(std::ostream &os, const Poly &p) {
        if (p.is_zero()) return os << "0";
        for (int i = 0; i <= p.degree(); ++i) {
            if (i) os << " + ";
            os << "(" << p.c_[i] << ")z^" << i;
        }
        return os;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = a * (Rat(1) / a.leading()); // monic
    return a;
}

inline std::vector<std::pair<Rat, int>> Poly::rational_roots() const {
    std::vector<std::pair<Rat, int>> roots;
    if (is_zero()) return roots;
    Poly p = *this;
    // clear denominators and content
    Int lcm = 1;
    for (const auto &c : p.coeffs()) lcm = boost::multiprecision::lcm(lcm, rat_den(c));
    p = p * Rat(lcm);
    Int content = 0;
    for (const auto &c : p.coeffs()) content = boost::multiprecision::gcd(content, rat_num(c));
    if (content != 0) p = p * (Rat(1) / Rat(content));

    if (p.coeff(0) == 0) {
        int m = 0;
        Poly z = Poly::identity();
        while (p.coeff(0) == 0 && p.degree() > 0) {
            p = p.divmod(z).first;
            ++m;
        }
        if (m > 0) roots.emplace_back(Rat(0), m);
    }
    if (p.degree() < 1) return roots;

    auto divisors = [](Int n) {
        if (n < 0) n = -n;
        std::vector<Int> d;
        for (Int i = 1; i * i <= n; ++i)
            if (n % i == 0) {
                d.push_back(i);
                if (i * i != n) d.push_back(n / i);
            }
        return d;
    };
    Int a0 = rat_num(p.coeff(0));
    Int an = rat_num(p.leading());
    for (const Int &q : divisors(a0))
        for (const Int &r : divisors(an))
            for (int sign : {1, -1}) {
                Rat cand = Rat(q) / Rat(r) * sign;
                bool seen = false;
                for (const auto &[x, m] : roots)
                    if (x == cand) seen = true;
                if (seen) continue;
                int m = p.vanishing_order(cand);
                if (m > 0) roots.emplace_back(cand, m);
            }
    return roots;
}

/// Rational function num/den over Rat, stored gcd-reduced with monic
/// denominator.
class RatFn {
public:
    RatFn() : num_(), den_(1) {}
    RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }
    RatFn(const Poly &p) : num_(p), den_(1) {}
    RatFn(const Rat &c) : num_(c), den_(1) {}
    RatFn(int c) : num_(c), den_(1) {}

    static RatFn identity() { return RatFn(Poly::identity()); }

    const Poly &num() const { return num_; }
    const Poly &den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend RatFn operator+(const RatFn &a, const RatFn &b) {
        return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFn operator-(const RatFn &a, const RatFn &b) { return a + (-b); }
    RatFn operator-() const { return RatFn(-num_, den_); }
    friend RatFn operator*(const RatFn &a, const RatFn &b) {
        return RatFn(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFn operator/(const RatFn &a, const RatFn &b) {
        if (b.is_zero()) throw std::domain_error("RatFn: division by zero");
        return RatFn(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend RatFn operator*(const RatFn &a, const Rat &s) { return RatFn(a.num_ * s, a.den_); }
    friend RatFn operator*(const Rat &s, const RatFn &a) { return a * s; }

    RatFn &operator+=(const RatFn &b) { return *this = *this + b; }
    RatFn &operator-=(const RatFn &b) { return *this = *this - b; }
    RatFn &operator*=(const RatFn &b) { return *this = *this * b; }

    bool operator==(const RatFn &b) const { return num_ == b.num_ && den_ == b.den_; }

    RatFn derivative() const {
        return RatFn(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    Rat eval(const Rat &x) const {
        Rat d = den_.eval(x);
        if (d == 0) throw std::domain_error("RatFn::eval at a pole");
        return num_.eval(x) / d;
    }

    /// Pole order at a finite rational point (0 if regular).
    int pole_order(const Rat &a) const {
        if (is_zero()) return 0;
        int dord = den_.vanishing_order(a);
        if (dord == 0) return 0;
        int nord = num_.vanishing_order(a);
        return std::max(dord - nord, 0);
    }

    /// Laurent expansion at a finite point: returns (val, coeffs) with
    /// f = sum_i coeffs[i] (z-a)^{val+i}, coeffs.size() = n_terms.
    std::pair<int, std::vector<Rat>> laurent_at(const Rat &a, int n_terms) const {
        if (is_zero()) return {0, std::vector<Rat>(n_terms, Rat(0))};
        Poly ns = num_.shifted(a), ds = den_.shifted(a);
        int vn = 0, vd = 0;
        Poly z = Poly::identity();
        while (ns.coeff(0) == 0) { ns = ns.divmod(z).first; ++vn; }
        while (ds.coeff(0) == 0) { ds = ds.divmod(z).first; ++vd; }
        int val = vn - vd;
        QSeries q = ns.series(n_terms - 1) / ds.series(n_terms - 1);
        std::vector<Rat> coeffs(n_terms);
        for (int i = 0; i < n_terms; ++i) coeffs[i] = q.coeff(i);
        return {val, coeffs};
    }

    /// Laurent expansion at infinity in u = 1/z: f = sum_i coeffs[i] u^{val+i}.
    std::pair<int, std::vector<Rat>> laurent_at_infinity(int n_terms) const {
        if (is_zero()) return {0, std::vector<Rat>(n_terms, Rat(0))};
        // f(1/u) = u^{deg den - deg num} * rev(num)(u)/rev(den)(u)
        RatFn g(num_.reversed(), den_.reversed());
        auto [val, coeffs] = g.laurent_at(0, n_terms);
        return {val + den_.degree() - num_.degree(), coeffs};
    }

    /// Residue of f dz at a finite rational point.
    Rat residue_at(const Rat &a) const {
        int po = pole_order(a);
        if (po == 0) return Rat(0);
        auto [val, coeffs] = laurent_at(a, po + 1);
        int idx = -1 - val;
        return (idx >= 0 && idx < (int)coeffs.size()) ? coeffs[idx] : Rat(0);
    }

    /// Residue of f dz at infinity: -[u^1] of f(1/u) du/u^2 pulled back, i.e.
    /// -(coefficient of z^{-1} in the expansion of f at infinity).
    Rat residue_at_infinity() const {
        int span = num_.degree() - den_.degree() + 3;
        if (span < 2) span = 2;
        auto [val, coeffs] = laurent_at_infinity(span);
        int idx = 1 - val; // u^1 coefficient
        Rat c = (idx >= 0 && idx < (int)coeffs.size()) ? coeffs[idx] : Rat(0);
        return -c;
    }

    /// Taylor expansion at z=0 (requires regularity there).
    QSeries series(int order) const {
        if (den_.eval(0) == 0) throw std::domain_error("RatFn::series: pole at the origin");
        return num_.series(order) / den_.series(order);
    }

    friend std::ostream &operator<<(std::ostream &os, const RatFn &f) {
        return os << "(" << f.num_ << ") / (" << f.den_ << ")";
    }

private:
    void reduce() {
        if (den_.is_zero()) throw std::domain_error("RatFn: zero denominator");
        if (num_.is_zero()) {
            den_ = Poly(1);
            return;
        }
        Poly g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.divmod(g).first;
            den_ = den_.divmod(g).first;
        }
        Rat linv = Rat(1) / den_.leading();
        num_ = num_ * linv;
        den_ = den_ * linv;
    }

    Poly num_, den_;
};

} // namespace kpcohft

#endif
