#ifndef KPCOHFT_RATIONAL_HPP
#define KPCOHFT_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace kpcohft {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

// Parses "num/den" or "num". Decimal points are rejected: exactness must
// survive round trips.
inline Rat rat_from_string(const std::string &s) {
    if (s.find('.') != std::string::npos)
        throw std::invalid_argument("rational literal must be \"num/den\", got: " + s);
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    Rat r(s);
    return r;
}

inline std::string rat_to_string(const Rat &r) {
    return r.str();
}

inline Int rat_num(const Rat &r) { return numerator(r); }
inline Int rat_den(const Rat &r) { return denominator(r); }

inline Int factorial(int n) {
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline Rat rat_pow(const Rat &base, int e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        if (base == 0) throw std::domain_error("rat_pow: negative power of zero");
        return Rat(1) / rat_pow(base, -e);
    }
    Rat acc = 1, b = base;
    int k = e;
    while (k > 0) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

} // namespace kpcohft

#endif
