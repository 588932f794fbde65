#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lipbar {

// Expression templates are disabled so arithmetic results are plain values
// (std::max, accumulate and friends then work without surprises).
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline double to_double(const Rat& x) { return x.convert_to<double>(); }

// Doubles are binary rationals, so this conversion is exact.
inline Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite value");
    if (x == 0.0) return Rat(0);
    int exp = 0;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    Int num = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    Rat r(num);
    if (exp > 0)
        r *= Rat(Int(1) << exp);
    else if (exp < 0)
        r /= Rat(Int(1) << (-exp));
    return r;
}

inline Rat rat_pow(const Rat& base, unsigned e) {
    Rat r(1), b = base;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline std::string rat_str(const Rat& x) { return x.str(); }

// Parses "p/q" or a plain integer or decimal literal.
inline Rat rat_parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos)
        return Rat(Int(s.substr(0, slash))) / Rat(Int(s.substr(slash + 1)));
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(Int(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    Rat r = Rat(Int(digits));
    for (size_t i = 0; i < frac_len; ++i) r /= 10;
    return r;
}

}  // namespace lipbar
