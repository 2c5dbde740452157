#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ovd {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& x) { return x.template convert_to<double>(); }
inline double to_double(const Int& x) { return x.template convert_to<double>(); }

inline Int int_pow(Int base, unsigned e) {
    Int r = 1;
    while (e) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1u;
    }
    return r;
}

inline Rat rat_pow(const Rat& base, unsigned e) {
    return Rat(int_pow(numerator(base), e), int_pow(denominator(base), e));
}

// Parses "0.7", ".5", "7/10", "1e-12", "2.5e-3" into an exact rational.
Rat parse_rational(std::string_view s);

// "num/den", or just "num" for integers.
std::string rat_string(const Rat& x);

} // namespace ovd
