#include "hcp/rational.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hcp {

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
    if (x == 0.0) return Rat(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    long long im = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    Rat r(im);
    boost::multiprecision::cpp_int pow2 = boost::multiprecision::cpp_int(1) << std::abs(exp);
    if (exp >= 0)
        r *= Rat(pow2);
    else
        r /= Rat(pow2);
    return r;
}

double rat_to_double(const Rat& r) { return static_cast<double>(r); }

Rat rat_approximate(double x, long long max_den) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
    bool neg = x < 0;
    double v = neg ? -x : x;
    // Continued-fraction convergents p/q of v until the denominator cap.
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(frac);
        if (fl > 9e17) break;
        long long a = static_cast<long long>(fl);
        if (q0 > 0 && a > 0 && q1 > (max_den - q0) / a) break;  // q2 would overflow cap
        long long p2 = a * p1 + p0;
        long long q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = frac - fl;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0) return rat_from_double(x);
    Rat r(p1, q1);
    return neg ? Rat(-r) : r;
}

std::string rat_to_string(const Rat& r) { return r.str(); }

Rat rat_from_string(const std::string& s) { return Rat(s); }

}  // namespace hcp
