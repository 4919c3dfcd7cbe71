#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace hcp {

/// Exact rational scalar used for certificate verification and the slow
/// exact-solve path.
using Rat = boost::multiprecision::cpp_rational;

/// Exact conversion; every finite double is a dyadic rational.
Rat rat_from_double(double x);

double rat_to_double(const Rat& r);

/// Nearest rational with denominator <= max_den (continued fractions).
Rat rat_approximate(double x, long long max_den);

std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

}  // namespace hcp
