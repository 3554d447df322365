#ifndef SPINMIRROR_RATIONAL_HPP
#define SPINMIRROR_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>

#include "spinmirror/error.hpp"

namespace spinmirror {

// Exact arithmetic substrate. Every finite double is a dyadic rational, so
// chain data can always be carried exactly; only explicit "p/q" strings
// introduce non-dyadic denominators.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// Exact conversion, no rounding: the double's dyadic value is preserved.
inline Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw Error(Errc::InvalidSpec, "non-finite number in input");
  return Rat(x);
}

// Accepts "p/q", "p", or a plain decimal/scientific literal (parsed as a
// double, then converted exactly).
Rat rat_parse(const std::string& text);

// "p/q" when the denominator is not 1, otherwise "p".
std::string rat_str(const Rat& r);

// True when the rational is exactly representable as a double (so a JSON
// number round-trips it losslessly).
inline bool rat_fits_double(const Rat& r) {
  double d = to_double(r);
  return std::isfinite(d) && Rat(d) == r;
}

}  // namespace spinmirror

#endif
