#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "anacomp/errors.hpp"

namespace anacomp::construction {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;
using BigFloat = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultBigBits = 256;

// Deepest level usable with IEEE double: 8^(2^9) overflows.
inline constexpr int kMaxDoubleDepth = 8;

struct Precision {
  bool big = false;
  unsigned bits = kDefaultBigBits;

  static Precision double_precision() { return {}; }
  static Precision big_precision(unsigned bits = kDefaultBigBits) { return {true, bits}; }

  std::string label() const {
    return big ? "big(" + std::to_string(bits) + " bits)" : "double";
  }
};

// Sets the working precision of newly created BigFloat values on this
// thread and restores the previous value on destruction.
class BigPrecisionScope {
 public:
  explicit BigPrecisionScope(unsigned bits)
      : previous_(BigFloat::default_precision()) {
    if (bits < 64) throw InvalidInput("big precision must be at least 64 bits");
    BigFloat::default_precision(digits10_for(bits));
  }
  ~BigPrecisionScope() { BigFloat::default_precision(previous_); }
  BigPrecisionScope(const BigPrecisionScope&) = delete;
  BigPrecisionScope& operator=(const BigPrecisionScope&) = delete;

  static unsigned digits10_for(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
  }

 private:
  unsigned previous_;
};

template <typename Real>
Real to_real(const Rational& q) {
  if constexpr (std::is_same_v<Real, double>) {
    return q.convert_to<double>();
  } else {
    return Real(boost::multiprecision::numerator(q)) / Real(boost::multiprecision::denominator(q));
  }
}

template <typename Real>
Real machine_epsilon() {
  return std::numeric_limits<Real>::epsilon();
}

template <typename Real>
std::string to_decimal(const Real& x) {
  std::ostringstream os;
  if constexpr (std::is_same_v<Real, double>)
    os.precision(std::numeric_limits<double>::max_digits10);
  else
    os.precision(static_cast<std::streamsize>(x.precision()) + 2);
  os << std::scientific << x;
  return os.str();
}

inline std::string to_string(const Integer& v) { return v.str(); }

}  // namespace anacomp::construction
