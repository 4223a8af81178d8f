#include "dynaflow/rational.hpp"

#include <stdexcept>

namespace dynaflow {

std::string to_fraction_string(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_fraction_string(const std::string& text) {
  using boost::multiprecision::cpp_int;
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(cpp_int(text));
    cpp_int num(text.substr(0, slash));
    cpp_int den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a fraction: '" + text + "'");
  }
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace dynaflow
