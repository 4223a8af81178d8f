#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dynaflow {

using Rational = boost::multiprecision::cpp_rational;

// Always "p/q", including integers ("21/1").
std::string to_fraction_string(const Rational& r);

// Accepts "p/q" or a bare integer "p".
Rational parse_fraction_string(const std::string& text);

double to_double(const Rational& r);

}  // namespace dynaflow
