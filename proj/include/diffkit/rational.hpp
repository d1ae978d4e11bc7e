#pragma once

#include <gmpxx.h>

#include <string>

namespace diffkit {

using Integer = mpz_class;
using Rational = mpq_class;

Integer factorial(unsigned long k);
Integer binomial(unsigned long n, unsigned long k);

// Canonical text: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

}  // namespace diffkit
