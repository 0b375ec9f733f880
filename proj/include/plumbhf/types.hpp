#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace plumbhf {

using Rational = mpq_class;
using BigInt = mpz_class;
using IntVector = std::vector<long long>;
using IntMatrix = std::vector<IntVector>;
using BigMatrix = std::vector<std::vector<BigInt>>;

// Raised when an input plumbing violates a hypothesis the computation needs.
class UnsupportedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a result would need the reversed-orientation data that is missing.
class PartialInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "p/q" with q >= 1, also for integers.
std::string rational_to_string(const Rational& r);
// Accepts "p/q", "p" or a decimal such as "-1.5".
Rational parse_rational(const std::string& text);

Rational floor_mod(const Rational& x, const Rational& m);
BigInt floor_of(const Rational& r);
BigInt ceil_of(const Rational& r);

long long dot(const IntVector& a, const IntVector& b);
IntVector mat_vec(const IntMatrix& m, const IntVector& v);
long long checked_ll(const BigInt& x);
inline Rational rat_of(long long x) { return Rational(static_cast<long>(x)); }

}  // namespace plumbhf
