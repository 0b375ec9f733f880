#include "plumbhf/types.hpp"

#include <cctype>
#include <limits>

namespace plumbhf {

std::string rational_to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  }
  if (t.empty()) throw std::invalid_argument("empty rational");
  auto dotpos = t.find('.');
  if (dotpos != std::string::npos) {
    if (t.find('/') != std::string::npos) throw std::invalid_argument("bad rational: " + text);
    std::string digits = t.substr(0, dotpos) + t.substr(dotpos + 1);
    std::size_t frac_len = t.size() - dotpos - 1;
    BigInt num;
    if (digits.empty() || digits == "-" || digits == "+" || num.set_str(digits, 10) != 0) {
      throw std::invalid_argument("bad rational: " + text);
    }
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  Rational r;
  if (r.set_str(t, 10) != 0 || r.get_den() == 0) throw std::invalid_argument("bad rational: " + text);
  r.canonicalize();
  return r;
}

BigInt floor_of(const Rational& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

BigInt ceil_of(const Rational& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Rational floor_mod(const Rational& x, const Rational& m) {
  Rational q = x / m;
  Rational res = x - Rational(floor_of(q)) * m;
  res.canonicalize();
  return res;
}

long long dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  long long acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

IntVector mat_vec(const IntMatrix& m, const IntVector& v) {
  IntVector out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], v);
  return out;
}

long long checked_ll(const BigInt& x) {
  if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
  return x.get_si();
}

}  // namespace plumbhf
