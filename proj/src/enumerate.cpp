#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "plumbhf/lattice.hpp"
#include "plumbhf/smith.hpp"

namespace plumbhf {

namespace {

using i128 = __int128;

i128 abs128(i128 x) { return x < 0 ? -x : x; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i128 mul_checked(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("enumeration bound arithmetic overflow");
  return r;
}

i128 add_checked(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("enumeration bound arithmetic overflow");
  return r;
}

// Exact rational on 128-bit integers, always reduced with a positive denominator.
struct Q128 {
  i128 n = 0;
  i128 d = 1;

  Q128() = default;
  Q128(i128 num, i128 den = 1) : n(num), d(den) { normalize(); }

  void normalize() {
    if (d == 0) throw std::domain_error("zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
  }

  static Q128 from(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    if (!c.get_num().fits_slong_p() || !c.get_den().fits_slong_p()) {
      throw std::overflow_error("rational does not fit enumeration arithmetic");
    }
    return Q128(c.get_num().get_si(), c.get_den().get_si());
  }

  friend Q128 operator+(const Q128& a, const Q128& b) {
    i128 g = gcd128(a.d, b.d);
    i128 den = mul_checked(a.d / g, b.d);
    i128 num = add_checked(mul_checked(a.n, b.d / g), mul_checked(b.n, a.d / g));
    return Q128(num, den);
  }
  friend Q128 operator-(const Q128& a) { return Q128{-a.n, a.d}; }
  friend Q128 operator-(const Q128& a, const Q128& b) { return a + (-b); }
  friend Q128 operator*(const Q128& a, const Q128& b) {
    i128 g1 = gcd128(a.n, b.d);
    i128 g2 = gcd128(b.n, a.d);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Q128(mul_checked(a.n / g1, b.n / g2), mul_checked(a.d / g2, b.d / g1));
  }
  friend bool operator<=(const Q128& a, const Q128& b) {
    return mul_checked(a.n, b.d) <= mul_checked(b.n, a.d);
  }
  friend bool operator<(const Q128& a, const Q128& b) { return mul_checked(a.n, b.d) < mul_checked(b.n, a.d); }

  i128 floor() const {
    i128 q = n / d;
    if ((n % d != 0) && (n < 0)) --q;
    return q;
  }
};

// floor(sqrt(x)) for x >= 0
i128 isqrt128(i128 x) {
  if (x <= 0) return 0;
  i128 r = 1;
  while (r * r <= x / 4 + 1 && r < (i128(1) << 62)) r *= 2;
  // Newton iteration from above
  i128 y = r * 2;
  while (true) {
    i128 z = (y + x / y) / 2;
    if (z >= y) break;
    y = z;
  }
  while (y * y > x) --y;
  while ((y + 1) * (y + 1) <= x) ++y;
  return y;
}

struct Enumerator {
  std::size_t sigma;
  std::vector<Q128> d;                 // LDL diagonal
  std::vector<std::vector<Q128>> Lm;   // Lm[j][i] for j > i
  std::vector<Q128> z;                 // centre
  Q128 R;
  std::vector<long long> c;
  std::vector<Q128> partial;           // partial[i] = sum_{j >= i} d_j (c_j - centre_j)^2
  const WeightFunction* w;
  long long n;
  PointSet* out;
  std::vector<long long>* values;
  std::size_t max_points;

  void run() {
    c.assign(sigma, 0);
    partial.assign(sigma + 1, Q128(0));
    if (sigma == 0) {
      if (w->chi(IntVector{}) <= n) {
        out->insert(IntVector{});
        values->push_back(w->chi(IntVector{}));
      }
      return;
    }
    if (R < Q128(0)) return;
    rec(sigma - 1);
  }

  void rec(std::size_t i) {
    Q128 centre = z[i];
    for (std::size_t j = i + 1; j < sigma; ++j) centre = centre - Lm[j][i] * (Q128(c[j]) - z[j]);
    Q128 rem = R - partial[i + 1];
    if (rem < Q128(0)) return;
    // integers t with d_i (t - centre)^2 <= rem
    Q128 bound = rem * Q128(d[i].d, d[i].n);
    i128 r = isqrt128(bound.floor()) + 1;
    i128 base = centre.floor();
    i128 lo = base - r - 1;
    i128 hi = base + r + 1;
    auto fits = [&](i128 t) {
      Q128 diff = Q128(t) - centre;
      return d[i] * diff * diff <= rem;
    };
    while (lo <= hi && !fits(lo)) ++lo;
    while (hi >= lo && !fits(hi)) --hi;
    for (i128 t = lo; t <= hi; ++t) {
      c[i] = static_cast<long long>(t);
      Q128 diff = Q128(t) - centre;
      partial[i] = partial[i + 1] + d[i] * diff * diff;
      if (i == 0) {
        IntVector p(c.begin(), c.end());
        long long v = w->chi(p);
        if (v <= n) {
          if (out->size() >= max_points) throw std::runtime_error("sublevel enumeration exceeded point limit");
          out->insert(p);
          values->push_back(v);
        }
      } else {
        rec(i - 1);
      }
    }
    c[i] = 0;
  }
};

}  // namespace

void enumerate_points(const WeightFunction& w, long long n, PointSet& out, std::vector<long long>& values,
                      const EnumerationLimits& limits) {
  const auto& L = *w.lattice;
  std::size_t sigma = L.sigma;
  out = PointSet(sigma);
  values.clear();
  Enumerator e;
  e.sigma = sigma;
  e.w = &w;
  e.n = n;
  e.out = &out;
  e.values = &values;
  e.max_points = limits.max_points;
  if (sigma > 0) {
    // Q = -G; chi <= n  <=>  c^T Q c - a.c <= 2n  <=>  (c - z)^T Q (c - z) <= 2n + z^T Q z
    std::vector<std::vector<Rational>> Q(sigma, std::vector<Rational>(sigma));
    IntMatrix Qi(sigma, IntVector(sigma));
    for (std::size_t i = 0; i < sigma; ++i)
      for (std::size_t j = 0; j < sigma; ++j) {
        Qi[i][j] = -L.gram[i][j];
        Q[i][j] = static_cast<long>(Qi[i][j]);
      }
    std::vector<Rational> zq;
    IntVector a = w.linear;
    solve_rational(Qi, a, zq);
    for (auto& x : zq) x /= 2;
    Rational zQz = 0;
    for (std::size_t i = 0; i < sigma; ++i)
      for (std::size_t j = 0; j < sigma; ++j) zQz += zq[i] * Q[i][j] * zq[j];
    Rational R = Rational(static_cast<long>(2 * n)) + zQz;
    // LDL^T of Q
    std::vector<Rational> dd(sigma);
    std::vector<std::vector<Rational>> Lq(sigma, std::vector<Rational>(sigma, 0));
    for (std::size_t j = 0; j < sigma; ++j) {
      Rational acc = Q[j][j];
      for (std::size_t k = 0; k < j; ++k) acc -= Lq[j][k] * Lq[j][k] * dd[k];
      dd[j] = acc;
      if (dd[j] <= 0) throw std::logic_error("enumerate: Gram matrix is not negative definite");
      for (std::size_t i = j + 1; i < sigma; ++i) {
        Rational acc2 = Q[i][j];
        for (std::size_t k = 0; k < j; ++k) acc2 -= Lq[i][k] * Lq[j][k] * dd[k];
        Lq[i][j] = acc2 / dd[j];
      }
    }
    e.d.resize(sigma);
    e.z.resize(sigma);
    e.Lm.assign(sigma, std::vector<Q128>(sigma));
    for (std::size_t i = 0; i < sigma; ++i) {
      e.d[i] = Q128::from(dd[i]);
      e.z[i] = Q128::from(zq[i]);
      for (std::size_t j = 0; j < sigma; ++j) e.Lm[i][j] = Q128::from(Lq[i][j]);
    }
    e.R = Q128::from(R);
  }
  e.run();
}

SublevelComplex enumerate_sublevel(const WeightFunction& w, long long n, const EnumerationLimits& limits) {
  SublevelComplex sc;
  sc.level = n;
  enumerate_points(w, n, sc.points, sc.values, limits);
  std::size_t N = sc.points.size();
  std::vector<std::size_t> parent(N);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const auto& L = *w.lattice;
  std::vector<std::int16_t> buf(L.sigma);
  for (std::size_t p = 0; p < N; ++p) {
    const std::int16_t* c = sc.points.raw(p);
    for (const auto& e : L.edge_vectors) {
      bool zero = std::all_of(e.begin(), e.end(), [](long long x) { return x == 0; });
      if (zero) continue;
      bool ok = true;
      for (std::size_t a = 0; a < L.sigma; ++a) {
        long long v = c[a] + e[a];
        if (v < INT16_MIN || v > INT16_MAX) ok = false;
        buf[a] = static_cast<std::int16_t>(v);
      }
      if (!ok) continue;
      if (auto q = sc.points.find(buf.data())) {
        std::size_t ra = find(p), rb = find(*q);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
  }
  sc.component.assign(N, 0);
  std::vector<std::size_t> label(N, SIZE_MAX);
  for (std::size_t p = 0; p < N; ++p) {
    std::size_t r = find(p);
    if (label[r] == SIZE_MAX) label[r] = sc.component_count++;
    sc.component[p] = label[r];
  }
  return sc;
}

long long chi_minimum(const WeightFunction& w) {
  long long n = chi_lower_bound(w);
  PointSet pts;
  std::vector<long long> vals;
  for (int attempt = 0; attempt < 100000; ++attempt, ++n) {
    enumerate_points(w, n, pts, vals);
    if (pts.size() > 0) return *std::min_element(vals.begin(), vals.end());
  }
  throw std::logic_error("chi_minimum: no lattice point found");
}

std::vector<IntVector> weak_local_minima(const WeightFunction& w, const PlumbingGraph& g, std::size_t limit) {
  SpincClass cls;
  cls.representative = w.k;
  cls.torsion = true;
  auto stars = star_vectors(g, cls, limit);
  std::vector<IntVector> out;
  out.reserve(stars.size());
  for (const auto& K : stars) out.push_back(w.point_of_char(K));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace plumbhf
