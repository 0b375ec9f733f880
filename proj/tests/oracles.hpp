#pragma once

// Brute-force reference computations used as independent oracles by the tests.
// Nothing here calls the library's lattice reduction, Smith form or enumerator.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "plumbhf/plumbing.hpp"
#include "plumbhf/types.hpp"

namespace oracle {

using plumbhf::IntMatrix;
using plumbhf::IntVector;
using plumbhf::Rational;

inline IntMatrix form_matrix(const plumbhf::PlumbingGraph& g) {
  std::size_t s = g.size();
  IntMatrix b(s, IntVector(s, 0));
  for (std::size_t i = 0; i < s; ++i) b[i][i] = g.weight(i);
  for (auto [u, v] : g.edges()) b[u][v] = b[v][u] = 1;
  return b;
}

// Laplace expansion; fine for the 6x6 matrices the tests use.
inline plumbhf::BigInt det(const IntMatrix& m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return plumbhf::BigInt(static_cast<long>(m[0][0]));
  plumbhf::BigInt total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    IntMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      IntVector row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    plumbhf::BigInt term = plumbhf::BigInt(static_cast<long>(m[0][c])) * det(minor);
    total += (c % 2 == 0) ? term : plumbhf::BigInt(-term);
  }
  return total;
}

inline IntMatrix principal(const IntMatrix& m, const std::vector<std::size_t>& idx) {
  IntMatrix out;
  for (auto i : idx) {
    IntVector row;
    for (auto j : idx) row.push_back(m[i][j]);
    out.push_back(row);
  }
  return out;
}

// Negative definite iff (-1)^k times every leading principal minor of order k is positive.
inline bool negative_definite(const IntMatrix& m) {
  for (std::size_t k = 1; k <= m.size(); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    plumbhf::BigInt d = det(principal(m, idx));
    if ((k % 2 == 1 ? -d : d) <= 0) return false;
  }
  return true;
}

// Negative semi-definite iff (-1)^k times every principal minor (all subsets) is >= 0.
inline bool negative_semidefinite(const IntMatrix& m) {
  std::size_t n = m.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    plumbhf::BigInt d = det(principal(m, idx));
    if ((idx.size() % 2 == 1 ? -d : d) < 0) return false;
  }
  return true;
}

// Cramer's rule; requires det(m) != 0.
inline std::vector<Rational> solve(const IntMatrix& m, const IntVector& y) {
  plumbhf::BigInt d = det(m);
  std::vector<Rational> x;
  for (std::size_t c = 0; c < m.size(); ++c) {
    IntMatrix mc = m;
    for (std::size_t r = 0; r < m.size(); ++r) mc[r][c] = y[r];
    x.push_back(Rational(det(mc), d));
  }
  for (auto& v : x) v.canonicalize();
  return x;
}

inline bool in_image(const IntMatrix& m, const IntVector& y) {
  for (const auto& v : solve(m, y))
    if (v.get_den() != 1) return false;
  return true;
}

// K^2 = K^T B^{-1} K for nondegenerate B.
inline Rational square(const IntMatrix& m, const IntVector& k) {
  auto x = solve(m, k);
  Rational out = 0;
  for (std::size_t i = 0; i < k.size(); ++i) out += plumbhf::rat_of(k[i]) * x[i];
  return out;
}

inline long long chi(const IntMatrix& m, const IntVector& k, const IntVector& x) {
  long long kx = 0, xbx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    kx += k[i] * x[i];
    for (std::size_t j = 0; j < x.size(); ++j) xbx += x[i] * m[i][j] * x[j];
  }
  return -(kx + xbx) / 2;
}

inline void for_box(std::size_t s, long long radius, const std::function<void(const IntVector&)>& f) {
  IntVector x(s, -radius);
  while (true) {
    f(x);
    std::size_t i = 0;
    while (i < s && x[i] == radius) x[i++] = -radius;
    if (i == s) return;
    ++x[i];
  }
}

inline void for_ranges(const IntVector& lo, const IntVector& hi, const std::function<void(const IntVector&)>& f) {
  std::size_t s = lo.size();
  IntVector x = lo;
  while (true) {
    f(x);
    std::size_t i = 0;
    while (i < s && x[i] == hi[i]) x[i] = lo[i], ++i;
    if (i == s) return;
    ++x[i];
  }
}

// Points of Z^s with chi <= n for a negative definite form. chi is the quadratic
// k^2/8 + (x - c)^T (-B/2) (x - c) centred at c = -B^{-1} k / 2, so each coordinate
// satisfies |x_i - c_i| <= sqrt(2 (n - k^2/8) (-B^{-1})_ii).
inline std::vector<IntVector> sublevel(const IntMatrix& m, const IntVector& k, long long n) {
  std::size_t s = m.size();
  auto c = solve(m, k);
  Rational chi_star = square(m, k) / 8;
  IntVector lo(s), hi(s);
  for (std::size_t i = 0; i < s; ++i) {
    IntVector e(s, 0);
    e[i] = 1;
    Rational inv_ii = -solve(m, e)[i];
    double r2 = Rational(2 * (plumbhf::rat_of(n) - chi_star) * inv_ii).get_d();
    double centre = -Rational(c[i] / 2).get_d();
    double r = r2 > 0 ? std::sqrt(r2) : 0.0;
    lo[i] = static_cast<long long>(std::floor(centre - r)) - 1;
    hi[i] = static_cast<long long>(std::ceil(centre + r)) + 1;
  }
  std::vector<IntVector> pts;
  for_ranges(lo, hi, [&](const IntVector& x) {
    if (chi(m, k, x) <= n) pts.push_back(x);
  });
  std::sort(pts.begin(), pts.end());
  return pts;
}

// Connected components under +-e_i moves, by breadth-first flood fill.
inline std::size_t flood_components(const std::vector<IntVector>& pts) {
  std::set<IntVector> todo(pts.begin(), pts.end());
  std::size_t count = 0;
  while (!todo.empty()) {
    ++count;
    std::queue<IntVector> q;
    q.push(*todo.begin());
    todo.erase(todo.begin());
    while (!q.empty()) {
      IntVector x = q.front();
      q.pop();
      for (std::size_t i = 0; i < x.size(); ++i)
        for (long long d : {-1LL, 1LL}) {
          IntVector y = x;
          y[i] += d;
          auto it = todo.find(y);
          if (it == todo.end()) continue;
          todo.erase(it);
          q.push(y);
        }
    }
  }
  return count;
}

// Leaf levels of the sublevel-set merge tree, read off by flood fill at every level.
// A leaf is a component of S_n that contains no point of S_{n-1}.
inline std::multiset<long long> leaf_levels(const IntMatrix& m, const IntVector& k, long long top) {
  std::multiset<long long> out;
  auto all = sublevel(m, k, top);
  long long lo = chi(m, k, all.front());
  for (const auto& x : all) lo = std::min(lo, chi(m, k, x));
  for (long long n = lo; n <= top; ++n) {
    std::set<IntVector> pts;
    for (const auto& x : all)
      if (chi(m, k, x) <= n) pts.insert(x);
    std::set<IntVector> seen;
    for (const auto& start : pts) {
      if (seen.count(start)) continue;
      bool old = false;
      std::queue<IntVector> q;
      q.push(start);
      seen.insert(start);
      while (!q.empty()) {
        IntVector x = q.front();
        q.pop();
        if (chi(m, k, x) < n) old = true;
        for (std::size_t i = 0; i < x.size(); ++i)
          for (long long d : {-1LL, 1LL}) {
            IntVector y = x;
            y[i] += d;
            if (pts.count(y) && !seen.count(y)) {
              seen.insert(y);
              q.push(y);
            }
          }
      }
      if (!old) out.insert(n);
    }
  }
  return out;
}

// d(Y, [k]) = max over characteristic K = k + 2 B x in the class of (K^2 + s)/4,
// negative definite case; x ranges over a box around the real maximiser -B^{-1} k / 2.
inline Rational d_by_max(const IntMatrix& m, const IntVector& k, long long radius) {
  std::size_t s = m.size();
  auto c = solve(m, k);
  IntVector lo(s), hi(s);
  for (std::size_t i = 0; i < s; ++i) {
    long long centre = static_cast<long long>(std::lround(-Rational(c[i] / 2).get_d()));
    lo[i] = centre - radius;
    hi[i] = centre + radius;
  }
  std::optional<Rational> best;
  for_ranges(lo, hi, [&](const IntVector& x) {
    IntVector K = k;
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) K[i] += 2 * m[i][j] * x[j];
    Rational v = (square(m, K) + plumbhf::rat_of(static_cast<long long>(s))) / 4;
    if (!best || v > *best) best = v;
  });
  return *best;
}

inline plumbhf::PlumbingGraph random_tree(std::mt19937& rng, std::size_t max_vertices, long long min_weight,
                                          long long max_weight, bool forest = false) {
  std::uniform_int_distribution<std::size_t> nv(1, max_vertices);
  std::uniform_int_distribution<long long> wd(min_weight, max_weight);
  std::size_t n = nv(rng);
  std::vector<plumbhf::PlumbingVertex> vs;
  for (std::size_t i = 0; i < n; ++i) vs.push_back({"v" + std::to_string(i), wd(rng)});
  std::vector<std::pair<std::string, std::string>> es;
  for (std::size_t i = 1; i < n; ++i) {
    if (forest && std::uniform_int_distribution<int>(0, 4)(rng) == 0) continue;
    std::size_t p = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
    es.emplace_back(vs[p].id, vs[i].id);
  }
  return plumbhf::PlumbingGraph(vs, es);
}

// Characteristic vectors with entries in (-|w_i|, |w_i|] cover every class; for the
// self-conjugate class of a nondegenerate form pick one with B^{-1} k integral.
inline std::optional<IntVector> self_conjugate_char(const IntMatrix& m) {
  std::size_t s = m.size();
  std::optional<IntVector> found;
  for_box(s, 3, [&](const IntVector& x) {
    if (found) return;
    IntVector k(s);
    for (std::size_t i = 0; i < s; ++i) {
      k[i] = 2 * x[i] + (m[i][i] % 2 != 0 ? 1 : 0);
    }
    if (in_image(m, k)) found = k;
  });
  return found;
}

}  // namespace oracle
