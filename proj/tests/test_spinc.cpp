#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "plumbhf/spinc.hpp"

using namespace plumbhf;

namespace {

IntVector half_diff(const IntVector& a, const IntVector& b) {
  IntVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = (b[i] - a[i]) / 2;
  return d;
}

std::vector<std::pair<long long, std::size_t>> leaf_profile(const std::vector<StarLeaf>& leaves) {
  std::vector<std::pair<long long, std::size_t>> out;
  for (const auto& l : leaves) out.emplace_back(l.level, l.component_size);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("orbit test agrees with Cramer's rule on nondegenerate forms") {
  std::mt19937 rng(17);
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    auto g = oracle::random_tree(rng, 5, -5, -1);
    auto form = intersection_form(g);
    if (oracle::det(form.B) == 0) continue;
    OrbitTester tester(form);
    std::uniform_int_distribution<long long> small(-3, 3);
    for (int rep = 0; rep < 10; ++rep) {
      IntVector k(form.s), k2(form.s);
      for (std::size_t i = 0; i < form.s; ++i) {
        long long par = g.weight(i) % 2 != 0 ? 1 : 0;
        k[i] = 2 * small(rng) + par;
        k2[i] = 2 * small(rng) + par;
      }
      CHECK(is_characteristic(k, form));
      bool expected = oracle::in_image(form.B, half_diff(k, k2));
      CHECK(tester.same_orbit(k, k2) == expected);
      CHECK(same_orbit(k, k2, form) == expected);
      IntVector moved = k;
      auto shift = mat_vec(form.B, IntVector(form.s, 1));
      for (std::size_t i = 0; i < form.s; ++i) moved[i] += 2 * shift[i];
      CHECK(tester.same_orbit(k, moved));
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("self-conjugate classes match a brute-force orbit count") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = oracle::random_tree(rng, 5, -5, -1);
    auto form = intersection_form(g);
    if (!classify(g).supported || oracle::det(form.B) == 0) continue;
    std::vector<IntVector> reps;
    for (std::size_t mask = 0; mask < (std::size_t{1} << form.s); ++mask) {
      IntVector l(form.s);
      for (std::size_t i = 0; i < form.s; ++i) l[i] = (mask >> i) & 1;
      IntVector k = mat_vec(form.B, l);
      bool characteristic = true;
      for (std::size_t i = 0; i < form.s; ++i)
        if ((k[i] - g.weight(i)) % 2 != 0) characteristic = false;
      if (!characteristic) continue;
      bool seen = false;
      for (const auto& r : reps)
        if (oracle::in_image(form.B, half_diff(r, k))) seen = true;
      if (!seen) reps.push_back(k);
    }
    auto classes = torsion_selfconjugate_reps(form);
    CHECK(classes.size() == reps.size());
    for (const auto& c : classes) {
      CHECK(c.self_conjugate);
      REQUIRE(c.l0);
      CHECK(mat_vec(form.B, *c.l0) == c.representative);
      CHECK(square(c.representative, form) == oracle::square(form.B, c.representative));
    }
  }
}

TEST_CASE("square of the K1 class uses a rational preimage") {
  auto g = builtin_family("k1_surgery", 0);
  auto form = intersection_form(g);
  auto cls = torsion_selfconjugate_reps(form);
  REQUIRE(cls.size() == 1);
  CHECK(is_torsion(cls[0].representative, form));
  CHECK(square(cls[0].representative, form) == Rational(-5));
  IntVector not_torsion = cls[0].representative;
  not_torsion[0] += 2;
  CHECK_FALSE(is_torsion(not_torsion, form));
  CHECK_THROWS_AS(torsion_selfconjugate_reps(intersection_form(builtin_family("single_vertex", 2))),
                  UnsupportedInput);
}

TEST_CASE("single-move discard leaves the star-search result unchanged") {
  std::mt19937 rng(23);
  int compared = 0;
  for (int trial = 0; trial < 120; ++trial) {
    auto g = oracle::random_tree(rng, 6, -5, 0);
    auto form = intersection_form(g);
    if (!classify(g).supported) continue;
    for (const auto& cls : torsion_selfconjugate_reps(form)) {
      StarSearchOptions full;
      full.single_move_discard = false;
      StarSearchStats a, b;
      auto pruned = leaf_reps_star_search(g, cls, {}, &a);
      auto all = leaf_reps_star_search(g, cls, full, &b);
      CHECK(leaf_profile(pruned) == leaf_profile(all));
      CHECK(a.explored <= b.explored);
      for (const auto& l : pruned) CHECK(satisfies_star(l.representative, g));
      ++compared;
    }
  }
  CHECK(compared > 20);
}

TEST_CASE("star vectors are exactly the class members inside the star box") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = oracle::random_tree(rng, 4, -4, -1);
    auto form = intersection_form(g);
    if (!classify(g).supported || oracle::det(form.B) == 0) continue;
    for (const auto& cls : torsion_selfconjugate_reps(form)) {
      auto got = star_vectors(g, cls, 1000000);
      std::sort(got.begin(), got.end());
      std::vector<IntVector> expected;
      IntVector lo(form.s), x(form.s);
      for (std::size_t i = 0; i < form.s; ++i) lo[i] = x[i] = g.weight(i);
      while (true) {
        if (oracle::in_image(form.B, half_diff(cls.representative, x))) expected.push_back(x);
        std::size_t i = 0;
        while (i < form.s && x[i] + 2 > -g.weight(i)) x[i] = lo[i], ++i;
        if (i == form.s) break;
        x[i] += 2;
      }
      std::sort(expected.begin(), expected.end());
      CHECK(got == expected);
    }
  }
}
