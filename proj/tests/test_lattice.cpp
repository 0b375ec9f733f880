#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "plumbhf/graded_root.hpp"
#include "plumbhf/root_module.hpp"
#include "plumbhf/spinc.hpp"

using namespace plumbhf;

namespace {

struct Case {
  PlumbingGraph g;
  IntersectionForm form;
  IntVector k;
};

// Random supported negative definite plumbings with their self-conjugate class.
std::vector<Case> definite_cases(unsigned seed, int count, std::size_t max_vertices) {
  std::mt19937 rng(seed);
  std::vector<Case> out;
  while (static_cast<int>(out.size()) < count) {
    auto g = oracle::random_tree(rng, max_vertices, -5, -1);
    auto form = intersection_form(g);
    if (oracle::det(form.B) == 0 || !classify(g).supported) continue;
    auto k = oracle::self_conjugate_char(form.B);
    if (!k) continue;
    out.push_back({g, form, *k});
  }
  return out;
}

std::multiset<long long> root_leaf_levels(const GradedRoot& root) {
  std::multiset<long long> out;
  for (auto v : root.leaves()) out.insert(root.vertices[v].level);
  return out;
}

}  // namespace

TEST_CASE("chi on the quotient lattice matches the direct formula") {
  for (const auto& c : definite_cases(31, 30, 5)) {
    auto w = weight_function(c.form, c.k);
    std::mt19937 rng(1);
    for (int t = 0; t < 20; ++t) {
      IntVector x(c.form.s);
      for (auto& v : x) v = static_cast<long long>(rng() % 7) - 3;
      long long expected = oracle::chi(c.form.B, c.k, x);
      CHECK(w.chi_lift(x) == expected);
      CHECK(w.chi(w.lattice->project(x)) == expected);
    }
  }
  auto g = builtin_family("k1_surgery", 0);
  auto form = intersection_form(g);
  auto cls = torsion_selfconjugate_reps(form).front();
  auto w = weight_function(form, cls.representative);
  CHECK(w.lattice->sigma == 5);
  IntVector ker{5, 15, 4, 1, 6, 3};
  IntVector x{1, 0, -1, 2, 0, 1};
  IntVector y = x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += ker[i];
  CHECK(w.chi_lift(x) == w.chi_lift(y));
  CHECK(w.lattice->project(x) == w.lattice->project(y));
  CHECK(w.chi(w.lattice->project(x)) == oracle::chi(form.B, cls.representative, x));
}

TEST_CASE("sublevel enumeration and its components match box search and flood fill") {
  for (const auto& c : definite_cases(37, 40, 5)) {
    auto w = weight_function(c.form, c.k);
    long long lo = chi_minimum(w);
    auto pts0 = oracle::sublevel(c.form.B, c.k, lo);
    long long brute_min = oracle::chi(c.form.B, c.k, pts0.front());
    for (const auto& x : pts0) brute_min = std::min(brute_min, oracle::chi(c.form.B, c.k, x));
    CHECK(lo == brute_min);
    for (long long n = lo; n <= lo + 2; ++n) {
      auto brute = oracle::sublevel(c.form.B, c.k, n);
      auto got = enumerate_sublevel(w, n);
      CHECK(got.points.size() == brute.size());
      for (const auto& x : brute) CHECK(got.points.find(w.lattice->project(x)).has_value());
      CHECK(got.component_count == oracle::flood_components(brute));
      CHECK(cube_cohomology(w, n, 0) == got.component_count);
    }
  }
}

TEST_CASE("weak local minima are minima along every edge move") {
  for (const auto& c : definite_cases(41, 20, 5)) {
    auto w = weight_function(c.form, c.k);
    auto mins = weak_local_minima(w, c.g);
    REQUIRE_FALSE(mins.empty());
    long long best = w.chi(mins.front());
    for (const auto& m : mins) {
      best = std::min(best, w.chi(m));
      for (const auto& e : w.lattice->edge_vectors)
        for (long long sgn : {-1LL, 1LL}) {
          IntVector y = m;
          for (std::size_t a = 0; a < y.size(); ++a) y[a] += sgn * e[a];
          CHECK(w.chi(m) <= w.chi(y));
        }
    }
    CHECK(best == chi_minimum(w));
  }
}

TEST_CASE("graded root leaves match the flood-fill merge tree") {
  for (const auto& c : definite_cases(43, 40, 5)) {
    auto w = std::make_shared<const WeightFunction>(weight_function(c.form, c.k));
    auto root = graded_root(w, c.g);
    auto expected = oracle::leaf_levels(c.form.B, c.k, root.n_stop + 2);
    CHECK(root_leaf_levels(root) == expected);
    CHECK(root.at_level(root.n_stop).size() == 1);
    auto cls = make_spinc_class(c.k, c.form);
    auto star = leaf_reps_star_search(c.g, cls);
    std::multiset<long long> star_levels;
    for (const auto& l : star) star_levels.insert(l.level);
    CHECK(star_levels == expected);
  }
}

TEST_CASE("graded root is covariant under k -> k + 2 B alpha") {
  std::mt19937 rng(47);
  for (const auto& c : definite_cases(53, 25, 5)) {
    IntVector alpha(c.form.s);
    for (auto& a : alpha) a = static_cast<long long>(rng() % 5) - 2;
    IntVector k2 = c.k;
    auto ba = mat_vec(c.form.B, alpha);
    for (std::size_t i = 0; i < k2.size(); ++i) k2[i] += 2 * ba[i];
    long long shift = oracle::chi(c.form.B, c.k, alpha);
    auto w1 = std::make_shared<const WeightFunction>(weight_function(c.form, c.k));
    auto w2 = std::make_shared<const WeightFunction>(weight_function(c.form, k2));
    auto r1 = graded_root(w1, c.g);
    auto r2 = graded_root(w2, c.g);
    assign_gradings(r1, c.form, 0);
    assign_gradings(r2, c.form, 0);
    std::multiset<long long> moved;
    for (auto l : root_leaf_levels(r1)) moved.insert(l - shift);
    CHECK(root_leaf_levels(r2) == moved);
    std::multiset<Rational> g1, g2;
    for (auto v : r1.leaves()) g1.insert(r1.grading(v));
    for (auto v : r2.leaves()) g2.insert(r2.grading(v));
    CHECK(g1 == g2);
  }
}

TEST_CASE("cube complex of S1xS2 and of disjoint zero vertices") {
  auto one = intersection_form(builtin_family("single_vertex", 0));
  auto w0 = weight_function(one, IntVector{0});
  for (long long n = 0; n <= 4; ++n) {
    CubeComplexCheck check;
    auto h = cube_cohomology_all(w0, n, &check);
    CHECK(check.boundary_squares_to_zero);
    REQUIRE(h.size() >= 2);
    CHECK(h[0] == 1);
    CHECK(h[1] == 1);
  }
  for (std::size_t s = 1; s <= 4; ++s) {
    auto form = intersection_form(builtin_family("disjoint_zeros", static_cast<long long>(s)));
    auto w = weight_function(form, IntVector(s, 0));
    for (long long n = 0; n <= 2; ++n) {
      CubeComplexCheck check;
      auto h = cube_cohomology_all(w, n, &check);
      CHECK(check.boundary_squares_to_zero);
      for (std::size_t q = 0; q <= s; ++q) {
        std::size_t binom = 1;
        for (std::size_t t = 0; t < q; ++t) binom = binom * (s - t) / (t + 1);
        CHECK(cube_cohomology(w, n, q) == binom);
      }
    }
  }
}

TEST_CASE("boundary squares to zero on random cube complexes") {
  for (const auto& c : definite_cases(59, 30, 5)) {
    auto w = weight_function(c.form, c.k);
    long long lo = chi_minimum(w);
    for (long long n = lo; n <= lo + 2; ++n) {
      CubeComplexCheck check;
      cube_cohomology_all(w, n, &check);
      CHECK(check.boundary_squares_to_zero);
    }
  }
}
