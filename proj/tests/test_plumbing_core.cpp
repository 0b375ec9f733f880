#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "plumbhf/f2.hpp"
#include "plumbhf/plumbing.hpp"
#include "plumbhf/smith.hpp"

using namespace plumbhf;

namespace {

BigInt product_of(const std::vector<BigInt>& xs) {
  BigInt p = 1;
  for (const auto& x : xs) p *= x;
  return p;
}

}  // namespace

TEST_CASE("rationals print as p/q and parse back") {
  CHECK(rational_to_string(Rational(1, 2)) == "1/2");
  CHECK(rational_to_string(Rational(-3)) == "-3/1");
  CHECK(parse_rational("-5/2") == Rational(-5, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("-1.5") == Rational(-3, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK(floor_mod(Rational(-1, 2), Rational(2)) == Rational(3, 2));
  CHECK(floor_of(Rational(-1, 2)) == -1);
  CHECK(ceil_of(Rational(-1, 2)) == 0);
}

TEST_CASE("F2 rank agrees with counting the span by enumeration") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t rows = rng() % 6 + 1, cols = rng() % 7 + 1;
    std::vector<F2Vec> m(rows, F2Vec(cols));
    for (auto& r : m)
      for (std::size_t c = 0; c < cols; ++c)
        if (rng() % 2) r.set(c);
    std::set<unsigned long> span;
    for (unsigned mask = 0; mask < (1u << rows); ++mask) {
      F2Vec v(cols);
      for (std::size_t i = 0; i < rows; ++i)
        if (mask >> i & 1) v ^= m[i];
      span.insert(v.to_ulong());
    }
    std::size_t rank = f2_rank(m);
    CHECK((std::size_t{1} << rank) == span.size());
    auto ker = f2_kernel(m, cols);
    CHECK(ker.size() == rows - rank);
    for (const auto& k : ker) {
      F2Vec img(cols);
      for (std::size_t i = 0; i < rows; ++i)
        if (k.test(i)) img ^= m[i];
      CHECK(img.none());
    }
  }
}

TEST_CASE("Smith normal form: U A V = D, divisibility chain, determinant") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = oracle::random_tree(rng, 6, -6, 1, true);
    IntMatrix a = oracle::form_matrix(g);
    auto sf = smith_normal_form(a);
    std::size_t n = a.size();
    BigMatrix A = to_big(a);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        BigInt x = 0;
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t q = 0; q < n; ++q) x += sf.U[i][p] * A[p][q] * sf.V[q][j];
        CHECK(x == (i == j ? sf.diag[i] : BigInt(0)));
      }
    for (std::size_t i = 0; i + 1 < sf.diag.size(); ++i)
      if (sf.diag[i] != 0) CHECK(sf.diag[i + 1] % sf.diag[i] == 0);
    BigInt d = oracle::det(a);
    CHECK(abs(d) == product_of(sf.diag));
  }
}

TEST_CASE("plumbing files reject malformed graphs") {
  CHECK_THROWS_AS(parse_plumbing("{"), std::invalid_argument);
  CHECK_THROWS_AS(parse_plumbing(R"({"vertices":[{"id":"a","weight":-2}],"edges":[["a","b"]]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_plumbing(R"({"vertices":[{"id":"a","weight":-2},{"id":"a","weight":-2}]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_plumbing(R"({"vertices":[{"id":"a","weight":-2},{"id":"b","weight":-2}],
                                     "edges":[["a","b"],["b","a"]]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_plumbing(R"({"vertices":[{"id":"a","weight":-2},{"id":"b","weight":-2},
                                     {"id":"c","weight":-2}],"edges":[["a","b"],["b","c"],["c","a"]]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_plumbing(R"({"vertices":[{"id":"a","weight":-2}],"edges":[["a","a"]]})"),
                  std::invalid_argument);
  auto g = parse_plumbing(builtin_family("k1_surgery", 0).to_json());
  CHECK(g.size() == 6);
  CHECK(g.edges().size() == 5);
}

TEST_CASE("definiteness agrees with principal minors on random forests") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    auto g = oracle::random_tree(rng, 6, -5, 0, true);
    IntMatrix b = oracle::form_matrix(g);
    std::size_t nullity = 0;
    Definiteness d = definiteness_of(b, nullity);
    bool nd = oracle::negative_definite(b);
    bool nsd = oracle::negative_semidefinite(b);
    if (nd) {
      CHECK(d == Definiteness::negative_definite);
      CHECK(nullity == 0);
    } else if (nsd) {
      CHECK(d == Definiteness::negative_semidefinite_degenerate);
      CHECK(nullity > 0);
    } else {
      CHECK(d == Definiteness::other);
    }
  }
}

TEST_CASE("H1 order and rank from the determinant") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = oracle::random_tree(rng, 6, -5, 0, true);
    auto form = intersection_form(g);
    auto c = classify(g);
    BigInt d = oracle::det(form.B);
    if (d != 0) {
      CHECK(c.b1 == 0);
      CHECK(product_of(c.h1.torsion) == abs(d));
    } else {
      CHECK(c.b1 >= 1);
      auto ker = kernel_basis(form);
      CHECK(ker.size() == c.b1);
      for (const auto& v : ker) {
        for (auto x : mat_vec(form.B, v)) CHECK(x == 0);
        long long gcd = 0;
        for (auto x : v) gcd = std::gcd(gcd, x);
        CHECK(gcd == 1);
      }
    }
  }
}

TEST_CASE("lens space and S1xS2 classification") {
  auto c = classify(builtin_family("single_vertex", -5));
  CHECK(c.definiteness == Definiteness::negative_definite);
  CHECK(c.h1.describe() == "Z/5");
  CHECK(c.supported);
  auto z = classify(builtin_family("single_vertex", 0));
  CHECK(z.b1 == 1);
  CHECK(z.h1.is_Z());
  CHECK(z.supported);
  auto p = classify(builtin_family("single_vertex", 1));
  CHECK_FALSE(p.supported);
  CHECK(p.definiteness == Definiteness::other);
  auto zz = classify(builtin_family("disjoint_zeros", 2));
  CHECK_FALSE(zz.supported);
  CHECK(zz.b1 == 2);
}

TEST_CASE("the N_j and K1 plumbings have the expected shape") {
  for (long long j = 1; j <= 3; ++j) {
    auto c = classify(builtin_family("gamma_Nj", j));
    CHECK(c.supported);
    CHECK(c.b1 == 1);
    CHECK(c.h1.is_Z());
    CHECK(c.bad_vertices.size() == 1);
  }
  auto k = builtin_family("k1_surgery", 0);
  auto ker = kernel_basis(intersection_form(k));
  REQUIRE(ker.size() == 1);
  IntVector v = ker[0];
  if (v[0] < 0)
    for (auto& x : v) x = -x;
  CHECK(v == IntVector{5, 15, 4, 1, 6, 3});
  auto r = classify(builtin_family("k1_surgery_reversed", 0));
  CHECK(r.supported);
  CHECK(r.h1.is_Z());
  CHECK_THROWS_AS(builtin_family("no_such_family", 1), std::invalid_argument);
  CHECK_THROWS_AS(builtin_family("gamma_Nj", 0), std::out_of_range);
}
