#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "plumbhf/involutive.hpp"
#include "plumbhf/obstruct.hpp"

using namespace plumbhf;

namespace {

// A tower from grading 0 plus one extra generator x at grading 2 with U x = bottom.
GradedModule tower_with_extra() {
  GradedModule m;
  std::optional<std::size_t> below;
  for (int g = 0; g <= 12; g += 2) {
    auto i = m.add(rat_of(g), "t" + std::to_string(g));
    if (below) m.U[i].push_back(*below);
    below = i;
  }
  auto x = m.add(rat_of(2), "x");
  m.U[x].push_back(0);
  m.ceiling = 12;
  m.stable_from = 2;
  return m;
}

std::vector<Branch> definite_branches(unsigned seed, int count) {
  std::mt19937 rng(seed);
  std::vector<Branch> out;
  while (static_cast<int>(out.size()) < count) {
    auto g = oracle::random_tree(rng, 4, -5, -1);
    if (!classify(g).supported || classify(g).b1 != 0) continue;
    out.push_back(compute_branch(g, {}, false));
  }
  return out;
}

}  // namespace

TEST_CASE("graded module images and towers") {
  auto m = tower_with_extra();
  CHECK(check_module(m).empty());
  CHECK(image_dim(m, 1, Rational(0)) == 1);
  CHECK(stable_image_dim(m, Rational(2)) == 1);
  CHECK(m.graded_dims()[Rational(2)] == 2);
  auto bottoms = tower_bottoms(m, Rational(0));
  REQUIRE(bottoms.size() == 1);
  CHECK(bottoms[0] == 0);
  CHECK(kernel_power_dim(m, 1, Rational(2)) == 1);
  CHECK_THROWS_AS(image_dim(m, 10, Rational(0)), std::out_of_range);
  auto bad = m;
  bad.U[1].push_back(1);
  CHECK_FALSE(check_module(bad).empty());
}

TEST_CASE("d of -Y from the root is minus the maximum of (K^2 + s)/4 over the class") {
  std::mt19937 rng(61);
  int checked = 0;
  while (checked < 25) {
    auto g = oracle::random_tree(rng, 4, -5, -1);
    auto form = intersection_form(g);
    if (!classify(g).supported || oracle::det(form.B) == 0) continue;
    auto k = oracle::self_conjugate_char(form.B);
    if (!k) continue;
    auto w = std::make_shared<const WeightFunction>(weight_function(form, *k));
    auto root = graded_root(w, g);
    assign_gradings(root, form, 0);
    auto hf = u_module_from_root(root, 0);
    CHECK(check_module(hf.module).empty());
    Rational expected = -oracle::d_by_max(form.B, *k, 2);
    CHECK(d_from_module(hf, expected) == expected);
    ++checked;
  }
}

TEST_CASE("involution on the root is a level-preserving tree involution") {
  for (const auto& b : definite_branches(67, 25)) {
    CHECK(check_involution(*b.root, b.involution).empty());
    auto im = iota_model(b.odd, b.involution);
    for (std::size_t i = 0; i < im.perm.size(); ++i) CHECK(im.perm[im.perm[i]] == i);
    for (const auto& [r, kc] : iota_kernel_cokernel(im)) CHECK(kc.first == kc.second);
  }
}

TEST_CASE("involutive d-invariants are ordered and congruent to d mod 2") {
  for (const auto& b : definite_branches(71, 25)) {
    auto res = involutive_from_branch(b, std::nullopt);
    CHECK(check_module(res.hfi.module).empty());
    REQUIRE(res.inv.d);
    REQUIRE(res.inv.dbar);
    REQUIRE(res.inv.dlow);
    CHECK(*res.inv.dlow <= *res.inv.d);
    CHECK(*res.inv.d <= *res.inv.dbar);
    CHECK(mod2(*res.inv.dlow) == mod2(*res.inv.d));
    CHECK(mod2(*res.inv.dbar) == mod2(*res.inv.d));
    CHECK(res.hat.hfi_hat_dim == res.hat.model_hfi_hat_dim);
    if (b.involution.is_identity()) {
      CHECK(*res.inv.dlow == *res.inv.d);
      CHECK(*res.inv.dbar == *res.inv.d);
    }
  }
}

TEST_CASE("S3 from a single -1 vertex has all three invariants zero") {
  auto b = compute_branch(builtin_family("single_vertex", -1), {}, false);
  auto res = involutive_from_branch(b, std::nullopt);
  CHECK(*res.inv.d == 0);
  CHECK(*res.inv.dbar == 0);
  CHECK(*res.inv.dlow == 0);
  CHECK(res.hat.hf_hat_dim == 1);
  CHECK(res.hat.hfi_hat_dim == 2);
}

TEST_CASE("assembly rejects an even tower with the wrong parity") {
  auto b = compute_branch(builtin_family("gamma_Nj", 1), {}, false);
  CHECK_THROWS_AS(hf_assemble(*b.root, Rational(-1, 2)), std::domain_error);
  CHECK_THROWS_AS(hf_assemble(*b.root, Rational(0)), std::domain_error);
  auto hf = hf_assemble(*b.root, Rational(-3, 2));
  CHECK(*hf.even_bottom == Rational(3, 2));
  CHECK(check_module(hf.module).empty());
}

TEST_CASE("orientation conversion is an involution on the invariants") {
  InvolutiveDInvariants a;
  a.b1 = 1;
  a.d_plus = Rational(1, 2);
  a.d_minus = Rational(3, 2);
  a.dbar_plus = Rational(5, 2);
  a.dbar_minus = Rational(3, 2);
  a.dlow_plus = Rational(1, 2);
  a.dlow_minus = Rational(3, 2);
  auto y = convert_orientation(a);
  CHECK(*y.dlow_minus == Rational(-5, 2));
  CHECK(*y.dlow_plus == Rational(-3, 2));
  CHECK(*y.dbar_plus == Rational(-3, 2));
  CHECK(*y.d_plus == Rational(-3, 2));
  CHECK(*y.d_minus == Rational(-1, 2));
  auto back = convert_orientation(y);
  CHECK(*back.dbar_plus == *a.dbar_plus);
  CHECK(*back.dlow_minus == *a.dlow_minus);
  CHECK(*back.d_plus == *a.d_plus);
}
