#include "plumbhf/graded_module.hpp"

#include <algorithm>
#include <stdexcept>

namespace plumbhf {

std::size_t GradedModule::add(const Rational& gr, std::string name) {
  grading.push_back(gr);
  U.emplace_back();
  if (has_q()) Q.emplace_back();
  label.push_back(std::move(name));
  return grading.size() - 1;
}

F2Vec GradedModule::unit(std::size_t i) const {
  F2Vec v(size());
  v.set(i);
  return v;
}

F2Vec GradedModule::apply_u(const F2Vec& v) const {
  F2Vec out(size());
  for (auto i = v.find_first(); i != F2Vec::npos; i = v.find_next(i))
    for (auto j : U[i]) out.flip(j);
  return out;
}

F2Vec GradedModule::apply_q(const F2Vec& v) const {
  F2Vec out(size());
  if (!has_q()) return out;
  for (auto i = v.find_first(); i != F2Vec::npos; i = v.find_next(i))
    for (auto j : Q[i]) out.flip(j);
  return out;
}

std::vector<std::size_t> GradedModule::basis_in(const Rational& r) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (grading[i] == r) out.push_back(i);
  return out;
}

Rational GradedModule::min_grading() const {
  if (grading.empty()) throw std::logic_error("empty module");
  return *std::min_element(grading.begin(), grading.end());
}

std::map<Rational, std::size_t> GradedModule::graded_dims() const {
  std::map<Rational, std::size_t> out;
  for (const auto& g : grading) ++out[g];
  return out;
}

long long GradedModule::stabilization_exponent() const {
  Rational span = stable_from - min_grading();
  return checked_ll(floor_of(span / 2)) + 1;
}

Rational GradedModule::reliable_ceiling() const {
  return ceiling - 2 * rat_of(stabilization_exponent() + 1) - (has_q() ? 1 : 0);
}

namespace {

std::size_t rank_in(const GradedModule& m, const std::vector<F2Vec>& vecs, const Rational& r) {
  auto idx = m.basis_in(r);
  std::vector<F2Vec> rows;
  for (const auto& v : vecs) {
    F2Vec local(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      if (v.test(idx[a])) local.set(a);
    rows.push_back(local);
  }
  return f2_rank(std::move(rows));
}

std::size_t image_dim_impl(const GradedModule& m, long long n, const Rational& r, bool with_q) {
  Rational source = r + 2 * rat_of(n) + (with_q ? 1 : 0);
  if (source > m.ceiling) throw std::out_of_range("image_dim: source grading above the truncation");
  std::vector<F2Vec> imgs;
  for (auto i : m.basis_in(source)) {
    F2Vec v = m.unit(i);
    if (with_q) v = m.apply_q(v);
    for (long long t = 0; t < n; ++t) v = m.apply_u(v);
    imgs.push_back(v);
  }
  return rank_in(m, imgs, r);
}

}  // namespace

std::size_t image_dim(const GradedModule& m, long long n, const Rational& r) { return image_dim_impl(m, n, r, false); }

std::size_t image_q_dim(const GradedModule& m, long long n, const Rational& r) { return image_dim_impl(m, n, r, true); }

std::size_t stable_image_dim(const GradedModule& m, const Rational& r) {
  long long n = m.stabilization_exponent();
  std::size_t a = image_dim(m, n, r), b = image_dim(m, n + 1, r);
  if (a != b) throw std::logic_error("image of U^n did not stabilize at grading " + rational_to_string(r));
  return a;
}

std::size_t stable_image_q_dim(const GradedModule& m, const Rational& r) {
  long long n = m.stabilization_exponent();
  std::size_t a = image_q_dim(m, n, r), b = image_q_dim(m, n + 1, r);
  if (a != b) throw std::logic_error("image of U^n Q did not stabilize at grading " + rational_to_string(r));
  return a;
}

std::vector<Rational> tower_bottoms(const GradedModule& m, const Rational& residue) {
  std::vector<Rational> out;
  if (m.size() == 0) return out;
  Rational lo = m.min_grading();
  // first grading >= lo congruent to residue mod 2
  Rational r = residue + 2 * Rational(ceil_of((lo - residue) / 2));
  Rational top = m.reliable_ceiling();
  std::size_t prev = 0;
  for (; r <= top; r += 2) {
    std::size_t d = stable_image_dim(m, r);
    if (d < prev) throw std::logic_error("tower rank decreased; module is not of finite type");
    for (std::size_t t = prev; t < d; ++t) out.push_back(r);
    prev = d;
  }
  return out;
}

std::size_t kernel_power_dim(const GradedModule& m, long long i, const Rational& r) {
  auto idx = m.basis_in(r);
  std::vector<F2Vec> imgs;
  for (auto b : idx) {
    F2Vec v = m.unit(b);
    for (long long t = 0; t < i; ++t) v = m.apply_u(v);
    imgs.push_back(v);
  }
  return idx.size() - f2_rank(std::move(imgs));
}

std::map<std::pair<Rational, long long>, std::size_t> kernel_profile(const GradedModule& m, long long max_power,
                                                                      const Rational& limit) {
  std::map<std::pair<Rational, long long>, std::size_t> out;
  for (const auto& [r, dim] : m.graded_dims()) {
    (void)dim;
    if (r > limit) continue;
    for (long long i = 1; i <= max_power; ++i) out[{r, i}] = kernel_power_dim(m, i, r);
  }
  return out;
}

std::string check_module(const GradedModule& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (auto j : m.U[i])
      if (m.grading[j] != m.grading[i] - 2) return "U does not lower grading by 2 at " + m.label[i];
    if (m.has_q()) {
      for (auto j : m.Q[i])
        if (m.grading[j] != m.grading[i] - 1) return "Q does not lower grading by 1 at " + m.label[i];
      F2Vec e = m.unit(i);
      if (m.apply_q(m.apply_q(e)).any()) return "Q^2 is nonzero at " + m.label[i];
      if (m.apply_u(m.apply_q(e)) != m.apply_q(m.apply_u(e))) return "UQ differs from QU at " + m.label[i];
    }
  }
  return {};
}

}  // namespace plumbhf
