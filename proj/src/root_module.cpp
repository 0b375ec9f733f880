#include "plumbhf/root_module.hpp"

#include <algorithm>
#include <stdexcept>

namespace plumbhf {

Rational mod2(const Rational& r) { return floor_mod(r, Rational(2)); }

void assign_gradings(GradedRoot& root, const IntersectionForm& form, std::size_t b1) {
  const CharVector& k = root.weight->k;
  Rational k2 = square(k, form);
  root.grading_shift = -(k2 + Rational(static_cast<long>(form.s)) - Rational(3 * static_cast<long>(b1))) / 4;
}

bool RootInvolution::is_identity() const {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != i) return false;
  return true;
}

RootInvolution involution_on_root(const GradedRoot& root, const IntVector& l0) {
  const auto& w = *root.weight;
  const auto& L = *w.lattice;
  IntVector bl = mat_vec(L.B, l0);
  if (bl != w.k) throw std::invalid_argument("involution_on_root: l0 does not satisfy B l0 = k");
  IntVector lbar = L.project(l0);
  RootInvolution j;
  j.perm.resize(root.size());
  for (std::size_t v = 0; v < root.size(); ++v) {
    const auto& rv = root.vertices[v];
    if (!rv.member) {
      j.perm[v] = v;  // extrapolated stem: one vertex per level
      continue;
    }
    IntVector x = root.points.point(*rv.member);
    IntVector y(x.size());
    for (std::size_t a = 0; a < x.size(); ++a) y[a] = -x[a] - lbar[a];
    auto q = root.find_point(y);
    if (!q) throw std::logic_error("involution_on_root: image point missing from the sublevel set");
    j.perm[v] = root.component_of(*q, rv.level);
  }
  return j;
}

std::string check_involution(const GradedRoot& root, const RootInvolution& j) {
  if (j.perm.size() != root.size()) return "size mismatch";
  for (std::size_t v = 0; v < root.size(); ++v) {
    std::size_t u = j.perm[v];
    if (j.perm[u] != v) return "not an involution";
    if (root.vertices[u].level != root.vertices[v].level) return "level not preserved";
    const auto& pv = root.vertices[v].parent;
    const auto& pu = root.vertices[u].parent;
    if (pv.has_value() != pu.has_value()) return "edge not preserved";
    if (pv && j.perm[*pv] != *pu) return "edge not preserved";
  }
  if (j.perm[root.stem_top()] != root.stem_top()) return "stem not preserved";
  return {};
}

namespace {

Rational auto_ceiling(const GradedRoot& root, const std::optional<Rational>& even_bottom) {
  Rational sf = root.grading(root.at_level(root.n_stop).front());
  Rational lo = 2 * rat_of(root.n_min) + *root.grading_shift;
  if (even_bottom) {
    sf = std::max(sf, *even_bottom);
    lo = std::min(lo, *even_bottom);
  }
  return sf + (sf - lo) + 8;
}

}  // namespace

HFModule u_module_from_root(const GradedRoot& root_in, const Rational& ceiling, std::size_t b1) {
  if (!root_in.grading_shift) throw std::invalid_argument("u_module_from_root: gradings missing");
  GradedRoot root = root_in;
  long long top = checked_ll(floor_of((ceiling - *root.grading_shift) / 2));
  root.extend_stem(top);
  HFModule m;
  m.b1 = b1;
  std::vector<std::size_t> index(root.size(), SIZE_MAX);
  for (std::size_t v = 0; v < root.size(); ++v) {
    if (root.vertices[v].level > top) continue;
    index[v] = m.module.add(root.grading(v), "v" + std::to_string(v));
    m.vertex.push_back(v);
  }
  for (std::size_t v = 0; v < root.size(); ++v) {
    if (index[v] == SIZE_MAX) continue;
    for (auto c : root.vertices[v].children) m.module.U[index[v]].push_back(index[c]);
  }
  m.module.ceiling = ceiling;
  m.module.stable_from = root.grading(root.at_level(root.n_stop).front());
  return m;
}

HFModule u_module_from_root(const GradedRoot& root, std::size_t b1) {
  return u_module_from_root(root, auto_ceiling(root, std::nullopt), b1);
}

Rational d_from_module(const HFModule& m, const Rational& residue) {
  auto bottoms = tower_bottoms(m.module, mod2(residue));
  if (bottoms.size() != 1)
    throw std::domain_error("expected exactly one tower in residue class " + rational_to_string(mod2(residue)) +
                            ", found " + std::to_string(bottoms.size()));
  return bottoms.front();
}

HFModule hf_assemble(const GradedRoot& odd_root, const Rational& d_half_reversed) {
  Rational even = -d_half_reversed;
  if (mod2(even) != Rational(3, 2))
    throw std::domain_error("hf_assemble: even tower bottom " + rational_to_string(even) + " is not -1/2 mod 2");
  for (std::size_t v = 0; v < odd_root.size(); ++v)
    if (mod2(odd_root.grading(v)) != Rational(1, 2))
      throw std::domain_error("hf_assemble: odd part grading " + rational_to_string(odd_root.grading(v)) +
                              " is not 1/2 mod 2");
  Rational ceiling = auto_ceiling(odd_root, even);
  HFModule m = u_module_from_root(odd_root, ceiling, 1);
  std::optional<std::size_t> below;
  for (Rational g = even; g <= ceiling; g += 2) {
    std::size_t i = m.module.add(g, "t" + rational_to_string(g));
    m.vertex.push_back(std::nullopt);
    if (below) m.module.U[i].push_back(*below);
    below = i;
  }
  m.even_bottom = even;
  m.module.stable_from = std::max(m.module.stable_from, even);
  return m;
}

std::vector<Rational> reduced_gradings(const HFModule& m) {
  std::vector<Rational> out;
  Rational top = m.module.reliable_ceiling();
  for (const auto& [r, dim] : m.module.graded_dims()) {
    if (r > top) continue;
    std::size_t tower = stable_image_dim(m.module, r);
    for (std::size_t t = tower; t < dim; ++t) out.push_back(r);
  }
  return out;
}

}  // namespace plumbhf
