#include "plumbhf/graded_root.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace plumbhf {

long long GradedRoot::top_level() const {
  long long top = n_min;
  for (const auto& v : vertices) top = std::max(top, v.level);
  return top;
}

std::vector<std::size_t> GradedRoot::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].children.empty()) out.push_back(i);
  return out;
}

std::vector<std::size_t> GradedRoot::at_level(long long level) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].level == level) out.push_back(i);
  return out;
}

std::size_t GradedRoot::stem_top() const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (!vertices[i].parent) return i;
  throw std::logic_error("graded root has no top vertex");
}

void GradedRoot::extend_stem(long long level) {
  std::size_t top = stem_top();
  while (vertices[top].level < level) {
    RootVertex v;
    v.level = vertices[top].level + 1;
    v.children.push_back(top);
    vertices.push_back(v);
    vertices[top].parent = vertices.size() - 1;
    top = vertices.size() - 1;
  }
}

std::size_t GradedRoot::component_of(std::size_t point_index, long long level) const {
  std::size_t v = birth.at(point_index);
  if (level < vertices[v].level) throw std::invalid_argument("component_of: level below the point's value");
  while (vertices[v].level < level) {
    if (!vertices[v].parent) throw std::out_of_range("component_of: level above the stored stem");
    v = *vertices[v].parent;
  }
  return v;
}

std::optional<std::size_t> GradedRoot::find_point(const IntVector& c) const {
  for (auto x : c)
    if (x < INT16_MIN || x > INT16_MAX) return std::nullopt;
  return points.find(c);
}

Rational GradedRoot::grading(std::size_t v) const {
  if (!grading_shift) throw std::logic_error("graded root: gradings not assigned");
  return 2 * rat_of(vertices.at(v).level) + *grading_shift;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

// Attempts to build the root using the points up to `target`. Returns false when
// no level in [lower, target] has a connected sublevel set.
bool build_up_to(GradedRoot& root, const WeightFunction& w, long long lower, long long target,
                 const EnumerationLimits& limits) {
  root.vertices.clear();
  root.enumerated_level = target;
  enumerate_points(w, target, root.points, root.values, limits);
  std::size_t N = root.points.size();
  if (N == 0) return false;
  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return root.values[a] < root.values[b]; });
  const auto& L = *w.lattice;
  std::vector<IntVector> moves;
  for (const auto& e : L.edge_vectors) {
    if (std::all_of(e.begin(), e.end(), [](long long x) { return x == 0; })) continue;
    moves.push_back(e);
    IntVector neg(e.size());
    for (std::size_t a = 0; a < e.size(); ++a) neg[a] = -e[a];
    moves.push_back(neg);
  }
  UnionFind uf(N);
  std::vector<char> active(N, 0);
  root.birth.assign(N, SIZE_MAX);
  std::vector<std::int16_t> buf(L.sigma);
  // vertex of each active component root at the previous level
  std::vector<std::size_t> prev_vertex_of(N, SIZE_MAX);
  std::vector<std::size_t> prev_roots;
  std::size_t pos = 0;
  long long nmin = root.values[order[0]];
  root.n_min = nmin;
  for (long long n = nmin; n <= target; ++n) {
    std::size_t start = pos;
    while (pos < N && root.values[order[pos]] == n) {
      std::size_t p = order[pos++];
      active[p] = 1;
      const std::int16_t* c = root.points.raw(p);
      for (const auto& e : moves) {
        bool ok = true;
        for (std::size_t a = 0; a < L.sigma; ++a) {
          long long v = c[a] + e[a];
          if (v < INT16_MIN || v > INT16_MAX) ok = false;
          buf[a] = static_cast<std::int16_t>(v);
        }
        if (!ok) continue;
        auto q = root.points.find(buf.data());
        if (q && active[*q]) uf.unite(p, *q);
      }
    }
    // components at level n: previous roots (possibly merged) plus roots of new points
    std::vector<std::size_t> roots;
    for (auto r : prev_roots) roots.push_back(uf.find(r));
    for (std::size_t i = start; i < pos; ++i) roots.push_back(uf.find(order[i]));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    std::vector<std::size_t> vertex_of_root(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
      RootVertex v;
      v.level = n;
      v.member = roots[i];
      root.vertices.push_back(v);
      vertex_of_root[i] = root.vertices.size() - 1;
    }
    auto vertex_for = [&](std::size_t r) {
      auto it = std::lower_bound(roots.begin(), roots.end(), r);
      return vertex_of_root[it - roots.begin()];
    };
    for (auto r : prev_roots) {
      std::size_t child = prev_vertex_of[r];
      std::size_t parent = vertex_for(uf.find(r));
      root.vertices[child].parent = parent;
      root.vertices[parent].children.push_back(child);
    }
    for (std::size_t i = start; i < pos; ++i) root.birth[order[i]] = vertex_for(uf.find(order[i]));
    for (auto r : prev_roots) prev_vertex_of[r] = SIZE_MAX;
    for (std::size_t i = 0; i < roots.size(); ++i) prev_vertex_of[roots[i]] = vertex_of_root[i];
    prev_roots = roots;
    if (n >= lower && roots.size() == 1) {
      root.n_stop = n;
      // drop everything above n_stop: the stem is extrapolated from here
      return true;
    }
  }
  return false;
}

}  // namespace

GradedRoot graded_root_from_level(std::shared_ptr<const WeightFunction> w, long long leaf_level_bound,
                                  const GradedRootOptions& opts) {
  GradedRoot root;
  root.weight = w;
  root.max_leaf_level = leaf_level_bound;
  long long nmin = chi_minimum(*w);
  long long lower = std::max(nmin, leaf_level_bound);
  long long target = lower + 1;
  while (true) {
    if (opts.max_level && target > *opts.max_level) {
      target = *opts.max_level;
      if (!build_up_to(root, *w, lower, target, opts.limits))
        throw std::runtime_error("graded root: sublevel set not connected below the requested maximum level");
      break;
    }
    if (build_up_to(root, *w, lower, target, opts.limits)) break;
    target += 1;  // point counts grow fast with the level, so re-enumerating one level higher is cheap by comparison
  }
  // points above n_stop stay enumerated; their birth vertices are absent, so drop them
  if (root.enumerated_level > root.n_stop) {
    PointSet kept(root.points.dim());
    std::vector<long long> vals;
    std::vector<std::size_t> births;
    for (std::size_t p = 0; p < root.points.size(); ++p) {
      if (root.values[p] > root.n_stop) continue;
      kept.insert(root.points.point(p));
      vals.push_back(root.values[p]);
      births.push_back(root.birth[p]);
    }
    // member indices must follow the renumbering
    std::vector<std::size_t> remap(root.points.size(), SIZE_MAX);
    for (std::size_t p = 0, q = 0; p < root.points.size(); ++p)
      if (root.values[p] <= root.n_stop) remap[p] = q++;
    for (auto& v : root.vertices)
      if (v.member) v.member = remap[*v.member];
    root.points = std::move(kept);
    root.values = std::move(vals);
    root.birth = std::move(births);
    root.enumerated_level = root.n_stop;
  }
  return root;
}

GradedRoot graded_root(std::shared_ptr<const WeightFunction> w, const PlumbingGraph& g, const GradedRootOptions& opts) {
  SpincClass cls;
  cls.representative = w->k;
  cls.torsion = true;
  auto leaves = leaf_reps_star_search(g, cls, opts.star);
  if (leaves.empty()) throw std::logic_error("graded root: star search found no leaves");
  long long top = leaves.front().level;
  for (const auto& l : leaves) top = std::max(top, l.level);
  return graded_root_from_level(std::move(w), top, opts);
}

}  // namespace plumbhf
