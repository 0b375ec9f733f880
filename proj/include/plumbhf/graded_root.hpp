#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "plumbhf/lattice.hpp"

namespace plumbhf {

struct RootVertex {
  long long level = 0;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  // index into GradedRoot::points of a member point, absent on the extrapolated stem
  std::optional<std::size_t> member;
};

// Components of the sublevel sets of chi, from the minimum up to n_stop,
// followed by an explicit stem that can be extended on demand.
class GradedRoot {
 public:
  std::shared_ptr<const WeightFunction> weight;
  long long n_min = 0;
  long long n_stop = 0;
  long long max_leaf_level = 0;
  std::vector<RootVertex> vertices;
  // grading(v) = 2 * level(v) + grading_shift once gradings are assigned
  std::optional<Rational> grading_shift;

  // Enumerated points (every point with chi <= enumerated_level) and their birth vertices.
  long long enumerated_level = 0;
  PointSet points;
  std::vector<long long> values;
  std::vector<std::size_t> birth;

  std::size_t size() const { return vertices.size(); }
  long long top_level() const;
  std::vector<std::size_t> leaves() const;
  std::vector<std::size_t> at_level(long long level) const;
  std::size_t stem_top() const;
  // Adds stem vertices until the stem reaches `level`.
  void extend_stem(long long level);
  // Vertex at `level` whose component contains the point; level >= chi(point).
  std::size_t component_of(std::size_t point_index, long long level) const;
  std::optional<std::size_t> find_point(const IntVector& c) const;
  Rational grading(std::size_t v) const;
};

struct GradedRootOptions {
  std::optional<long long> max_level;  // safety cap on the enumerated level (relative to the representative)
  EnumerationLimits limits;
  StarSearchOptions star;
};

// Builds the root for the class of w.k; the graph supplies the star-search leaf levels
// that fix the stopping level.
GradedRoot graded_root(std::shared_ptr<const WeightFunction> w, const PlumbingGraph& g,
                       const GradedRootOptions& opts = {});

// Variant with a caller-supplied lower bound for the stopping level (used by tests
// and when the leaf levels are already known).
GradedRoot graded_root_from_level(std::shared_ptr<const WeightFunction> w, long long leaf_level_bound,
                                  const GradedRootOptions& opts = {});

}  // namespace plumbhf
