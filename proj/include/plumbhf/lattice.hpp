#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "plumbhf/plumbing.hpp"
#include "plumbhf/spinc.hpp"

namespace plumbhf {

// L-bar = Z^s / ker(B) with an LLL-reduced basis.
struct QuotientLattice {
  std::size_t s = 0;
  std::size_t sigma = 0;
  IntMatrix section;       // s x sigma: column j is an integral lift of basis vector j
  IntMatrix projection;    // sigma x s: integral, projection * section = identity
  IntMatrix gram;          // sigma x sigma, negative definite
  std::vector<IntVector> edge_vectors;  // s vectors of length sigma (images of [v_i])
  IntMatrix B;

  IntVector project(const IntVector& x) const;
  IntVector lift(const IntVector& c) const;
  long long pair(const IntVector& c1, const IntVector& c2) const;
};

QuotientLattice quotient_lattice(const IntersectionForm& form);

// chi_k on L-bar: chi(c) = -(a.c + c^T G c) / 2 with a = section^T k.
struct WeightFunction {
  std::shared_ptr<const QuotientLattice> lattice;
  CharVector k;
  IntVector linear;        // a
  // (K - k)/2 = B x  maps to c = inverse_map * (K - k)/2 / inverse_den
  IntMatrix inverse_map;
  long long inverse_den = 1;

  long long chi(const IntVector& c) const;
  // chi_k(x) computed directly on an integral lift x in Z^s
  long long chi_lift(const IntVector& x) const;
  // Lattice point whose characteristic vector is K = k + 2 B x.
  IntVector point_of_char(const CharVector& K) const;
  CharVector char_of_point(const IntVector& c) const;
};

WeightFunction weight_function(std::shared_ptr<const QuotientLattice> lattice, const CharVector& k);
WeightFunction weight_function(const IntersectionForm& form, const CharVector& k);

long long chi(const WeightFunction& w, const IntVector& c);

// Exact lower bound for chi (continuous minimum rounded up).
long long chi_lower_bound(const WeightFunction& w);

// Flat storage of lattice points with hashing.
class PointSet {
 public:
  explicit PointSet(std::size_t dim = 0) : dim_(dim) {}
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return count_; }
  // returns index; inserts if absent
  std::size_t insert(const IntVector& c);
  std::optional<std::size_t> find(const IntVector& c) const;
  std::optional<std::size_t> find(const std::int16_t* c) const;
  IntVector point(std::size_t i) const;
  const std::int16_t* raw(std::size_t i) const { return coords_.data() + i * dim_; }

 private:
  std::size_t hash_raw(const std::int16_t* c) const;
  void grow();
  std::size_t dim_;
  std::size_t count_ = 0;
  std::vector<std::int16_t> coords_;
  std::vector<std::uint32_t> table_;  // index + 1, 0 = empty
};

struct SublevelComplex {
  long long level = 0;
  PointSet points;
  std::vector<long long> values;     // chi per point
  std::vector<std::size_t> component;  // canonical component id per point (0-based, by first point)
  std::size_t component_count = 0;
};

struct EnumerationLimits {
  std::size_t max_points = 40000000;
};

// Every lattice point with chi <= n (Fincke-Pohst style, exact arithmetic).
SublevelComplex enumerate_sublevel(const WeightFunction& w, long long n, const EnumerationLimits& limits = {});
// Raw point list without the union-find pass.
void enumerate_points(const WeightFunction& w, long long n, PointSet& out, std::vector<long long>& values,
                      const EnumerationLimits& limits = {});

// Global minimum of chi.
long long chi_minimum(const WeightFunction& w);

// All weak local minima (chi <= chi at every neighbour along +-edge vectors).
std::vector<IntVector> weak_local_minima(const WeightFunction& w, const PlumbingGraph& g, std::size_t limit = 5000000);

// Cube complex cohomology dim_F2 H^q(S_n).
struct CubeComplexCheck {
  bool boundary_squares_to_zero = true;
  std::vector<std::size_t> cells_per_dimension;
};
std::size_t cube_cohomology(const WeightFunction& w, long long n, std::size_t q, CubeComplexCheck* check = nullptr);
std::vector<std::size_t> cube_cohomology_all(const WeightFunction& w, long long n, CubeComplexCheck* check = nullptr);

}  // namespace plumbhf
