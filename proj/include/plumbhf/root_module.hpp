#pragma once

#include <optional>
#include <vector>

#include "plumbhf/graded_module.hpp"
#include "plumbhf/graded_root.hpp"

namespace plumbhf {

// Sets grading(v) = 2 * level(v) - (k^2 + s - 3 b1) / 4 where k is the root's class representative.
void assign_gradings(GradedRoot& root, const IntersectionForm& form, std::size_t b1);

struct RootInvolution {
  std::vector<std::size_t> perm;
  bool is_identity() const;
};

// J0(x) = -x - l0 on lattice points, transported to root vertices.
RootInvolution involution_on_root(const GradedRoot& root, const IntVector& l0);

// Returns an empty string when perm is a level-preserving tree involution.
std::string check_involution(const GradedRoot& root, const RootInvolution& j);

struct HFModule {
  GradedModule module;
  // root vertex per basis element, absent for the even tower
  std::vector<std::optional<std::size_t>> vertex;
  std::size_t b1 = 0;
  std::optional<Rational> even_bottom;
};

// Root vertices become generators and U sends a vertex to the sum of its children.
// The stem is extended until it reaches grading `ceiling`.
HFModule u_module_from_root(const GradedRoot& root, const Rational& ceiling, std::size_t b1);
// Same, with the ceiling chosen large enough for stabilized linear algebra.
HFModule u_module_from_root(const GradedRoot& root, std::size_t b1);

// Tower bottom in the given residue class mod 2 (1/2 or -1/2 for b1 = 1; the residue
// of d for b1 = 0). Throws when the class does not carry exactly one tower.
Rational d_from_module(const HFModule& m, const Rational& residue);

// Odd part from the root plus the even tower at -d_half_reversed.
HFModule hf_assemble(const GradedRoot& odd_root, const Rational& d_half_reversed);

// Graded dimensions of the reduced part: dim M_r minus the rank of the towers at r,
// listed once per dimension, read below the reliable ceiling.
std::vector<Rational> reduced_gradings(const HFModule& m);

// Residue of a rational mod 2 in [0, 2).
Rational mod2(const Rational& r);

}  // namespace plumbhf
