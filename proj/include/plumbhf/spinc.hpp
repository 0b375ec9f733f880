#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "plumbhf/plumbing.hpp"
#include "plumbhf/smith.hpp"

namespace plumbhf {

using CharVector = IntVector;

struct SpincClass {
  CharVector representative;
  bool torsion = false;
  bool self_conjugate = false;
  std::optional<IntVector> l0;  // B * l0 == representative, present iff self-conjugate
};

// Precomputed Smith data for repeated orbit tests against one form.
class OrbitTester {
 public:
  explicit OrbitTester(const IntersectionForm& form);
  // y in B * Z^s ?
  bool in_image(const IntVector& y) const;
  // k2 - k in 2 B Z^s ?
  bool same_orbit(const CharVector& k, const CharVector& k2) const;
  // true when coker(B) has no torsion, so image membership reduces to kernel orthogonality
  bool torsion_free() const { return torsion_free_; }

 private:
  std::size_t s_;
  SmithForm sf_;
  bool torsion_free_ = true;
};

bool is_characteristic(const IntVector& k, const IntersectionForm& form);
bool same_orbit(const CharVector& k, const CharVector& k2, const IntersectionForm& form);
bool is_torsion(const CharVector& k, const IntersectionForm& form);
// Integral l with B l = k when it exists.
std::optional<IntVector> self_conjugate_witness(const CharVector& k, const IntersectionForm& form);
SpincClass make_spinc_class(const CharVector& k, const IntersectionForm& form);

std::vector<SpincClass> torsion_selfconjugate_reps(const IntersectionForm& form);

// k . alpha for any rational alpha with B alpha = k.
Rational square(const CharVector& k, const IntersectionForm& form);

bool satisfies_star(const CharVector& k, const PlumbingGraph& g);

struct StarLeaf {
  std::size_t class_id = 0;
  CharVector representative;  // lexicographically least element of its move component
  std::size_t component_size = 0;
  long long level = 0;        // chi level relative to the class representative
};

struct StarSearchOptions {
  // Skip vectors that leave the star region after a single move; such vectors
  // lie in discarded components, so the surviving components are unchanged.
  bool single_move_discard = true;
  std::size_t max_candidates = 200000000;
};

struct StarSearchStats {
  std::size_t candidates = 0;
  std::size_t explored = 0;
};

std::vector<StarLeaf> leaf_reps_star_search(const PlumbingGraph& g, const SpincClass& cls,
                                            const StarSearchOptions& opts = {}, StarSearchStats* stats = nullptr);

// Every characteristic vector of the class satisfying the star condition
// (the weak local minima of the weight function, in characteristic-vector form).
std::vector<CharVector> star_vectors(const PlumbingGraph& g, const SpincClass& cls, std::size_t limit);

}  // namespace plumbhf
