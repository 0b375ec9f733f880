#pragma once

#include <string>
#include <utility>
#include <vector>

#include "plumbhf/types.hpp"

namespace plumbhf {

struct PlumbingVertex {
  std::string id;
  long long weight = 0;
};

// Weighted forest; vertex order fixes the basis order of H_2.
class PlumbingGraph {
 public:
  PlumbingGraph() = default;
  // Validates: unique ids, existing endpoints, no loops, no multi-edges, no cycles.
  PlumbingGraph(std::vector<PlumbingVertex> vertices, std::vector<std::pair<std::string, std::string>> edges);

  std::size_t size() const { return vertices_.size(); }
  const std::vector<PlumbingVertex>& vertices() const { return vertices_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  const std::vector<std::vector<std::size_t>>& adjacency() const { return adj_; }
  std::size_t index_of(const std::string& id) const;
  long long weight(std::size_t i) const { return vertices_[i].weight; }
  std::size_t degree(std::size_t i) const { return adj_[i].size(); }
  IntVector weights() const;

  std::string to_json() const;

 private:
  std::vector<PlumbingVertex> vertices_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> adj_;
};

struct IntersectionForm {
  IntMatrix B;
  std::size_t s = 0;
  std::vector<std::string> basis;
};

enum class Definiteness { negative_definite, negative_semidefinite_degenerate, other };

struct H1Group {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1
  bool is_Z() const { return free_rank == 1 && torsion.empty(); }
  std::string describe() const;
};

struct PlumbingClass {
  Definiteness definiteness = Definiteness::other;
  std::size_t b1 = 0;
  H1Group h1;
  std::vector<std::string> bad_vertices;
  bool supported = false;
  // Human-readable reasons when unsupported.
  std::vector<std::string> failures;
};

std::string definiteness_name(Definiteness d);

PlumbingGraph parse_plumbing(const std::string& text);
PlumbingGraph load_plumbing(const std::string& path);
IntersectionForm intersection_form(const PlumbingGraph& g);
// Uses the form only; bad vertices need the graph, see the overload.
PlumbingClass classify(const IntersectionForm& form);
PlumbingClass classify(const PlumbingGraph& g);
// Saturated basis of ker(B) over Z, in a deterministic reduced form.
std::vector<IntVector> kernel_basis(const IntersectionForm& form);

// Exact test via symmetric rational elimination. Returns the definiteness
// and writes the rational nullity.
Definiteness definiteness_of(const IntMatrix& b, std::size_t& nullity);

// Built-in families. `param` is j for gamma_Nj / gamma_prime_Nj, the weight for
// single_vertex and the vertex count for disjoint_zeros; ignored for the K1 graphs.
PlumbingGraph builtin_family(const std::string& name, long long param);
std::vector<std::string> builtin_family_names();

}  // namespace plumbhf
