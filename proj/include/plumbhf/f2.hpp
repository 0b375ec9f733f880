#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace plumbhf {

using F2Vec = boost::dynamic_bitset<std::uint64_t>;

// Incrementally built subspace of F_2^n kept in reduced echelon form.
// Each stored row remembers which inserted vectors it combines, so
// coordinates with respect to the inserted independent vectors are available.
class F2Span {
 public:
  explicit F2Span(std::size_t ambient_dim = 0) : dim_(ambient_dim) {}

  std::size_t ambient_dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  // Returns true when v was independent of the current span (and adds it).
  bool insert(const F2Vec& v);
  bool contains(const F2Vec& v) const;
  F2Vec reduce(const F2Vec& v) const;
  // Coordinates of v in terms of the accepted (independent) inserted vectors.
  std::optional<F2Vec> coordinates(const F2Vec& v) const;

 private:
  std::size_t dim_;
  std::vector<F2Vec> rows_;
  std::vector<F2Vec> combo_;
  std::vector<std::size_t> pivot_;
};

std::size_t f2_rank(std::vector<F2Vec> rows);

// Null space of the linear map sending basis vector i to images[i].
std::vector<F2Vec> f2_kernel(const std::vector<F2Vec>& images, std::size_t codomain_dim);

}  // namespace plumbhf
