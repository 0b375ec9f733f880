#include "plumbhf/f2.hpp"

#include <stdexcept>

namespace plumbhf {

F2Vec F2Span::reduce(const F2Vec& v) const {
  F2Vec r = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (r.test(pivot_[i])) r ^= rows_[i];
  }
  return r;
}

bool F2Span::contains(const F2Vec& v) const { return reduce(v).none(); }

bool F2Span::insert(const F2Vec& v) {
  if (v.size() != dim_) throw std::invalid_argument("F2Span: dimension mismatch");
  F2Vec r = v;
  std::size_t accepted = rows_.size();
  F2Vec c(accepted + 1);
  for (auto& old : combo_) old.resize(accepted + 1);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (r.test(pivot_[i])) {
      r ^= rows_[i];
      c ^= combo_[i];
    }
  }
  if (r.none()) {
    for (auto& old : combo_) old.resize(accepted);
    return false;
  }
  c.set(accepted);
  std::size_t p = r.find_first();
  // keep the echelon form reduced: clear the new pivot from older rows
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].test(p)) {
      rows_[i] ^= r;
      combo_[i] ^= c;
    }
  }
  rows_.push_back(r);
  combo_.push_back(c);
  pivot_.push_back(p);
  return true;
}

std::optional<F2Vec> F2Span::coordinates(const F2Vec& v) const {
  F2Vec r = v;
  F2Vec c(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (r.test(pivot_[i])) {
      r ^= rows_[i];
      c ^= combo_[i];
    }
  }
  if (r.any()) return std::nullopt;
  return c;
}

std::size_t f2_rank(std::vector<F2Vec> rows) {
  std::size_t rank = 0;
  if (rows.empty()) return 0;
  std::size_t n = rows[0].size();
  for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && !rows[p].test(col)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[rank], rows[p]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i].test(col)) rows[i] ^= rows[rank];
    }
    ++rank;
  }
  return rank;
}

std::vector<F2Vec> f2_kernel(const std::vector<F2Vec>& images, std::size_t codomain_dim) {
  // Column-reduce the images while tracking combinations of domain vectors.
  std::size_t n = images.size();
  std::vector<F2Vec> img = images;
  std::vector<F2Vec> combo(n, F2Vec(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (img[i].size() != codomain_dim) throw std::invalid_argument("f2_kernel: dimension mismatch");
    combo[i].set(i);
  }
  std::vector<F2Vec> kernel;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> owner;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      if (img[i].test(pivots[k])) {
        img[i] ^= img[owner[k]];
        combo[i] ^= combo[owner[k]];
      }
    }
    if (img[i].none()) {
      kernel.push_back(combo[i]);
    } else {
      pivots.push_back(img[i].find_first());
      owner.push_back(i);
    }
  }
  return kernel;
}

}  // namespace plumbhf
