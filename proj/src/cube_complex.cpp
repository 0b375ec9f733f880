#include <stdexcept>
#include <unordered_map>

#include "plumbhf/f2.hpp"
#include "plumbhf/lattice.hpp"

namespace plumbhf {

namespace {

constexpr std::size_t kMaxCells = 400000;

struct CellKey {
  std::size_t point;
  std::uint32_t mask;
  bool operator==(const CellKey& o) const { return point == o.point && mask == o.mask; }
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const { return k.point * 1000003u ^ k.mask; }
};

struct CubeComplex {
  std::size_t s = 0;
  std::vector<std::vector<CellKey>> cells;  // by dimension
  std::vector<std::unordered_map<CellKey, std::size_t, CellKeyHash>> index;
  PointSet points;
};

std::optional<std::size_t> shifted(const PointSet& pts, std::size_t p, const IntVector& e, std::vector<std::int16_t>& buf) {
  const std::int16_t* c = pts.raw(p);
  for (std::size_t a = 0; a < pts.dim(); ++a) {
    long long v = c[a] + e[a];
    if (v < INT16_MIN || v > INT16_MAX) return std::nullopt;
    buf[a] = static_cast<std::int16_t>(v);
  }
  return pts.find(buf.data());
}

CubeComplex build(const WeightFunction& w, long long n) {
  const auto& L = *w.lattice;
  if (L.s > 20) throw UnsupportedInput("cube complex: too many vertices for a full cube enumeration");
  CubeComplex cx;
  cx.s = L.s;
  std::vector<long long> values;
  enumerate_points(w, n, cx.points, values);
  cx.cells.resize(L.s + 1);
  cx.index.resize(L.s + 1);
  std::vector<std::int16_t> buf(L.sigma);
  std::size_t total = 0;
  std::uint32_t full = (1u << L.s);
  for (std::size_t p = 0; p < cx.points.size(); ++p) {
    IntVector base = cx.points.point(p);
    for (std::uint32_t mask = 0; mask < full; ++mask) {
      // every corner base + sum_{j in J} e_j, J a subset of mask, must lie in S_n
      bool ok = true;
      for (std::uint32_t sub = mask;; sub = (sub - 1) & mask) {
        IntVector corner = base;
        for (std::size_t j = 0; j < L.s; ++j)
          if (sub & (1u << j))
            for (std::size_t a = 0; a < L.sigma; ++a) corner[a] += L.edge_vectors[j][a];
        if (w.chi(corner) > n) {
          ok = false;
          break;
        }
        if (sub == 0) break;
      }
      if (!ok) continue;
      std::size_t dim = static_cast<std::size_t>(__builtin_popcount(mask));
      cx.index[dim].emplace(CellKey{p, mask}, cx.cells[dim].size());
      cx.cells[dim].push_back(CellKey{p, mask});
      if (++total > kMaxCells) throw std::runtime_error("cube complex exceeds the cell limit");
    }
  }
  return cx;
}

// Boundary of a cell as a list of face indices in dimension dim-1 (with multiplicity).
std::vector<std::size_t> boundary(const CubeComplex& cx, const WeightFunction& w, std::size_t dim, const CellKey& cell,
                                  std::vector<std::int16_t>& buf) {
  const auto& L = *w.lattice;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < L.s; ++j) {
    if (!(cell.mask & (1u << j))) continue;
    std::uint32_t face = cell.mask & ~(1u << j);
    auto lower = cx.index[dim - 1].find(CellKey{cell.point, face});
    auto q = shifted(cx.points, cell.point, L.edge_vectors[j], buf);
    if (lower == cx.index[dim - 1].end() || !q) throw std::logic_error("cube complex is not closed under faces");
    auto upper = cx.index[dim - 1].find(CellKey{*q, face});
    if (upper == cx.index[dim - 1].end()) throw std::logic_error("cube complex is not closed under faces");
    out.push_back(lower->second);
    out.push_back(upper->second);
  }
  return out;
}

F2Vec as_vector(const std::vector<std::size_t>& idx, std::size_t n) {
  F2Vec v(n);
  for (auto i : idx) v.flip(i);
  return v;
}

std::vector<std::size_t> boundary_ranks(const CubeComplex& cx, const WeightFunction& w, CubeComplexCheck* check) {
  const auto& L = *w.lattice;
  std::vector<std::int16_t> buf(L.sigma);
  // rank[d] = rank of boundary C_d -> C_{d-1}
  std::vector<std::size_t> rank(L.s + 2, 0);
  if (check) {
    check->boundary_squares_to_zero = true;
    check->cells_per_dimension.clear();
    for (const auto& c : cx.cells) check->cells_per_dimension.push_back(c.size());
  }
  for (std::size_t d = 1; d <= L.s; ++d) {
    std::vector<F2Vec> rows;
    rows.reserve(cx.cells[d].size());
    for (const auto& cell : cx.cells[d]) {
      auto faces = boundary(cx, w, d, cell, buf);
      rows.push_back(as_vector(faces, cx.cells[d - 1].size()));
      if (check && d >= 2) {
        F2Vec acc(cx.cells[d - 2].size());
        for (std::size_t f = 0; f < faces.size(); ++f) {
          const auto& fc = cx.cells[d - 1][faces[f]];
          for (auto g : boundary(cx, w, d - 1, fc, buf)) acc.flip(g);
        }
        if (acc.any()) check->boundary_squares_to_zero = false;
      }
    }
    rank[d] = f2_rank(std::move(rows));
  }
  return rank;
}

}  // namespace

std::vector<std::size_t> cube_cohomology_all(const WeightFunction& w, long long n, CubeComplexCheck* check) {
  CubeComplex cx = build(w, n);
  auto rank = boundary_ranks(cx, w, check);
  std::size_t s = cx.s;
  std::vector<std::size_t> dims(s + 1, 0);
  for (std::size_t q = 0; q <= s; ++q) {
    std::size_t cells = cx.cells[q].size();
    std::size_t out_rank = q + 1 <= s ? rank[q + 1] : 0;
    dims[q] = cells - rank[q] - out_rank;
  }
  return dims;
}

std::size_t cube_cohomology(const WeightFunction& w, long long n, std::size_t q, CubeComplexCheck* check) {
  if (q > w.lattice->s) throw std::out_of_range("cube_cohomology: degree exceeds the vertex count");
  return cube_cohomology_all(w, n, check)[q];
}

}  // namespace plumbhf
