#include "plumbhf/lattice.hpp"

#include <algorithm>
#include <cstring>

#include "plumbhf/smith.hpp"

namespace plumbhf {

namespace {

using QMatrix = std::vector<std::vector<Rational>>;

BigInt round_half_up(const Rational& r) { return floor_of(r + Rational(1, 2)); }

// Exact LLL (delta = 3/4) on a positive definite Gram matrix. T collects the
// column operations: the reduced basis is (old basis) * T.
void lll_reduce(BigMatrix& gram, BigMatrix& T) {
  std::size_t n = gram.size();
  if (n <= 1) return;
  QMatrix mu(n, std::vector<Rational>(n, 0));
  std::vector<Rational> bstar(n);
  auto gso = [&]() {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        Rational acc = Rational(gram[i][j]);
        for (std::size_t l = 0; l < j; ++l) acc -= mu[j][l] * mu[i][l] * bstar[l];
        mu[i][j] = acc / bstar[j];
      }
      Rational acc = Rational(gram[i][i]);
      for (std::size_t l = 0; l < i; ++l) acc -= mu[i][l] * mu[i][l] * bstar[l];
      bstar[i] = acc;
      mu[i][i] = 1;
    }
  };
  // b_k -= q b_j
  auto reduce = [&](std::size_t k, std::size_t j, const BigInt& q) {
    for (std::size_t r = 0; r < n; ++r) gram[r][k] -= q * gram[r][j];
    for (std::size_t c = 0; c < n; ++c) gram[k][c] -= q * gram[j][c];
    for (std::size_t r = 0; r < T.size(); ++r) T[r][k] -= q * T[r][j];
    for (std::size_t l = 0; l < j; ++l) mu[k][l] -= Rational(q) * mu[j][l];
    mu[k][j] -= Rational(q);
  };
  auto swap = [&](std::size_t k) {
    std::swap(gram[k], gram[k - 1]);
    for (auto& row : gram) std::swap(row[k], row[k - 1]);
    for (auto& row : T) std::swap(row[k], row[k - 1]);
  };
  gso();
  std::size_t k = 1;
  const Rational delta(3, 4);
  while (k < n) {
    for (std::size_t j = k; j-- > 0;) {
      BigInt q = round_half_up(mu[k][j]);
      if (q != 0) reduce(k, j, q);
    }
    if (bstar[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
      ++k;
    } else {
      swap(k);
      gso();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
}

}  // namespace

IntVector QuotientLattice::project(const IntVector& x) const { return mat_vec(projection, x); }

IntVector QuotientLattice::lift(const IntVector& c) const {
  IntVector x(s, 0);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < sigma; ++j) x[i] += section[i][j] * c[j];
  return x;
}

long long QuotientLattice::pair(const IntVector& c1, const IntVector& c2) const {
  long long acc = 0;
  for (std::size_t i = 0; i < sigma; ++i)
    for (std::size_t j = 0; j < sigma; ++j) acc += c1[i] * gram[i][j] * c2[j];
  return acc;
}

QuotientLattice quotient_lattice(const IntersectionForm& form) {
  std::size_t nullity = 0;
  if (definiteness_of(form.B, nullity) == Definiteness::other) {
    throw std::invalid_argument("quotient_lattice: form is not negative semi-definite");
  }
  QuotientLattice L;
  L.s = form.s;
  L.B = form.B;
  auto sf = smith_normal_form(form.B);
  std::size_t sigma = sf.rank;
  L.sigma = sigma;
  std::size_t s = form.s;
  BigMatrix X(s, std::vector<BigInt>(sigma));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < sigma; ++j) X[i][j] = sf.V[i][j];
  BigMatrix Bb = to_big(form.B);
  // positive definite Gram of -B on the complement
  BigMatrix gram(sigma, std::vector<BigInt>(sigma, 0));
  for (std::size_t a = 0; a < sigma; ++a)
    for (std::size_t b = 0; b < sigma; ++b) {
      BigInt acc = 0;
      for (std::size_t i = 0; i < s; ++i) {
        if (X[i][a] == 0) continue;
        for (std::size_t j = 0; j < s; ++j) acc += X[i][a] * Bb[i][j] * X[j][b];
      }
      gram[a][b] = -acc;
    }
  BigMatrix T(sigma, std::vector<BigInt>(sigma, 0));
  for (std::size_t i = 0; i < sigma; ++i) T[i][i] = 1;
  lll_reduce(gram, T);
  BigMatrix Xr(s, std::vector<BigInt>(sigma, 0));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < sigma; ++j)
      for (std::size_t l = 0; l < sigma; ++l) Xr[i][j] += X[i][l] * T[l][j];
  L.section.assign(s, IntVector(sigma));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < sigma; ++j) L.section[i][j] = checked_ll(Xr[i][j]);
  L.gram.assign(sigma, IntVector(sigma));
  for (std::size_t i = 0; i < sigma; ++i)
    for (std::size_t j = 0; j < sigma; ++j) L.gram[i][j] = checked_ll(-gram[i][j]);
  // projection = G^{-1} X^T B, integral on Z^s
  L.projection.assign(sigma, IntVector(s, 0));
  if (sigma > 0) {
    IntMatrix XtB(sigma, IntVector(s, 0));
    for (std::size_t a = 0; a < sigma; ++a)
      for (std::size_t j = 0; j < s; ++j)
        for (std::size_t i = 0; i < s; ++i) XtB[a][j] += L.section[i][a] * form.B[i][j];
    for (std::size_t j = 0; j < s; ++j) {
      IntVector col(sigma);
      for (std::size_t a = 0; a < sigma; ++a) col[a] = XtB[a][j];
      std::vector<Rational> sol;
      if (!solve_rational(L.gram, col, sol)) throw std::logic_error("quotient_lattice: singular Gram matrix");
      for (std::size_t a = 0; a < sigma; ++a) {
        if (sol[a].get_den() != 1) throw std::logic_error("quotient_lattice: non-integral projection");
        L.projection[a][j] = checked_ll(sol[a].get_num());
      }
    }
  }
  L.edge_vectors.assign(s, IntVector(sigma, 0));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t a = 0; a < sigma; ++a) L.edge_vectors[i][a] = L.projection[a][i];
  return L;
}

long long WeightFunction::chi(const IntVector& c) const {
  const auto& L = *lattice;
  long long acc = 0;
  for (std::size_t i = 0; i < L.sigma; ++i) {
    acc += linear[i] * c[i];
    long long row = 0;
    for (std::size_t j = 0; j < L.sigma; ++j) row += L.gram[i][j] * c[j];
    acc += c[i] * row;
  }
  return -acc / 2;
}

long long WeightFunction::chi_lift(const IntVector& x) const {
  const auto& L = *lattice;
  long long acc = dot(k, x);
  for (std::size_t i = 0; i < L.s; ++i) acc += x[i] * dot(L.B[i], x);
  return -acc / 2;
}

IntVector WeightFunction::point_of_char(const CharVector& K) const {
  const auto& L = *lattice;
  IntVector y(L.s);
  for (std::size_t i = 0; i < L.s; ++i) {
    long long d = K[i] - k[i];
    if (d % 2 != 0) throw std::invalid_argument("point_of_char: vectors differ by an odd amount");
    y[i] = d / 2;
  }
  IntVector c(L.sigma, 0);
  for (std::size_t a = 0; a < L.sigma; ++a) {
    long long acc = 0;
    for (std::size_t i = 0; i < L.s; ++i) acc += inverse_map[a][i] * y[i];
    if (acc % inverse_den != 0) throw std::invalid_argument("point_of_char: vector is not in the class");
    c[a] = acc / inverse_den;
  }
  return c;
}

CharVector WeightFunction::char_of_point(const IntVector& c) const {
  const auto& L = *lattice;
  IntVector x = L.lift(c);
  IntVector bx = mat_vec(L.B, x);
  CharVector K = k;
  for (std::size_t i = 0; i < L.s; ++i) K[i] += 2 * bx[i];
  return K;
}

WeightFunction weight_function(std::shared_ptr<const QuotientLattice> lattice, const CharVector& k) {
  const auto& L = *lattice;
  if (k.size() != L.s) throw std::invalid_argument("weight_function: length mismatch");
  WeightFunction w;
  w.lattice = lattice;
  w.k = k;
  w.linear.assign(L.sigma, 0);
  for (std::size_t a = 0; a < L.sigma; ++a)
    for (std::size_t i = 0; i < L.s; ++i) w.linear[a] += L.section[i][a] * k[i];
  // k must vanish on ker(B) for chi to descend
  IntersectionForm f;
  f.B = L.B;
  f.s = L.s;
  if (!is_torsion(k, f)) throw std::invalid_argument("weight_function: k is not torsion");
  // inverse_map = den * G^{-1} X^T
  w.inverse_map.assign(L.sigma, IntVector(L.s, 0));
  if (L.sigma > 0) {
    std::vector<std::vector<Rational>> cols(L.s);
    BigInt den = 1;
    for (std::size_t i = 0; i < L.s; ++i) {
      IntVector rhs(L.sigma);
      for (std::size_t a = 0; a < L.sigma; ++a) rhs[a] = L.section[i][a];
      solve_rational(L.gram, rhs, cols[i]);
      for (const auto& q : cols[i]) den = lcm(den, BigInt(q.get_den()));
    }
    w.inverse_den = checked_ll(den);
    for (std::size_t i = 0; i < L.s; ++i)
      for (std::size_t a = 0; a < L.sigma; ++a) {
        Rational v = cols[i][a] * Rational(den);
        w.inverse_map[a][i] = checked_ll(v.get_num());
      }
  }
  return w;
}

WeightFunction weight_function(const IntersectionForm& form, const CharVector& k) {
  return weight_function(std::make_shared<const QuotientLattice>(quotient_lattice(form)), k);
}

long long chi(const WeightFunction& w, const IntVector& c) { return w.chi(c); }

long long chi_lower_bound(const WeightFunction& w) {
  const auto& L = *w.lattice;
  if (L.sigma == 0) return 0;
  // minimum over R^sigma of (c^T Q c - a.c)/2 with Q = -G is -(a^T Q^{-1} a)/8
  IntMatrix Q(L.sigma, IntVector(L.sigma));
  for (std::size_t i = 0; i < L.sigma; ++i)
    for (std::size_t j = 0; j < L.sigma; ++j) Q[i][j] = -L.gram[i][j];
  std::vector<Rational> y;
  solve_rational(Q, w.linear, y);
  Rational aq = 0;
  for (std::size_t i = 0; i < L.sigma; ++i) aq += y[i] * static_cast<long>(w.linear[i]);
  Rational m = -aq / 8;
  return checked_ll(ceil_of(m));
}

// PointSet

std::size_t PointSet::hash_raw(const std::int16_t* c) const {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < dim_; ++i) {
    h ^= static_cast<std::uint16_t>(c[i]);
    h *= 1099511628211ULL;
  }
  h ^= h >> 29;
  return static_cast<std::size_t>(h);
}

void PointSet::grow() {
  std::size_t cap = table_.empty() ? 1024 : table_.size() * 2;
  std::vector<std::uint32_t> t(cap, 0);
  for (std::size_t i = 0; i < count_; ++i) {
    std::size_t h = hash_raw(raw(i)) & (cap - 1);
    while (t[h] != 0) h = (h + 1) & (cap - 1);
    t[h] = static_cast<std::uint32_t>(i + 1);
  }
  table_.swap(t);
}

std::optional<std::size_t> PointSet::find(const std::int16_t* c) const {
  if (table_.empty()) return std::nullopt;
  std::size_t mask = table_.size() - 1;
  std::size_t h = hash_raw(c) & mask;
  while (table_[h] != 0) {
    std::size_t idx = table_[h] - 1;
    if (std::memcmp(raw(idx), c, dim_ * sizeof(std::int16_t)) == 0) return idx;
    h = (h + 1) & mask;
  }
  return std::nullopt;
}

std::optional<std::size_t> PointSet::find(const IntVector& c) const {
  std::vector<std::int16_t> buf(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (c[i] < INT16_MIN || c[i] > INT16_MAX) return std::nullopt;
    buf[i] = static_cast<std::int16_t>(c[i]);
  }
  return find(buf.data());
}

std::size_t PointSet::insert(const IntVector& c) {
  if (c.size() != dim_) throw std::invalid_argument("PointSet: dimension mismatch");
  std::vector<std::int16_t> buf(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (c[i] < INT16_MIN || c[i] > INT16_MAX) throw std::overflow_error("PointSet: coordinate out of range");
    buf[i] = static_cast<std::int16_t>(c[i]);
  }
  if (auto f = find(buf.data())) return *f;
  if ((count_ + 1) * 2 > table_.size()) grow();
  coords_.insert(coords_.end(), buf.begin(), buf.end());
  std::size_t idx = count_++;
  std::size_t mask = table_.size() - 1;
  std::size_t h = hash_raw(buf.data()) & mask;
  while (table_[h] != 0) h = (h + 1) & mask;
  table_[h] = static_cast<std::uint32_t>(idx + 1);
  return idx;
}

IntVector PointSet::point(std::size_t i) const {
  IntVector c(dim_);
  for (std::size_t j = 0; j < dim_; ++j) c[j] = raw(i)[j];
  return c;
}

}  // namespace plumbhf
