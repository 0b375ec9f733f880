#include "plumbhf/spinc.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "plumbhf/f2.hpp"

namespace plumbhf {

OrbitTester::OrbitTester(const IntersectionForm& form) : s_(form.s), sf_(smith_normal_form(form.B)) {
  for (std::size_t i = 0; i < sf_.rank; ++i) {
    if (sf_.diag[i] != 1) torsion_free_ = false;
  }
}

bool OrbitTester::in_image(const IntVector& y) const {
  if (y.size() != s_) throw std::invalid_argument("in_image: length mismatch");
  for (std::size_t i = 0; i < s_; ++i) {
    BigInt z = 0;
    for (std::size_t j = 0; j < s_; ++j) {
      if (y[j] != 0) z += sf_.U[i][j] * static_cast<long>(y[j]);
    }
    if (i < sf_.rank) {
      if (z % sf_.diag[i] != 0) return false;
    } else if (z != 0) {
      return false;
    }
  }
  return true;
}

bool OrbitTester::same_orbit(const CharVector& k, const CharVector& k2) const {
  if (k.size() != s_ || k2.size() != s_) throw std::invalid_argument("same_orbit: length mismatch");
  IntVector y(s_);
  for (std::size_t i = 0; i < s_; ++i) {
    long long d = k2[i] - k[i];
    if (d % 2 != 0) return false;
    y[i] = d / 2;
  }
  return in_image(y);
}

bool is_characteristic(const IntVector& k, const IntersectionForm& form) {
  if (k.size() != form.s) throw std::invalid_argument("is_characteristic: length mismatch");
  for (std::size_t i = 0; i < form.s; ++i) {
    if (((k[i] - form.B[i][i]) % 2 + 2) % 2 != 0) return false;
  }
  return true;
}

bool same_orbit(const CharVector& k, const CharVector& k2, const IntersectionForm& form) {
  return OrbitTester(form).same_orbit(k, k2);
}

bool is_torsion(const CharVector& k, const IntersectionForm& form) {
  for (const auto& kappa : kernel_basis(form)) {
    if (dot(k, kappa) != 0) return false;
  }
  return true;
}

std::optional<IntVector> self_conjugate_witness(const CharVector& k, const IntersectionForm& form) {
  auto sf = smith_normal_form(form.B);
  std::size_t s = form.s;
  std::vector<BigInt> w(s, 0);
  for (std::size_t i = 0; i < s; ++i) {
    BigInt z = 0;
    for (std::size_t j = 0; j < s; ++j) z += sf.U[i][j] * static_cast<long>(k[j]);
    if (i < sf.rank) {
      if (z % sf.diag[i] != 0) return std::nullopt;
      w[i] = z / sf.diag[i];
    } else if (z != 0) {
      return std::nullopt;
    }
  }
  IntVector l(s, 0);
  for (std::size_t r = 0; r < s; ++r) {
    BigInt acc = 0;
    for (std::size_t c = 0; c < s; ++c) acc += sf.V[r][c] * w[c];
    l[r] = checked_ll(acc);
  }
  return l;
}

SpincClass make_spinc_class(const CharVector& k, const IntersectionForm& form) {
  if (!is_characteristic(k, form)) throw std::invalid_argument("vector is not characteristic");
  SpincClass c;
  c.representative = k;
  c.torsion = is_torsion(k, form);
  if (c.torsion) {
    // self-conjugate iff k - (-k) = 2k lies in 2 B Z^s, i.e. k in B Z^s
    c.l0 = self_conjugate_witness(k, form);
    c.self_conjugate = c.l0.has_value();
  }
  return c;
}

std::vector<SpincClass> torsion_selfconjugate_reps(const IntersectionForm& form) {
  auto cls = classify(form);
  if (!cls.supported) throw UnsupportedInput("unsupported plumbing: " + cls.failures.front());
  std::size_t s = form.s;
  // Solve B l = diag(B) over F_2; every characteristic vector in im(B) has this shape.
  std::vector<F2Vec> images(s, F2Vec(s));
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t i = 0; i < s; ++i)
      if (form.B[i][j] % 2 != 0) images[j].set(i);
  F2Vec target(s);
  for (std::size_t i = 0; i < s; ++i)
    if (form.B[i][i] % 2 != 0) target.set(i);
  F2Span span(s);
  std::vector<std::size_t> accepted;
  for (std::size_t j = 0; j < s; ++j) {
    if (span.insert(images[j])) accepted.push_back(j);
  }
  auto coords = span.coordinates(target);
  if (!coords) throw std::logic_error("diagonal is not in the mod 2 image of B");
  F2Vec particular(s);
  for (std::size_t i = 0; i < accepted.size(); ++i)
    if (coords->test(i)) particular.set(accepted[i]);
  auto kern = f2_kernel(images, s);
  if (kern.size() > 20) throw std::runtime_error("too many mod 2 solutions to enumerate");
  OrbitTester tester(form);
  std::vector<SpincClass> out;
  for (std::size_t mask = 0; mask < (std::size_t(1) << kern.size()); ++mask) {
    F2Vec l2 = particular;
    for (std::size_t t = 0; t < kern.size(); ++t)
      if ((mask >> t) & 1U) l2 ^= kern[t];
    IntVector l(s, 0);
    for (std::size_t i = 0; i < s; ++i) l[i] = l2.test(i) ? 1 : 0;
    IntVector k = mat_vec(form.B, l);
    bool seen = false;
    for (const auto& c : out) {
      if (tester.same_orbit(c.representative, k)) {
        seen = true;
        break;
      }
    }
    if (seen) continue;
    SpincClass c;
    c.representative = k;
    c.torsion = true;
    c.self_conjugate = true;
    c.l0 = l;
    out.push_back(c);
  }
  return out;
}

Rational square(const CharVector& k, const IntersectionForm& form) {
  std::vector<Rational> alpha;
  if (!solve_rational(form.B, k, alpha)) throw std::domain_error("square: k is not torsion (no rational solution)");
  Rational acc = 0;
  for (std::size_t i = 0; i < k.size(); ++i) acc += alpha[i] * static_cast<long>(k[i]);
  acc.canonicalize();
  return acc;
}

bool satisfies_star(const CharVector& k, const PlumbingGraph& g) {
  if (k.size() != g.size()) return false;
  for (std::size_t i = 0; i < k.size(); ++i) {
    long long m = g.weight(i);
    if (k[i] < m || k[i] > -m) return false;
  }
  return true;
}

namespace {

using Key = unsigned __int128;

struct KeyHash {
  std::size_t operator()(Key k) const {
    auto lo = static_cast<std::uint64_t>(k);
    auto hi = static_cast<std::uint64_t>(k >> 64);
    std::uint64_t h = lo * 0x9E3779B97F4A7C15ULL ^ (hi + 0x632BE59BD9B4E019ULL + (lo << 6) + (lo >> 2));
    h ^= h >> 31;
    return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ULL);
  }
};

// Star-region vectors of one class, packed as mixed-radix integers.
class StarSpace {
 public:
  StarSpace(const PlumbingGraph& g, const IntersectionForm& form, const SpincClass& cls)
      : g_(g), form_(form), cls_(cls), tester_(form), kernel_(kernel_basis(form)) {
    s_ = g.size();
    m_ = g.weights();
    Key total = 1;
    radix_.resize(s_);
    for (std::size_t i = 0; i < s_; ++i) {
      if (m_[i] > 0) {
        empty_ = true;
        radix_[i] = 1;
        continue;
      }
      radix_[i] = static_cast<Key>(-m_[i] + 1);
      if (total > (~Key(0)) / radix_[i]) throw std::runtime_error("star region too large to index");
      total *= radix_[i];
    }
    // breadth-first order over each tree so a vertex follows its parent
    std::vector<bool> placed(s_, false);
    parent_.assign(s_, -1);
    for (std::size_t r = 0; r < s_; ++r) {
      if (placed[r]) continue;
      std::deque<std::size_t> q{r};
      placed[r] = true;
      while (!q.empty()) {
        std::size_t v = q.front();
        q.pop_front();
        order_.push_back(v);
        for (std::size_t u : g.adjacency()[v]) {
          if (!placed[u]) {
            placed[u] = true;
            parent_[u] = static_cast<long long>(v);
            q.push_back(u);
          }
        }
      }
    }
    suffix_.assign(kernel_.size(), std::vector<long long>(s_ + 1, 0));
    for (std::size_t t = 0; t < kernel_.size(); ++t) {
      for (std::size_t p = s_; p-- > 0;) {
        std::size_t v = order_[p];
        suffix_[t][p] = suffix_[t][p + 1] + std::llabs(kernel_[t][v]) * std::llabs(m_[v]);
      }
    }
  }

  bool empty() const { return empty_; }

  Key pack(const CharVector& k) const {
    Key key = 0;
    for (std::size_t i = s_; i-- > 0;) key = key * radix_[i] + static_cast<Key>((k[i] - m_[i]) / 2);
    return key;
  }

  bool in_class(const CharVector& k) const {
    if (tester_.torsion_free()) return true;  // kernel orthogonality already enforced
    return tester_.same_orbit(cls_.representative, k);
  }

  // Visit every star vector of the class (optionally skipping one-move exits).
  void for_each(bool single_move_discard, const std::function<bool(const CharVector&)>& visit) const {
    if (empty_) return;
    CharVector k(s_, 0);
    std::vector<long long> sums(kernel_.size(), 0);
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
      if (stop) return;
      if (pos == s_) {
        for (long long x : sums)
          if (x != 0) return;
        if (!in_class(k)) return;
        if (!visit(k)) stop = true;
        return;
      }
      std::size_t v = order_[pos];
      long long m = m_[v];
      for (long long val = m; val <= -m; val += 2) {
        if (single_move_discard && parent_[v] >= 0) {
          auto p = static_cast<std::size_t>(parent_[v]);
          long long mp = m_[p];
          if (val == -m && k[p] == -mp) continue;
          if (val == m && k[p] == mp) continue;
        }
        bool ok = true;
        for (std::size_t t = 0; t < kernel_.size(); ++t) {
          long long ns = sums[t] + kernel_[t][v] * val;
          if (std::llabs(ns) > suffix_[t][pos + 1]) ok = false;
        }
        if (!ok) continue;
        k[v] = val;
        for (std::size_t t = 0; t < kernel_.size(); ++t) sums[t] += kernel_[t][v] * val;
        rec(pos + 1);
        for (std::size_t t = 0; t < kernel_.size(); ++t) sums[t] -= kernel_[t][v] * val;
        if (stop) return;
      }
      k[v] = 0;
    };
    rec(0);
  }

  // Neighbours of k under the moves k -> k +- 2 B e_v; returns false when a
  // neighbour leaves the star region.
  template <typename F>
  bool neighbours(const CharVector& k, F&& on_neighbour) const {
    for (std::size_t v = 0; v < s_; ++v) {
      long long m = m_[v];
      for (int sign : {+1, -1}) {
        // +2PD[v] needs k(v) = -m(v); -2PD[v] needs k(v) = m(v)
        if ((sign > 0 && k[v] != -m) || (sign < 0 && k[v] != m)) continue;
        CharVector n = k;
        n[v] += sign * 2 * m;
        for (std::size_t u : g_.adjacency()[v]) n[u] += sign * 2;
        if (n[v] < m || n[v] > -m) return false;
        for (std::size_t u : g_.adjacency()[v]) {
          if (n[u] < m_[u] || n[u] > -m_[u]) return false;
        }
        on_neighbour(n);
        if (m == 0) break;  // both moves coincide up to sign on an isolated 0-vertex
      }
    }
    return true;
  }

 private:
  const PlumbingGraph& g_;
  const IntersectionForm& form_;
  const SpincClass& cls_;
  OrbitTester tester_;
  std::vector<IntVector> kernel_;
  std::size_t s_ = 0;
  IntVector m_;
  std::vector<Key> radix_;
  std::vector<std::size_t> order_;
  std::vector<long long> parent_;
  std::vector<std::vector<long long>> suffix_;
  bool empty_ = false;
};

}  // namespace

std::vector<StarLeaf> leaf_reps_star_search(const PlumbingGraph& g, const SpincClass& cls,
                                            const StarSearchOptions& opts, StarSearchStats* stats) {
  auto form = intersection_form(g);
  auto pc = classify(form);
  if (!pc.supported) throw UnsupportedInput("unsupported plumbing: " + pc.failures.front());
  if (!cls.torsion) throw UnsupportedInput("star search needs a torsion class");
  StarSpace space(g, form, cls);
  std::unordered_set<Key, KeyHash> good;
  std::unordered_set<Key, KeyHash> bad;
  std::vector<StarLeaf> leaves;
  StarSearchStats st;
  const std::size_t memo_threshold = 32;
  space.for_each(opts.single_move_discard, [&](const CharVector& start) {
    ++st.candidates;
    if (st.candidates > opts.max_candidates) throw std::runtime_error("star search exceeded candidate limit");
    Key sk = space.pack(start);
    if (good.count(sk) || bad.count(sk)) return true;
    std::unordered_set<Key, KeyHash> seen{sk};
    std::vector<CharVector> members{start};
    std::size_t head = 0;
    bool closed = true;
    while (head < members.size() && closed) {
      CharVector cur = members[head++];
      ++st.explored;
      bool ok = space.neighbours(cur, [&](const CharVector& n) {
        Key nk = space.pack(n);
        if (bad.count(nk)) {
          closed = false;
          return;
        }
        if (seen.insert(nk).second) members.push_back(n);
      });
      if (!ok) closed = false;
    }
    if (!closed) {
      if (members.size() >= memo_threshold) bad.insert(seen.begin(), seen.end());
      return true;
    }
    good.insert(seen.begin(), seen.end());
    StarLeaf leaf;
    leaf.representative = *std::min_element(members.begin(), members.end());
    leaf.component_size = members.size();
    leaves.push_back(leaf);
    return true;
  });
  Rational k2 = square(cls.representative, form);
  for (auto& leaf : leaves) {
    Rational diff = k2 - square(leaf.representative, form);
    diff /= 8;
    diff.canonicalize();
    if (diff.get_den() != 1) throw std::logic_error("non-integral level for a star leaf");
    leaf.level = checked_ll(diff.get_num());
  }
  std::sort(leaves.begin(), leaves.end(), [](const StarLeaf& a, const StarLeaf& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.representative < b.representative;
  });
  for (std::size_t i = 0; i < leaves.size(); ++i) leaves[i].class_id = i;
  if (stats) *stats = st;
  return leaves;
}

std::vector<CharVector> star_vectors(const PlumbingGraph& g, const SpincClass& cls, std::size_t limit) {
  auto form = intersection_form(g);
  StarSpace space(g, form, cls);
  std::vector<CharVector> out;
  space.for_each(false, [&](const CharVector& k) {
    if (out.size() >= limit) throw std::runtime_error("star vector enumeration exceeded limit");
    out.push_back(k);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace plumbhf
