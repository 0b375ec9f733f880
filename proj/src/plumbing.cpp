#include "plumbhf/plumbing.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "plumbhf/smith.hpp"

namespace plumbhf {

using nlohmann::json;

PlumbingGraph::PlumbingGraph(std::vector<PlumbingVertex> vertices,
                             std::vector<std::pair<std::string, std::string>> edges)
    : vertices_(std::move(vertices)) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index.emplace(vertices_[i].id, i).second) {
      throw std::invalid_argument("duplicate vertex id: " + vertices_[i].id);
    }
  }
  adj_.assign(vertices_.size(), {});
  std::set<std::pair<std::size_t, std::size_t>> seen;
  // union-find for cycle detection
  std::vector<std::size_t> parent(vertices_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : edges) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end()) throw std::invalid_argument("edge endpoint not declared: " + a);
    if (ib == index.end()) throw std::invalid_argument("edge endpoint not declared: " + b);
    std::size_t u = ia->second, v = ib->second;
    if (u == v) throw std::invalid_argument("self-loop at vertex " + a);
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second) throw std::invalid_argument("multi-edge between " + a + " and " + b);
    std::size_t ru = find(u), rv = find(v);
    if (ru == rv) throw std::invalid_argument("cycle detected through edge " + a + "-" + b);
    parent[ru] = rv;
    edges_.emplace_back(u, v);
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

std::size_t PlumbingGraph::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].id == id) return i;
  }
  throw std::out_of_range("unknown vertex id: " + id);
}

IntVector PlumbingGraph::weights() const {
  IntVector w;
  w.reserve(vertices_.size());
  for (const auto& v : vertices_) w.push_back(v.weight);
  return w;
}

std::string PlumbingGraph::to_json() const {
  json j;
  j["vertices"] = json::array();
  for (const auto& v : vertices_) j["vertices"].push_back({{"id", v.id}, {"weight", v.weight}});
  j["edges"] = json::array();
  for (const auto& [u, v] : edges_) j["edges"].push_back({vertices_[u].id, vertices_[v].id});
  return j.dump(2);
}

PlumbingGraph parse_plumbing(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed plumbing file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array()) {
    throw std::invalid_argument("malformed plumbing file: missing \"vertices\" array");
  }
  std::vector<PlumbingVertex> vertices;
  for (const auto& v : j["vertices"]) {
    if (!v.is_object() || !v.contains("id") || !v.contains("weight") || !v["id"].is_string() ||
        !v["weight"].is_number_integer()) {
      throw std::invalid_argument("malformed vertex entry: " + v.dump());
    }
    vertices.push_back({v["id"].get<std::string>(), v["weight"].get<long long>()});
  }
  std::vector<std::pair<std::string, std::string>> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw std::invalid_argument("malformed plumbing file: \"edges\" is not an array");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
        throw std::invalid_argument("malformed edge entry: " + e.dump());
      }
      edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  }
  return PlumbingGraph(std::move(vertices), std::move(edges));
}

PlumbingGraph load_plumbing(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open plumbing file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_plumbing(ss.str());
}

IntersectionForm intersection_form(const PlumbingGraph& g) {
  IntersectionForm f;
  f.s = g.size();
  f.B.assign(f.s, IntVector(f.s, 0));
  for (std::size_t i = 0; i < f.s; ++i) {
    f.B[i][i] = g.weight(i);
    f.basis.push_back(g.vertices()[i].id);
  }
  for (const auto& [u, v] : g.edges()) {
    f.B[u][v] = 1;
    f.B[v][u] = 1;
  }
  return f;
}

std::string definiteness_name(Definiteness d) {
  switch (d) {
    case Definiteness::negative_definite:
      return "negative_definite";
    case Definiteness::negative_semidefinite_degenerate:
      return "negative_semidefinite_degenerate";
    default:
      return "other";
  }
}

std::string H1Group::describe() const {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < free_rank; ++i) parts.push_back("Z");
  for (const auto& t : torsion) parts.push_back("Z/" + t.get_str());
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

Definiteness definiteness_of(const IntMatrix& b, std::size_t& nullity) {
  // Symmetric elimination on P = -B; P is PSD iff every pivot is >= 0 and a
  // zero diagonal entry forces its whole row to vanish.
  std::size_t n = b.size();
  std::vector<std::vector<Rational>> p(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p[i][j] = -static_cast<long>(b[i][j]);
  std::vector<bool> done(n, false);
  nullity = 0;
  bool psd = true;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && p[i][i] != 0) {
        piv = i;
        break;
      }
    }
    if (piv == n) {
      // remaining block has zero diagonal; it is PSD only if it is zero
      for (std::size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (!done[j] && p[i][j] != 0) psd = false;
        }
      }
      break;
    }
    if (p[piv][piv] < 0) psd = false;
    done[piv] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || p[i][piv] == 0) continue;
      Rational f = p[i][piv] / p[piv][piv];
      for (std::size_t j = 0; j < n; ++j) {
        if (!done[j]) p[i][j] -= f * p[piv][j];
      }
    }
  }
  // nullity from the exact rank of B
  auto sf = smith_normal_form(b);
  nullity = n - sf.rank;
  if (!psd) return Definiteness::other;
  return nullity == 0 ? Definiteness::negative_definite : Definiteness::negative_semidefinite_degenerate;
}

PlumbingClass classify(const IntersectionForm& form) {
  PlumbingClass c;
  std::size_t nullity = 0;
  c.definiteness = definiteness_of(form.B, nullity);
  c.b1 = nullity;
  auto sf = smith_normal_form(form.B);
  c.h1.free_rank = form.s - sf.rank;
  for (const auto& d : sf.diag) {
    if (d > 1) c.h1.torsion.push_back(d);
  }
  for (std::size_t i = 0; i < form.s; ++i) {
    long long deg = 0;
    for (std::size_t j = 0; j < form.s; ++j) {
      if (j != i && form.B[i][j] != 0) ++deg;
    }
    if (form.B[i][i] > -deg) c.bad_vertices.push_back(form.basis.empty() ? std::to_string(i) : form.basis[i]);
  }
  if (c.bad_vertices.size() > 1) {
    c.failures.push_back("more than one bad vertex (" + std::to_string(c.bad_vertices.size()) + ")");
  }
  if (c.definiteness == Definiteness::other) {
    c.failures.push_back("intersection form is not negative semi-definite");
  } else if (c.definiteness == Definiteness::negative_semidefinite_degenerate) {
    if (c.b1 != 1) c.failures.push_back("b1 = " + std::to_string(c.b1) + " (need b1 = 1)");
    else if (!c.h1.is_Z()) c.failures.push_back("H1 = " + c.h1.describe() + " (need H1 = Z)");
  }
  c.supported = c.failures.empty();
  return c;
}

PlumbingClass classify(const PlumbingGraph& g) { return classify(intersection_form(g)); }

std::vector<IntVector> kernel_basis(const IntersectionForm& form) {
  auto sf = smith_normal_form(form.B);
  std::size_t s = form.s;
  // columns rank..s-1 of V span ker(B) over Z; V unimodular makes them saturated
  BigMatrix basis;
  for (std::size_t c = sf.rank; c < s; ++c) {
    std::vector<BigInt> col(s);
    for (std::size_t r = 0; r < s; ++r) col[r] = sf.V[r][c];
    basis.push_back(col);
  }
  // Hermite-style row echelon of the basis (as rows), for a deterministic output
  std::size_t row = 0;
  for (std::size_t col = 0; col < s && row < basis.size(); ++col) {
    while (true) {
      std::size_t best = basis.size();
      for (std::size_t i = row; i < basis.size(); ++i) {
        if (basis[i][col] != 0 && (best == basis.size() || abs(basis[i][col]) < abs(basis[best][col]))) best = i;
      }
      if (best == basis.size()) break;
      std::swap(basis[row], basis[best]);
      bool clean = true;
      for (std::size_t i = row + 1; i < basis.size(); ++i) {
        if (basis[i][col] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), basis[i][col].get_mpz_t(), basis[row][col].get_mpz_t());
        for (std::size_t k = 0; k < s; ++k) basis[i][k] -= q * basis[row][k];
        if (basis[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (row < basis.size() && basis[row][col] != 0) {
      if (basis[row][col] < 0) {
        for (auto& x : basis[row]) x = -x;
      }
      for (std::size_t i = 0; i < row; ++i) {
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), basis[i][col].get_mpz_t(), basis[row][col].get_mpz_t());
        for (std::size_t k = 0; k < s; ++k) basis[i][k] -= q * basis[row][k];
      }
      ++row;
    }
  }
  std::vector<IntVector> out;
  for (const auto& b : basis) {
    IntVector v;
    for (const auto& x : b) v.push_back(checked_ll(x));
    out.push_back(v);
  }
  return out;
}

namespace {

PlumbingGraph make_graph(const IntVector& weights, const std::vector<std::pair<int, int>>& edges_1based) {
  std::vector<PlumbingVertex> vs;
  for (std::size_t i = 0; i < weights.size(); ++i) vs.push_back({"v" + std::to_string(i + 1), weights[i]});
  std::vector<std::pair<std::string, std::string>> es;
  for (auto [a, b] : edges_1based) es.emplace_back("v" + std::to_string(a), "v" + std::to_string(b));
  return PlumbingGraph(std::move(vs), std::move(es));
}

void require_range(const std::string& name, long long param, long long lo, long long hi) {
  if (param < lo || param > hi) {
    throw std::out_of_range(name + ": parameter " + std::to_string(param) + " outside [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "]");
  }
}

}  // namespace

std::vector<std::string> builtin_family_names() {
  return {"gamma_Nj", "gamma_prime_Nj", "k1_surgery", "k1_surgery_reversed", "single_vertex", "disjoint_zeros"};
}

PlumbingGraph builtin_family(const std::string& name, long long param) {
  if (name == "gamma_Nj") {
    require_range(name, param, 1, 64);
    long long j = param;
    int n = static_cast<int>(2 * j + 3);
    IntVector w(n, -2);
    w[0] = -1;
    w[1] = -2;
    w[2] = -8 * j + 1;
    w[3] = -3;
    w[n - 1] = -5;
    std::vector<std::pair<int, int>> e = {{1, 2}, {1, 3}, {1, 4}};
    for (int i = 4; i < n; ++i) e.emplace_back(i, i + 1);
    return make_graph(w, e);
  }
  if (name == "gamma_prime_Nj") {
    require_range(name, param, 1, 16);
    int j = static_cast<int>(param);
    int n = 8 * j + 5;
    IntVector w(n, -2);
    w[8 * j] = -2 * j - 1;  // v_{8j+1}
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i < 8 * j; ++i) e.emplace_back(i, i + 1);
    e.emplace_back(8 * j, 8 * j + 1);
    e.emplace_back(8 * j + 1, 8 * j + 2);
    e.emplace_back(8 * j + 2, 8 * j + 3);
    e.emplace_back(8 * j + 3, 8 * j + 4);
    e.emplace_back(8 * j - 1, 8 * j + 5);
    return make_graph(w, e);
  }
  if (name == "k1_surgery") {
    // Seifert invariants (-1; 3/1, 15/4, 5/2); centre v2
    return make_graph({-3, -1, -4, -4, -3, -2}, {{1, 2}, {2, 3}, {3, 4}, {2, 5}, {5, 6}});
  }
  if (name == "k1_surgery_reversed") {
    // orientation reversal of the above: (-2; 3/2, 15/11, 5/3); centre v1
    return make_graph({-2, -2, -2, -2, -2, -3, -2, -2, -2, -3},
                      {{1, 2}, {2, 3}, {1, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {1, 9}, {9, 10}});
  }
  if (name == "single_vertex") {
    require_range(name, param, -1000000, 1000000);
    return make_graph({param}, {});
  }
  if (name == "disjoint_zeros") {
    require_range(name, param, 1, 16);
    return make_graph(IntVector(static_cast<std::size_t>(param), 0), {});
  }
  throw std::invalid_argument("unknown family: " + name);
}

}  // namespace plumbhf
