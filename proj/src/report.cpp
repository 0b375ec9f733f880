#include "plumbhf/report.hpp"

#include <set>
#include <sstream>

namespace plumbhf {

namespace {

Json opt_rat(const std::optional<Rational>& r) { return r ? Json(rational_to_string(*r)) : Json(nullptr); }

Json rat(const Rational& r) { return rational_to_string(r); }

std::string residue_name(const Rational& r) {
  Rational m = mod2(r);
  if (m == Rational(1, 2)) return "1/2";
  if (m == Rational(3, 2)) return "-1/2";
  return rational_to_string(m);
}

}  // namespace

Json classification_json(const PlumbingClass& c) {
  Json j;
  j["definiteness"] = definiteness_name(c.definiteness);
  j["b1"] = c.b1;
  j["h1"] = c.h1.describe();
  j["bad_vertices"] = c.bad_vertices;
  j["supported"] = c.supported;
  j["failures"] = c.failures;
  return j;
}

Json spinc_json(const SpincClass& c) {
  Json j;
  j["representative"] = c.representative;
  j["torsion"] = c.torsion;
  j["self_conjugate"] = c.self_conjugate;
  j["l0"] = c.l0 ? Json(*c.l0) : Json(nullptr);
  return j;
}

Json invariants_json(const InvolutiveDInvariants& inv) {
  Json j;
  j["b1"] = inv.b1;
  if (inv.b1 == 1) {
    j["d_1/2"] = opt_rat(inv.d_plus);
    j["d_-1/2"] = opt_rat(inv.d_minus);
    j["dbar_1/2"] = opt_rat(inv.dbar_plus);
    j["dbar_-1/2"] = opt_rat(inv.dbar_minus);
    j["dlow_1/2"] = opt_rat(inv.dlow_plus);
    j["dlow_-1/2"] = opt_rat(inv.dlow_minus);
  } else {
    j["d"] = opt_rat(inv.d);
    j["dbar"] = opt_rat(inv.dbar);
    j["dlow"] = opt_rat(inv.dlow);
  }
  j["hf_hat_dim"] = inv.hf_hat_dim ? Json(*inv.hf_hat_dim) : Json(nullptr);
  j["hfi_hat_dim"] = inv.hfi_hat_dim ? Json(*inv.hfi_hat_dim) : Json(nullptr);
  return j;
}

Json verdict_json(const Verdict& v) {
  Json j;
  j["name"] = v.name;
  j["verdict"] = v.obstructed ? "obstructed" : "consistent";
  j["evaluated"] = v.evaluated;
  j["failed"] = v.failed;
  return j;
}

Json root_json(const GradedRoot& root, const RootInvolution* inv) {
  Json j;
  j["n_min"] = root.n_min;
  j["n_stop"] = root.n_stop;
  j["grading_shift"] = opt_rat(root.grading_shift);
  Json leaves = Json::array();
  for (auto v : root.leaves()) {
    Json l;
    l["vertex"] = v;
    l["level"] = root.vertices[v].level;
    if (root.grading_shift) l["grading"] = rat(root.grading(v));
    if (root.vertices[v].member) l["birth_point"] = root.points.point(*root.vertices[v].member);
    if (root.weight && root.vertices[v].member)
      l["characteristic_vector"] = root.weight->char_of_point(root.points.point(*root.vertices[v].member));
    leaves.push_back(l);
  }
  j["leaf_count"] = root.leaves().size();
  j["leaves"] = leaves;
  Json verts = Json::array();
  for (std::size_t v = 0; v < root.size(); ++v) {
    Json x;
    x["id"] = v;
    x["level"] = root.vertices[v].level;
    if (root.grading_shift) x["grading"] = rat(root.grading(v));
    x["parent"] = root.vertices[v].parent ? Json(*root.vertices[v].parent) : Json(nullptr);
    if (inv) x["involution"] = inv->perm[v];
    verts.push_back(x);
  }
  j["vertices"] = verts;
  return j;
}

Json hf_json(const HFModule& m) {
  Json j;
  Json towers = Json::array();
  std::set<Rational> residues;
  for (const auto& g : m.module.grading) residues.insert(mod2(g));
  for (const auto& r : residues)
    for (const auto& b : tower_bottoms(m.module, r)) {
      Json t;
      t["bottom"] = rat(b);
      t["parity"] = residue_name(b);
      towers.push_back(t);
    }
  j["towers"] = towers;
  Json reduced = Json::array();
  for (const auto& g : reduced_gradings(m)) reduced.push_back(Json{{"grading", rat(g)}});
  j["reduced"] = reduced;
  Json u = Json::array();
  for (std::size_t i = 0; i < m.module.size(); ++i)
    for (auto t : m.module.U[i]) u.push_back(Json::array({t, i, 1}));
  j["u_matrix"] = u;
  j["ceiling"] = rat(m.module.ceiling);
  return j;
}

std::vector<TowerInfo> hfi_towers(const HFIModule& m) {
  std::vector<TowerInfo> out;
  std::set<Rational> residues;
  for (const auto& g : m.module.grading) residues.insert(mod2(g));
  Rational top = m.module.reliable_ceiling();
  Rational lo = m.module.min_grading();
  for (const auto& res : residues) {
    std::size_t prev_a = 0, prev_b = 0;
    for (Rational r = res + 2 * Rational(ceil_of((lo - res) / 2)); r <= top; r += 2) {
      std::size_t a = stable_image_dim(m.module, r);
      std::size_t b = stable_image_q_dim(m.module, r);
      for (std::size_t t = prev_b; t < b; ++t) out.push_back({r, res, true});
      for (std::size_t t = prev_a - prev_b; t + b < a; ++t) out.push_back({r, res, false});
      prev_a = a;
      prev_b = b;
    }
  }
  return out;
}

Json hfi_json(const HFIModule& m) {
  Json j;
  Json dims = Json::array();
  Rational top = m.module.reliable_ceiling();
  for (const auto& [r, d] : m.module.graded_dims())
    if (r <= top) dims.push_back(Json{{"grading", rat(r)}, {"dim", d}});
  j["graded_dims"] = dims;
  Json towers = Json::array();
  for (const auto& t : hfi_towers(m))
    towers.push_back(Json{{"bottom", rat(t.bottom)}, {"parity", residue_name(t.bottom)}, {"q_image", t.q_image}});
  j["towers"] = towers;
  j["provenance"] = m.provenance;
  return j;
}

Json report_json(const InvariantReport& r) {
  Json j;
  j["inputs"] = Json{{"gamma_digest", r.gamma_digest},
                     {"gamma_reversed_digest", r.gamma_reversed_digest ? Json(*r.gamma_reversed_digest) : Json(nullptr)}};
  j["classification"] = classification_json(r.gamma.cls);
  if (r.reversed) j["classification_reversed"] = classification_json(r.reversed->cls);
  j["spinc"] = spinc_json(r.gamma.spinc);
  j["graded_root"] = root_json(*r.gamma.root, &r.gamma.involution);
  j["graded_root"].erase("vertices");
  j["involution_is_identity"] = r.gamma.involution.is_identity();
  if (r.reversed) {
    j["graded_root_reversed"] = root_json(*r.reversed->root, &r.reversed->involution);
    j["graded_root_reversed"].erase("vertices");
  }
  j["partial"] = r.partial;
  if (r.hf) j["hf_minus_y"] = hf_json(*r.hf);
  if (r.hfi) j["hfi_minus_y"] = hfi_json(*r.hfi);
  if (r.minus_y) j["invariants_minus_y"] = invariants_json(*r.minus_y);
  if (r.y) j["invariants_y"] = invariants_json(*r.y);
  if (r.y_direct) j["invariants_y_from_reversed"] = invariants_json(*r.y_direct);
  j["orientation_identity"] = r.orientation_identity ? Json(*r.orientation_identity) : Json(nullptr);
  j["orientation_identity_d"] = r.orientation_identity_d ? Json(*r.orientation_identity_d) : Json(nullptr);
  if (r.hat) {
    j["hat_certificate"] = Json{{"hf_hat_dim", r.hat->hf_hat_dim},
                                {"hfi_hat_dim", r.hat->hfi_hat_dim},
                                {"model_hfi_hat_dim", r.hat->model_hfi_hat_dim},
                                {"agrees", r.hat->hfi_hat_dim == r.hat->model_hfi_hat_dim}};
  }
  Json verdicts = Json::array();
  if (!r.partial) {
    if (r.zero_surgery) verdicts.push_back(verdict_json(*r.zero_surgery));
    if (r.spin_filling) verdicts.push_back(verdict_json(*r.spin_filling));
  }
  j["verdicts"] = verdicts;
  j["notes"] = r.notes;
  return j;
}

std::string root_dot(const GradedRoot& root, const RootInvolution* j) {
  std::ostringstream os;
  os << "graph graded_root {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n";
  for (std::size_t v = 0; v < root.size(); ++v) {
    os << "  v" << v << " [label=\"" << root.vertices[v].level;
    if (root.grading_shift) os << "\\n" << rational_to_string(root.grading(v));
    os << "\"];\n";
  }
  for (std::size_t v = 0; v < root.size(); ++v)
    if (root.vertices[v].parent) os << "  v" << v << " -- v" << *root.vertices[v].parent << ";\n";
  if (j)
    for (std::size_t v = 0; v < root.size(); ++v)
      if (j->perm[v] > v) os << "  v" << v << " -- v" << j->perm[v] << " [style=dashed, constraint=false];\n";
  os << "}\n";
  return os.str();
}

std::string root_ascii(const GradedRoot& root, const RootInvolution* j) {
  std::ostringstream os;
  for (long long lvl = root.top_level(); lvl >= root.n_min; --lvl) {
    os << "level " << lvl;
    auto vs = root.at_level(lvl);
    if (root.grading_shift && !vs.empty()) os << " (grading " << rational_to_string(root.grading(vs.front())) << ")";
    os << ":";
    for (auto v : vs) {
      os << " v" << v;
      if (root.vertices[v].children.empty()) os << "*";
      if (root.vertices[v].parent) os << "->v" << *root.vertices[v].parent;
      if (j && j->perm[v] != v) os << "<J>v" << j->perm[v];
    }
    os << "\n";
  }
  os << "(* marks a leaf, ->v the parent, <J>v the involution partner)\n";
  return os.str();
}

}  // namespace plumbhf
