#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "plumbhf/report.hpp"

using namespace plumbhf;

namespace {

constexpr int kExitError = 1;
constexpr int kExitUnsupported = 2;
constexpr int kExitPartial = 3;

// A file path, or builtin:<family>[:<param>].
PlumbingGraph load_input(const std::string& spec) {
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) {
    std::string rest = spec.substr(prefix.size());
    auto colon = rest.find(':');
    std::string name = rest.substr(0, colon);
    long long param = colon == std::string::npos ? 1 : std::stoll(rest.substr(colon + 1));
    return builtin_family(name, param);
  }
  return load_plumbing(spec);
}

std::optional<CharVector> parse_spinc(const std::string& text) {
  if (text.empty() || text == "auto") return std::nullopt;
  std::string t = text;
  for (auto& c : t)
    if (c == ',' || c == '[' || c == ']' || c == '(' || c == ')') c = ' ';
  std::istringstream is(t);
  CharVector k;
  long long x;
  while (is >> x) k.push_back(x);
  if (!is.eof()) throw std::invalid_argument("could not parse --spinc vector: " + text);
  return k;
}

std::optional<SphereInvariants> parse_sphere(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("expected \"dlow,dbar\": " + text);
  SphereInvariants s;
  s.dlow = parse_rational(text.substr(0, comma));
  s.dbar = parse_rational(text.substr(comma + 1));
  return s;
}

struct Common {
  std::string gamma;
  std::string gamma_reversed;
  std::string spinc = "auto";
  std::string d_half_override;
  std::string format = "json";
  std::optional<long long> max_level;

  PipelineOptions options() const {
    PipelineOptions o;
    o.spinc = parse_spinc(spinc);
    if (!d_half_override.empty()) o.d_half_override = parse_rational(d_half_override);
    o.max_level = max_level;
    return o;
  }
  std::optional<PlumbingGraph> reversed() const {
    if (gamma_reversed.empty()) return std::nullopt;
    return load_input(gamma_reversed);
  }
};

void add_common(CLI::App* sub, Common& c, bool reversed) {
  sub->add_option("--gamma", c.gamma, "plumbing file or builtin:<family>:<param>")->required();
  if (reversed) {
    sub->add_option("--gamma-reversed", c.gamma_reversed, "plumbing of the opposite orientation");
    sub->add_option("--d-half-override", c.d_half_override, "d_{1/2}(Y) when no reversed plumbing is available");
  }
  sub->add_option("--spinc", c.spinc, "auto or a characteristic vector such as \"-1,0,1,3,-3\"");
  sub->add_option("--max-level", c.max_level, "cap on the enumerated chi level");
}

int print(const Json& j) {
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_classify(const Common& c) {
  auto g = load_input(c.gamma);
  auto form = intersection_form(g);
  auto cls = classify(g);
  Json j;
  j["graph"] = Json::parse(g.to_json());
  j["intersection_form"] = form.B;
  j["classification"] = classification_json(cls);
  j["kernel_basis"] = kernel_basis(form);
  if (cls.supported) {
    Json classes = Json::array();
    for (const auto& s : torsion_selfconjugate_reps(form)) {
      Json x = spinc_json(s);
      x["square"] = rational_to_string(square(s.representative, form));
      classes.push_back(x);
    }
    j["self_conjugate_classes"] = classes;
  }
  print(j);
  return cls.supported ? 0 : kExitUnsupported;
}

int cmd_root(const Common& c) {
  auto b = compute_branch(load_input(c.gamma), c.options(), true);
  if (c.format == "dot") {
    std::cout << root_dot(*b.root, &b.involution);
  } else if (c.format == "ascii") {
    std::cout << root_ascii(*b.root, &b.involution);
  } else {
    Json j = root_json(*b.root, &b.involution);
    j["spinc"] = spinc_json(b.spinc);
    j["involution_is_identity"] = b.involution.is_identity();
    print(j);
  }
  return 0;
}

int cmd_hf(const Common& c) {
  auto rep = run_pipeline(load_input(c.gamma), c.reversed(), c.options());
  Json j;
  j["classification"] = classification_json(rep.gamma.cls);
  j["partial"] = rep.partial;
  j["hf_minus_y"] = hf_json(*rep.hf);
  if (rep.minus_y) {
    Json d = invariants_json(*rep.minus_y);
    for (const char* k : {"dbar_1/2", "dbar_-1/2", "dlow_1/2", "dlow_-1/2", "dbar", "dlow", "hfi_hat_dim"}) d.erase(k);
    j["d_minus_y"] = d;
  }
  j["notes"] = rep.notes;
  print(j);
  return rep.partial ? kExitPartial : 0;
}

int cmd_hfi(const Common& c) {
  auto rep = run_pipeline(load_input(c.gamma), c.reversed(), c.options());
  Json j;
  j["partial"] = rep.partial;
  if (rep.hfi) j["hfi_minus_y"] = hfi_json(*rep.hfi);
  if (rep.minus_y) j["invariants_minus_y"] = invariants_json(*rep.minus_y);
  if (rep.y) j["invariants_y"] = invariants_json(*rep.y);
  j["notes"] = rep.notes;
  print(j);
  return rep.partial ? kExitPartial : 0;
}

struct ObstructArgs {
  std::optional<long long> b2;
  std::string restriction = "trivial";
  std::string m_inv;
  std::string mprime_inv;
};

Json obstruct_json(const InvariantReport& rep, const ObstructArgs& a) {
  Json j = report_json(rep);
  if (rep.partial || !rep.y) return j;
  if (a.b2) {
    auto r = spin_filling_b2_bound(*a.b2, a.restriction == "trivial", *rep.y);
    j["b2_bound"] = Json{{"inequality", r.inequality},
                         {"verdict", r.consistent ? "consistent" : "inconsistent"},
                         {"max_b2", r.max_b2 ? Json(*r.max_b2) : Json(nullptr)}};
  }
  auto M = parse_sphere(a.m_inv);
  auto Mp = parse_sphere(a.mprime_inv);
  if (M || Mp) {
    Json rows = Json::array();
    for (const auto& row : homology_cobordism_report(*rep.y, M, Mp))
      rows.push_back(Json{{"inequality", row.statement}, {"status", status_name(row.status)}});
    j["surgery_inequalities"] = rows;
  }
  return j;
}

int cmd_obstruct(const Common& c, const ObstructArgs& a) {
  if (a.restriction != "trivial" && a.restriction != "nontrivial")
    throw std::invalid_argument("--restriction must be trivial or nontrivial");
  auto rep = run_pipeline(load_input(c.gamma), c.reversed(), c.options());
  print(obstruct_json(rep, a));
  return rep.partial ? kExitPartial : 0;
}

int cmd_family(const std::string& name, long long param) {
  std::cout << builtin_family(name, param).to_json() << "\n";
  return 0;
}

int cmd_cohomology(const Common& c, long long level, std::optional<std::size_t> q) {
  auto g = load_input(c.gamma);
  auto form = intersection_form(g);
  auto cls = classify(g);
  if (!cls.supported) throw UnsupportedInput("unsupported plumbing");
  auto opts = c.options();
  SpincClass s = opts.spinc ? make_spinc_class(*opts.spinc, form) : torsion_selfconjugate_reps(form).front();
  auto w = weight_function(form, s.representative);
  CubeComplexCheck check;
  auto dims = cube_cohomology_all(w, level, &check);
  Json j;
  j["level"] = level;
  j["spinc"] = s.representative;
  if (q) {
    if (*q >= dims.size()) throw std::out_of_range("--q exceeds the vertex count");
    j["q"] = *q;
    j["dim"] = dims[*q];
  } else {
    j["dims"] = dims;
  }
  j["cells_per_dimension"] = check.cells_per_dimension;
  j["boundary_squares_to_zero"] = check.boundary_squares_to_zero;
  print(j);
  return 0;
}

int cmd_batch(const std::string& dir, const std::string& out, const Common& c) {
  namespace fs = std::filesystem;
  fs::create_directories(out);
  std::vector<fs::path> inputs;
  for (const auto& e : fs::directory_iterator(dir)) {
    auto name = e.path().filename().string();
    if (e.path().extension() != ".json" || name.find(".reversed.json") != std::string::npos) continue;
    inputs.push_back(e.path());
  }
  std::sort(inputs.begin(), inputs.end());
  Json summary = Json::array();
  int worst = 0;
  for (const auto& p : inputs) {
    std::string stem = p.stem().string();
    fs::path rev = p.parent_path() / (stem + ".reversed.json");
    Json row{{"input", p.filename().string()}};
    try {
      std::optional<PlumbingGraph> reversed;
      if (fs::exists(rev)) reversed = load_plumbing(rev.string());
      PipelineOptions o = c.options();
      o.spinc.reset();
      auto rep = run_pipeline(load_plumbing(p.string()), reversed, o);
      std::ofstream(fs::path(out) / (stem + ".report.json")) << report_json(rep).dump(2) << "\n";
      row["status"] = rep.partial ? "partial" : "ok";
      if (rep.y) row["invariants_y"] = invariants_json(*rep.y);
      if (rep.zero_surgery) row["zero_surgery"] = rep.zero_surgery->obstructed ? "obstructed" : "consistent";
      if (rep.spin_filling) row["spin_filling"] = rep.spin_filling->obstructed ? "obstructed" : "consistent";
      if (rep.partial) worst = std::max(worst, kExitPartial);
    } catch (const UnsupportedInput& e) {
      row["status"] = "unsupported";
      row["error"] = e.what();
      worst = std::max(worst, kExitUnsupported);
    } catch (const std::exception& e) {
      row["status"] = "error";
      row["error"] = e.what();
      worst = std::max(worst, kExitError);
    }
    summary.push_back(row);
  }
  std::ofstream(fs::path(out) / "summary.json") << summary.dump(2) << "\n";
  print(summary);
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heegaard Floer and involutive invariants of plumbed 3-manifolds"};
  app.require_subcommand(1);
  Common common;
  ObstructArgs oargs;
  std::string fam_name;
  long long fam_param = 1;
  long long level = 0;
  std::optional<std::size_t> q;
  std::string batch_dir, batch_out;

  auto* classify_cmd = app.add_subcommand("classify", "definiteness, b1, H1, bad vertices, spin^c classes");
  add_common(classify_cmd, common, false);
  auto* root_cmd = app.add_subcommand("root", "graded root of the self-conjugate class");
  add_common(root_cmd, common, false);
  root_cmd->add_option("--format", common.format, "json, dot or ascii")->check(CLI::IsMember({"json", "dot", "ascii"}));
  auto* hf_cmd = app.add_subcommand("hf", "HF+ of -Y");
  add_common(hf_cmd, common, true);
  auto* hfi_cmd = app.add_subcommand("hfi", "involutive HF+ of -Y and its d-invariants");
  add_common(hfi_cmd, common, true);
  auto* ob_cmd = app.add_subcommand("obstruct", "full report with obstruction verdicts");
  add_common(ob_cmd, common, true);
  ob_cmd->add_option("--b2", oargs.b2, "b2 of a spin filling to test");
  ob_cmd->add_option("--restriction", oargs.restriction, "trivial or nontrivial restriction H^1(X) -> H^1(Y)");
  ob_cmd->add_option("--m-invariants", oargs.m_inv, "\"dlow,dbar\" of the homology sphere M");
  ob_cmd->add_option("--mprime-invariants", oargs.mprime_inv, "\"dlow,dbar\" of M'");
  auto* fam_cmd = app.add_subcommand("family", "print a built-in plumbing");
  fam_cmd->add_option("--name", fam_name, "family name")->required();
  fam_cmd->add_option("--param", fam_param, "j, vertex weight or vertex count");
  auto* coh_cmd = app.add_subcommand("cohomology", "cube-complex cohomology of a sublevel set");
  add_common(coh_cmd, common, false);
  coh_cmd->add_option("--level", level, "chi level n of the sublevel set")->required();
  coh_cmd->add_option("--q", q, "single degree; all degrees when absent");
  auto* batch_cmd = app.add_subcommand("batch", "reports for every <name>.json with optional <name>.reversed.json");
  batch_cmd->add_option("--dir", batch_dir, "directory of plumbing files")->required();
  batch_cmd->add_option("--out", batch_out, "output directory for reports")->required();
  batch_cmd->add_option("--d-half-override", common.d_half_override, "applied to inputs without a reversed file");
  batch_cmd->add_option("--max-level", common.max_level, "cap on the enumerated chi level");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*classify_cmd) return cmd_classify(common);
    if (*root_cmd) return cmd_root(common);
    if (*hf_cmd) return cmd_hf(common);
    if (*hfi_cmd) return cmd_hfi(common);
    if (*ob_cmd) return cmd_obstruct(common, oargs);
    if (*fam_cmd) return cmd_family(fam_name, fam_param);
    if (*coh_cmd) return cmd_cohomology(common, level, q);
    if (*batch_cmd) return cmd_batch(batch_dir, batch_out, common);
  } catch (const UnsupportedInput& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const PartialInput& e) {
    std::cerr << "partial: " << e.what() << "\n";
    return kExitPartial;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
