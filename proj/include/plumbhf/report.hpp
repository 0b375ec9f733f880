#pragma once

#include <string>

#include <json.hpp>

#include "plumbhf/obstruct.hpp"

namespace plumbhf {

using Json = nlohmann::ordered_json;

Json classification_json(const PlumbingClass& c);
Json spinc_json(const SpincClass& c);
Json invariants_json(const InvolutiveDInvariants& inv);
Json verdict_json(const Verdict& v);
Json root_json(const GradedRoot& root, const RootInvolution* j = nullptr);
Json hf_json(const HFModule& m);
Json hfi_json(const HFIModule& m);
Json report_json(const InvariantReport& r);

struct TowerInfo {
  Rational bottom;
  Rational residue;
  bool q_image = false;
};
// Towers of an HFI module split by whether they lie in the image of Q.
std::vector<TowerInfo> hfi_towers(const HFIModule& m);

// Graphviz rendering: tree edges solid, involution pairs as dashed arcs.
std::string root_dot(const GradedRoot& root, const RootInvolution* j = nullptr);
// One line per level, top down.
std::string root_ascii(const GradedRoot& root, const RootInvolution* j = nullptr);

}  // namespace plumbhf
