#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plumbhf/involutive.hpp"

namespace plumbhf {

// Invariants of Y from those of -Y: dlow_{+-}(Y) = -dbar_{-+}(-Y), dbar_{+-}(Y) = -dlow_{-+}(-Y),
// d_{+-}(Y) = -d_{-+}(-Y); for b1 = 0 the same with the residue swap dropped.
InvolutiveDInvariants convert_orientation(const InvolutiveDInvariants& inv);

struct Verdict {
  std::string name;
  bool obstructed = false;
  // one line per inequality evaluated, with the numbers substituted
  std::vector<std::string> evaluated;
  std::vector<std::string> failed;
};

// 0-surgery on a knot in S^3 needs -1/2 <= dlow_{-1/2}(Y) and dbar_{1/2}(Y) <= 1/2.
Verdict zero_surgery_check(const InvolutiveDInvariants& invY);
// No negative semi-definite spin filling when dlow_{-1/2}(Y) < -1/2 and dlow_{1/2}(Y) < 1/2.
Verdict spin_filling_check(const InvolutiveDInvariants& invY);

struct BoundResult {
  bool consistent = false;
  std::string inequality;
  // largest b2 compatible with the invariants, absent when none is
  std::optional<long long> max_b2;
};

// Trivial restriction: b2 - 3 <= 4 dlow_{-1/2}(Y). Nontrivial: b2 + 2 <= 4 dlow_{1/2}(Y).
BoundResult spin_filling_b2_bound(long long b2, bool restriction_trivial, const InvolutiveDInvariants& invY);

struct SphereInvariants {
  std::optional<Rational> dlow;
  std::optional<Rational> dbar;
};

enum class InequalityStatus { satisfied, violated, unevaluable };
std::string status_name(InequalityStatus s);

struct InequalityRow {
  std::string statement;
  InequalityStatus status = InequalityStatus::unevaluable;
};

// dlow(M) - 1/2 <= dlow_{-1/2}(Y), dbar(M) - 1/2 <= dbar_{-1/2}(Y),
// dlow_{1/2}(Y) - 1/2 <= dlow(M'), dbar_{1/2}(Y) - 1/2 <= dbar(M').
std::vector<InequalityRow> homology_cobordism_report(const InvolutiveDInvariants& invY, const std::optional<SphereInvariants>& M,
                                            const std::optional<SphereInvariants>& Mprime);

struct PipelineOptions {
  std::optional<CharVector> spinc;  // class representative; chosen automatically when absent
  std::optional<Rational> d_half_override;  // d_{1/2}(Y) when no reversed plumbing is available
  std::optional<long long> max_level;
  EnumerationLimits limits;
};

// Everything computed from one plumbing graph for its self-conjugate torsion class.
struct Branch {
  PlumbingGraph graph;
  IntersectionForm form;
  PlumbingClass cls;
  SpincClass spinc;
  std::vector<SpincClass> all_classes;
  std::shared_ptr<GradedRoot> root;
  RootInvolution involution;
  HFModule odd;  // the module of the root alone
  Rational odd_bottom = 0;
};

Branch compute_branch(const PlumbingGraph& g, const PipelineOptions& opts, bool use_spinc_option);

struct InvariantReport {
  std::string gamma_digest;
  std::optional<std::string> gamma_reversed_digest;
  Branch gamma;
  std::optional<Branch> reversed;
  bool partial = false;
  std::optional<HFModule> hf;  // HF+(-Y), full when not partial
  std::optional<IotaModel> iota;
  std::optional<HFIModule> hfi;
  std::optional<HatDims> hat;
  std::optional<InvolutiveDInvariants> minus_y;  // invariants of -Y(Gamma)
  std::optional<InvolutiveDInvariants> y;        // converted to Y(Gamma)
  std::optional<InvolutiveDInvariants> y_direct;  // computed from the reversed plumbing
  std::optional<bool> orientation_identity;
  std::optional<bool> orientation_identity_d;  // d-invariants only
  std::optional<Verdict> zero_surgery;
  std::optional<Verdict> spin_filling;
  std::vector<std::string> notes;
};

std::string fnv1a64_hex(const std::string& text);

InvariantReport run_pipeline(const PlumbingGraph& gamma, const std::optional<PlumbingGraph>& gamma_reversed,
                             const PipelineOptions& opts = {});

// Full involutive computation on a root with an explicit even tower (b1 = 1) or alone (b1 = 0).
struct InvolutiveResult {
  HFModule hf;
  IotaModel iota;
  HFIModule hfi;
  InvolutiveDInvariants inv;
  HatDims hat;
};
InvolutiveResult involutive_from_branch(const Branch& b, const std::optional<Rational>& d_half_reversed);

}  // namespace plumbhf
