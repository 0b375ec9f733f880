#include "plumbhf/obstruct.hpp"

#include <cstdio>
#include <stdexcept>

namespace plumbhf {

namespace {

Rational neg(const std::optional<Rational>& r) {
  if (!r) throw PartialInput("convert_orientation: invariant missing");
  return -*r;
}

const Rational& need(const std::optional<Rational>& r, const char* name) {
  if (!r) throw PartialInput(std::string("invariant missing: ") + name);
  return *r;
}

std::string show(const Rational& r) { return rational_to_string(r); }

}  // namespace

InvolutiveDInvariants convert_orientation(const InvolutiveDInvariants& inv) {
  if (inv.partial) throw PartialInput("convert_orientation: partial invariants");
  InvolutiveDInvariants out;
  out.b1 = inv.b1;
  out.hf_hat_dim = inv.hf_hat_dim;
  out.hfi_hat_dim = inv.hfi_hat_dim;
  if (inv.b1 == 1) {
    out.d_plus = neg(inv.d_minus);
    out.d_minus = neg(inv.d_plus);
    out.dlow_plus = neg(inv.dbar_minus);
    out.dlow_minus = neg(inv.dbar_plus);
    out.dbar_plus = neg(inv.dlow_minus);
    out.dbar_minus = neg(inv.dlow_plus);
  } else {
    out.d = neg(inv.d);
    out.dlow = neg(inv.dbar);
    out.dbar = neg(inv.dlow);
  }
  return out;
}

Verdict zero_surgery_check(const InvolutiveDInvariants& invY) {
  Verdict v;
  v.name = "zero-surgery obstruction";
  const Rational& a = need(invY.dlow_minus, "dlow_{-1/2}");
  const Rational& b = need(invY.dbar_plus, "dbar_{1/2}");
  std::string first = "-1/2 <= dlow_{-1/2}(Y) = " + show(a);
  std::string second = "dbar_{1/2}(Y) = " + show(b) + " <= 1/2";
  v.evaluated = {first, second};
  if (!(Rational(-1, 2) <= a)) v.failed.push_back(first);
  if (!(b <= Rational(1, 2))) v.failed.push_back(second);
  v.obstructed = !v.failed.empty();
  return v;
}

Verdict spin_filling_check(const InvolutiveDInvariants& invY) {
  Verdict v;
  v.name = "negative semi-definite spin filling obstruction";
  const Rational& a = need(invY.dlow_minus, "dlow_{-1/2}");
  const Rational& b = need(invY.dlow_plus, "dlow_{1/2}");
  std::string first = "dlow_{-1/2}(Y) = " + show(a) + " < -1/2";
  std::string second = "dlow_{1/2}(Y) = " + show(b) + " < 1/2";
  v.evaluated = {first, second};
  bool c1 = a < Rational(-1, 2);
  bool c2 = b < Rational(1, 2);
  if (!c1) v.failed.push_back(first);
  if (!c2) v.failed.push_back(second);
  v.obstructed = c1 && c2;
  return v;
}

BoundResult spin_filling_b2_bound(long long b2, bool restriction_trivial, const InvolutiveDInvariants& invY) {
  if (b2 < 0) throw std::invalid_argument("spin_filling_b2_bound: b2 must be non-negative");
  BoundResult r;
  Rational lhs, rhs;
  Rational limit;
  if (restriction_trivial) {
    const Rational& d = need(invY.dlow_minus, "dlow_{-1/2}");
    lhs = rat_of(b2 - 3);
    rhs = 4 * d;
    r.inequality = "b2 - 3 = " + show(lhs) + " <= 4 dlow_{-1/2}(Y) = " + show(rhs);
    limit = rhs + 3;
  } else {
    const Rational& d = need(invY.dlow_plus, "dlow_{1/2}");
    lhs = rat_of(b2 + 2);
    rhs = 4 * d;
    r.inequality = "b2 + 2 = " + show(lhs) + " <= 4 dlow_{1/2}(Y) = " + show(rhs);
    limit = rhs - 2;
  }
  r.consistent = lhs <= rhs;
  BigInt m = floor_of(limit);
  if (m >= 0) r.max_b2 = checked_ll(m);
  return r;
}

std::string status_name(InequalityStatus s) {
  switch (s) {
    case InequalityStatus::satisfied:
      return "satisfied";
    case InequalityStatus::violated:
      return "violated";
    case InequalityStatus::unevaluable:
      return "unevaluable";
  }
  return "unevaluable";
}

std::vector<InequalityRow> homology_cobordism_report(const InvolutiveDInvariants& invY, const std::optional<SphereInvariants>& M,
                                            const std::optional<SphereInvariants>& Mprime) {
  auto row = [](const std::string& lhs_name, const std::optional<Rational>& lhs, const std::string& rhs_name,
                const std::optional<Rational>& rhs) {
    InequalityRow r;
    r.statement = lhs_name + " - 1/2 <= " + rhs_name;
    if (lhs && rhs) {
      r.statement = lhs_name + " - 1/2 = " + show(*lhs - Rational(1, 2)) + " <= " + rhs_name + " = " + show(*rhs);
      r.status = (*lhs - Rational(1, 2) <= *rhs) ? InequalityStatus::satisfied : InequalityStatus::violated;
    }
    return r;
  };
  std::optional<Rational> none;
  return {
      row("dlow(M)", M ? M->dlow : none, "dlow_{-1/2}(Y)", invY.dlow_minus),
      row("dbar(M)", M ? M->dbar : none, "dbar_{-1/2}(Y)", invY.dbar_minus),
      row("dlow_{1/2}(Y)", invY.dlow_plus, "dlow(M')", Mprime ? Mprime->dlow : none),
      row("dbar_{1/2}(Y)", invY.dbar_plus, "dbar(M')", Mprime ? Mprime->dbar : none),
  };
}

std::string fnv1a64_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Branch compute_branch(const PlumbingGraph& g, const PipelineOptions& opts, bool use_spinc_option) {
  Branch b;
  b.graph = g;
  b.form = intersection_form(g);
  b.cls = classify(g);
  if (!b.cls.supported) {
    std::string why;
    for (const auto& f : b.cls.failures) why += (why.empty() ? "" : "; ") + f;
    throw UnsupportedInput("unsupported plumbing: " + why);
  }
  b.all_classes = torsion_selfconjugate_reps(b.form);
  if (use_spinc_option && opts.spinc) {
    b.spinc = make_spinc_class(*opts.spinc, b.form);
    if (!b.spinc.torsion || !b.spinc.self_conjugate)
      throw UnsupportedInput("the requested characteristic vector is not a self-conjugate torsion class");
  } else {
    if (b.all_classes.empty()) throw std::logic_error("no self-conjugate torsion class found");
    b.spinc = b.all_classes.front();
  }
  auto w = std::make_shared<const WeightFunction>(weight_function(b.form, b.spinc.representative));
  GradedRootOptions ro;
  ro.max_level = opts.max_level;
  ro.limits = opts.limits;
  b.root = std::make_shared<GradedRoot>(graded_root(w, g, ro));
  assign_gradings(*b.root, b.form, b.cls.b1);
  b.involution = involution_on_root(*b.root, *b.spinc.l0);
  std::string bad = check_involution(*b.root, b.involution);
  if (!bad.empty()) throw std::logic_error("root involution: " + bad);
  b.odd = u_module_from_root(*b.root, b.cls.b1);
  Rational residue = b.cls.b1 == 1 ? Rational(1, 2) : mod2(b.root->grading(0));
  b.odd_bottom = d_from_module(b.odd, residue);
  return b;
}

InvolutiveResult involutive_from_branch(const Branch& b, const std::optional<Rational>& d_half_reversed) {
  InvolutiveResult r;
  if (b.cls.b1 == 1) {
    if (!d_half_reversed) throw PartialInput("the reversed orientation d_{1/2} is required");
    r.hf = hf_assemble(*b.root, *d_half_reversed);
  } else {
    r.hf = u_module_from_root(*b.root, 0);
  }
  r.iota = iota_model(r.hf, b.involution);
  r.hfi = mapping_cone(r.iota);
  r.inv = involutive_d(r.hfi, r.hf);
  r.hat = hfi_hat_dims(r.iota, r.hfi);
  r.inv.hf_hat_dim = r.hat.hf_hat_dim;
  r.inv.hfi_hat_dim = r.hat.hfi_hat_dim;
  return r;
}

namespace {

bool same_values(const InvolutiveDInvariants& a, const InvolutiveDInvariants& b) {
  return a.d_plus == b.d_plus && a.d_minus == b.d_minus && a.dbar_plus == b.dbar_plus &&
         a.dbar_minus == b.dbar_minus && a.dlow_plus == b.dlow_plus && a.dlow_minus == b.dlow_minus && a.d == b.d &&
         a.dbar == b.dbar && a.dlow == b.dlow;
}

bool same_d(const InvolutiveDInvariants& a, const InvolutiveDInvariants& b) {
  return a.d_plus == b.d_plus && a.d_minus == b.d_minus && a.d == b.d;
}

void compare_orientations(InvariantReport& rep, const InvolutiveDInvariants& back) {
  rep.y_direct = back;
  rep.orientation_identity = same_values(*rep.y, back);
  rep.orientation_identity_d = same_d(*rep.y, back);
  if (!*rep.orientation_identity)
    rep.notes.push_back("the strict model on the reversed plumbing gives involutive values that differ from the "
                        "converted ones; verdicts use the converted values");
}

}  // namespace

InvariantReport run_pipeline(const PlumbingGraph& gamma, const std::optional<PlumbingGraph>& gamma_reversed,
                             const PipelineOptions& opts) {
  InvariantReport rep;
  rep.gamma_digest = fnv1a64_hex(gamma.to_json());
  rep.gamma = compute_branch(gamma, opts, true);
  if (gamma_reversed) {
    rep.gamma_reversed_digest = fnv1a64_hex(gamma_reversed->to_json());
    rep.reversed = compute_branch(*gamma_reversed, opts, false);
    if (rep.reversed->cls.h1.describe() != rep.gamma.cls.h1.describe())
      rep.notes.push_back("warning: H1 of the two plumbings differs (" + rep.gamma.cls.h1.describe() + " vs " +
                          rep.reversed->cls.h1.describe() + "), so they cannot present opposite orientations");
  }
  rep.notes.push_back(kStrictModelNote);
  std::size_t b1 = rep.gamma.cls.b1;
  if (b1 == 1) {
    std::optional<Rational> d_half_y;
    if (rep.reversed) {
      d_half_y = rep.reversed->odd_bottom;
    } else if (opts.d_half_override) {
      d_half_y = opts.d_half_override;
      rep.notes.push_back("d_{1/2}(Y) = " + rational_to_string(*d_half_y) +
                          " supplied by the user, not computed from a reversed plumbing");
    }
    if (!d_half_y) {
      rep.partial = true;
      rep.hf = rep.gamma.odd;
      rep.notes.push_back("partial: only the odd part of HF+(-Y) is available; supply --gamma-reversed or "
                          "--d-half-override for the even tower and the involutive invariants");
      return rep;
    }
    auto res = involutive_from_branch(rep.gamma, d_half_y);
    rep.hf = res.hf;
    rep.iota = res.iota;
    rep.hfi = res.hfi;
    rep.hat = res.hat;
    rep.minus_y = res.inv;
    rep.y = convert_orientation(res.inv);
    if (rep.reversed) {
      compare_orientations(rep, involutive_from_branch(*rep.reversed, rep.gamma.odd_bottom).inv);
    }
    rep.zero_surgery = zero_surgery_check(*rep.y);
    rep.spin_filling = spin_filling_check(*rep.y);
  } else {
    auto res = involutive_from_branch(rep.gamma, std::nullopt);
    rep.hf = res.hf;
    rep.iota = res.iota;
    rep.hfi = res.hfi;
    rep.hat = res.hat;
    rep.minus_y = res.inv;
    rep.y = convert_orientation(res.inv);
    if (rep.gamma.all_classes.size() > 1 && !opts.spinc)
      rep.notes.push_back("several self-conjugate classes; reporting the first (pick another with --spinc)");
    if (rep.reversed) {
      if (rep.gamma.all_classes.size() == 1 && rep.reversed->all_classes.size() == 1) {
        compare_orientations(rep, involutive_from_branch(*rep.reversed, std::nullopt).inv);
      } else {
        rep.notes.push_back("orientation identity not checked: class matching between the plumbings is ambiguous");
      }
    }
    rep.notes.push_back("zero-surgery verdicts need H1 = Z and are not evaluated for b1 = 0");
  }
  return rep;
}

}  // namespace plumbhf
