#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plumbhf/root_module.hpp"

namespace plumbhf {

// HF module with an involution that permutes the basis (J0 on the odd part,
// identity on the even tower).
struct IotaModel {
  HFModule base;
  std::vector<std::size_t> perm;
};

IotaModel iota_model(const HFModule& hf, const RootInvolution& j);

inline constexpr const char* kStrictModelNote =
    "strict model: zero-differential HF+ with an exactly involutive iota; HFI is the homology of the "
    "cone of Q(1+iota)";

struct HFIModule {
  GradedModule module;
  std::vector<bool> q_part;  // true for the Q.coker(1+iota) summand
  std::string provenance = kStrictModelNote;
};

// HFI_r = ker(1+iota)_{r-1} + Q.coker(1+iota)_r with U acting diagonally and Q(x) = [x].
HFIModule mapping_cone(const IotaModel& im);

struct InvolutiveDInvariants {
  std::size_t b1 = 0;
  // b1 = 1: indices are the residues +1/2 and -1/2
  std::optional<Rational> d_plus, d_minus, dbar_plus, dbar_minus, dlow_plus, dlow_minus;
  // b1 = 0
  std::optional<Rational> d, dbar, dlow;
  std::optional<std::size_t> hf_hat_dim, hfi_hat_dim;
  bool partial = false;
};

// dbar in residue class p: first r = p mod 2 with a nonzero element of Im(U^n Q).
// dlow in class p: first r = p + 1 mod 2 with an element of Im(U^n) outside Im(U^n Q), minus 1.
InvolutiveDInvariants involutive_d(const HFIModule& hfi, const HFModule& hf);

struct HatDims {
  std::size_t hf_hat_dim = 0;
  std::size_t hfi_hat_dim = 0;
  // dim ker U + dim coker U read off the HFI model, for comparison with hfi_hat_dim
  std::size_t model_hfi_hat_dim = 0;
};

HatDims hfi_hat_dims(const IotaModel& im, const HFIModule& hfi);
HatDims hfi_hat_dims(const IotaModel& im);

// dims of ker(1+iota) and coker(1+iota) per grading, for the exactness check.
std::map<Rational, std::pair<std::size_t, std::size_t>> iota_kernel_cokernel(const IotaModel& im);

}  // namespace plumbhf
