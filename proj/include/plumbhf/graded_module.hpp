#pragma once

#include <map>
#include <string>
#include <vector>

#include "plumbhf/f2.hpp"
#include "plumbhf/types.hpp"

namespace plumbhf {

// Finite truncation of a graded F_2 module with operators U (degree -2) and
// optionally Q (degree -1). Operators are stored as images of basis vectors,
// each image a list of basis indices summed mod 2.
//
// Every basis element with grading <= ceiling is present. Above `stable_from`
// the module is a sum of towers, so stabilized images can be read below
// ceiling - 2 * (stabilization exponent + 1).
struct GradedModule {
  std::vector<Rational> grading;
  std::vector<std::vector<std::size_t>> U;
  std::vector<std::vector<std::size_t>> Q;  // empty when the module has no Q action
  std::vector<std::string> label;
  Rational ceiling = 0;
  Rational stable_from = 0;

  std::size_t size() const { return grading.size(); }
  bool has_q() const { return !Q.empty(); }
  std::size_t add(const Rational& gr, std::string name = {});

  F2Vec apply_u(const F2Vec& v) const;
  F2Vec apply_q(const F2Vec& v) const;
  F2Vec unit(std::size_t i) const;

  std::vector<std::size_t> basis_in(const Rational& r) const;
  Rational min_grading() const;
  std::map<Rational, std::size_t> graded_dims() const;
  // n* = (stable_from - min grading)/2 + 1
  long long stabilization_exponent() const;
  // Highest grading at which stabilized image data is trusted.
  Rational reliable_ceiling() const;
};

// dim (U^n M) in grading r.
std::size_t image_dim(const GradedModule& m, long long n, const Rational& r);
// dim (U^n Q M) in grading r.
std::size_t image_q_dim(const GradedModule& m, long long n, const Rational& r);
// Stabilized versions, evaluated at n* and n*+1 and required to agree.
std::size_t stable_image_dim(const GradedModule& m, const Rational& r);
std::size_t stable_image_q_dim(const GradedModule& m, const Rational& r);

// Bottom gradings of towers whose gradings are congruent to `residue` mod 2,
// one entry per tower (with repetition), read below the reliable ceiling.
std::vector<Rational> tower_bottoms(const GradedModule& m, const Rational& residue);

// dim ker(U^i) in grading r.
std::size_t kernel_power_dim(const GradedModule& m, long long i, const Rational& r);

// Isomorphism invariant of a truncated F[U]-module: dims of ker U^i in each grading,
// for i = 1..max_power and gradings up to `limit`.
std::map<std::pair<Rational, long long>, std::size_t> kernel_profile(const GradedModule& m, long long max_power,
                                                                      const Rational& limit);

// Checks that U lowers grading by 2, Q by 1, Q^2 = 0 and UQ = QU on basis elements
// whose images stay inside the truncation. Returns an empty string on success.
std::string check_module(const GradedModule& m);

}  // namespace plumbhf
