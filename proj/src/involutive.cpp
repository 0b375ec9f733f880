#include "plumbhf/involutive.hpp"

#include <stdexcept>

namespace plumbhf {

IotaModel iota_model(const HFModule& hf, const RootInvolution& j) {
  IotaModel im;
  im.base = hf;
  im.perm.resize(hf.module.size());
  // vertex -> basis index
  std::map<std::size_t, std::size_t> index;
  for (std::size_t i = 0; i < hf.vertex.size(); ++i)
    if (hf.vertex[i]) index[*hf.vertex[i]] = i;
  for (std::size_t i = 0; i < hf.vertex.size(); ++i) {
    if (!hf.vertex[i]) {
      im.perm[i] = i;
      continue;
    }
    std::size_t v = *hf.vertex[i];
    std::size_t u = v < j.perm.size() ? j.perm[v] : v;  // stem vertices added after the root was built are fixed
    auto it = index.find(u);
    if (it == index.end()) throw std::invalid_argument("iota_model: involution leaves the module basis");
    im.perm[i] = it->second;
  }
  for (std::size_t i = 0; i < im.perm.size(); ++i) {
    if (im.perm[im.perm[i]] != i) throw std::invalid_argument("iota_model: not an involution");
    if (hf.module.grading[im.perm[i]] != hf.module.grading[i])
      throw std::invalid_argument("iota_model: involution does not preserve grading");
  }
  return im;
}

HFIModule mapping_cone(const IotaModel& im) {
  const GradedModule& hf = im.base.module;
  std::size_t n = hf.size();
  auto rep = [&](std::size_t i) { return std::min(i, im.perm[i]); };
  HFIModule out;
  std::vector<std::size_t> ker_index(n, SIZE_MAX), coker_index(n, SIZE_MAX);
  GradedModule& m = out.module;
  auto add = [&](const Rational& gr, const std::string& name, bool q) {
    m.grading.push_back(gr);
    m.U.emplace_back();
    m.Q.emplace_back();
    m.label.push_back(name);
    out.q_part.push_back(q);
    return m.grading.size() - 1;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (rep(i) != i) continue;
    ker_index[i] = add(hf.grading[i] + 1, "ker(" + hf.label[i] + ")", false);
    coker_index[i] = add(hf.grading[i], "Q[" + hf.label[i] + "]", true);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rep(i) != i) continue;
    // U on the orbit sum
    F2Vec w(n);
    for (auto f : hf.U[i]) w.flip(f);
    if (im.perm[i] != i)
      for (auto f : hf.U[im.perm[i]]) w.flip(f);
    for (auto f = w.find_first(); f != F2Vec::npos; f = w.find_next(f))
      if (rep(f) == f) m.U[ker_index[i]].push_back(ker_index[f]);
    // U on the cokernel class
    F2Vec c(n);
    for (auto f : hf.U[i]) c.flip(rep(f));
    for (auto f = c.find_first(); f != F2Vec::npos; f = c.find_next(f)) m.U[coker_index[i]].push_back(coker_index[f]);
    // Q sends a fixed generator to its class and a pair sum to [e] + [e] = 0
    if (im.perm[i] == i) m.Q[ker_index[i]].push_back(coker_index[i]);
  }
  m.ceiling = hf.ceiling;
  m.stable_from = hf.stable_from + 1;
  return out;
}

namespace {

Rational first_in_class(const Rational& lo, const Rational& residue) {
  return residue + 2 * Rational(ceil_of((lo - residue) / 2));
}

Rational find_dbar(const GradedModule& m, const Rational& residue) {
  for (Rational r = first_in_class(m.min_grading(), residue); r <= m.reliable_ceiling(); r += 2)
    if (stable_image_q_dim(m, r) > 0) return r;
  throw std::logic_error("no Q tower found in residue class " + rational_to_string(residue));
}

Rational find_dlow(const GradedModule& m, const Rational& residue) {
  Rational cls = mod2(residue + 1);
  for (Rational r = first_in_class(m.min_grading(), cls); r <= m.reliable_ceiling(); r += 2)
    if (stable_image_dim(m, r) > stable_image_q_dim(m, r)) return r - 1;
  throw std::logic_error("no non-Q tower found in residue class " + rational_to_string(cls));
}

}  // namespace

InvolutiveDInvariants involutive_d(const HFIModule& hfi, const HFModule& hf) {
  InvolutiveDInvariants inv;
  inv.b1 = hf.b1;
  if (hf.b1 == 1) {
    if (!hf.even_bottom) throw PartialInput("involutive_d: the even tower is missing");
    Rational p(1, 2), q(3, 2);
    inv.d_plus = d_from_module(hf, p);
    inv.d_minus = d_from_module(hf, q);
    inv.dbar_plus = find_dbar(hfi.module, p);
    inv.dbar_minus = find_dbar(hfi.module, q);
    inv.dlow_plus = find_dlow(hfi.module, p);
    inv.dlow_minus = find_dlow(hfi.module, q);
  } else {
    Rational cls = mod2(hf.module.grading.front());
    inv.d = d_from_module(hf, cls);
    inv.dbar = find_dbar(hfi.module, cls);
    inv.dlow = find_dlow(hfi.module, cls);
  }
  return inv;
}

namespace {

std::vector<F2Vec> local_images(const GradedModule& m, const std::vector<std::size_t>& src,
                                const std::vector<std::size_t>& dst, bool apply_u, const std::vector<std::size_t>* perm) {
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t a = 0; a < dst.size(); ++a) pos[dst[a]] = a;
  std::vector<F2Vec> out;
  for (auto i : src) {
    F2Vec v(dst.size());
    if (apply_u) {
      for (auto f : m.U[i]) v.flip(pos.at(f));
    } else {
      v.flip(pos.at(i));
      v.flip(pos.at((*perm)[i]));
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

HatDims hfi_hat_dims(const IotaModel& im, const HFIModule& hfi) {
  const GradedModule& m = im.base.module;
  HatDims h;
  std::size_t rank_total = 0;
  Rational top = m.ceiling - 2;
  for (const auto& [r, dim] : m.graded_dims()) {
    if (r > top) continue;
    auto here = m.basis_in(r);
    auto below = m.basis_in(r - 2);
    auto above = m.basis_in(r + 2);
    // ker U in grading r and the rank of 1 + iota on it
    auto u_imgs = local_images(m, here, below, true, nullptr);
    auto kernel = f2_kernel(u_imgs, below.size());
    auto iota_imgs = local_images(m, here, here, false, &im.perm);
    std::vector<F2Vec> on_kernel;
    for (const auto& kv : kernel) {
      F2Vec acc(here.size());
      for (auto a = kv.find_first(); a != F2Vec::npos; a = kv.find_next(a)) acc ^= iota_imgs[a];
      on_kernel.push_back(acc);
    }
    // coker U in grading r and the rank of 1 + iota on it
    auto incoming = local_images(m, above, here, true, nullptr);
    std::size_t a = f2_rank(incoming);
    std::vector<F2Vec> both = incoming;
    both.insert(both.end(), iota_imgs.begin(), iota_imgs.end());
    std::size_t b = f2_rank(both);
    h.hf_hat_dim += kernel.size() + (dim - a);
    rank_total += f2_rank(on_kernel) + (b - a);
  }
  h.hfi_hat_dim = 2 * (h.hf_hat_dim - rank_total);
  const GradedModule& q = hfi.module;
  for (const auto& [r, dim] : q.graded_dims()) {
    if (r > q.ceiling - 2) continue;
    auto here = q.basis_in(r);
    auto below = q.basis_in(r - 2);
    auto above = q.basis_in(r + 2);
    auto u_imgs = local_images(q, here, below, true, nullptr);
    std::size_t ker = here.size() - f2_rank(u_imgs);
    std::size_t a = f2_rank(local_images(q, above, here, true, nullptr));
    h.model_hfi_hat_dim += ker + (dim - a);
  }
  return h;
}

HatDims hfi_hat_dims(const IotaModel& im) { return hfi_hat_dims(im, mapping_cone(im)); }

std::map<Rational, std::pair<std::size_t, std::size_t>> iota_kernel_cokernel(const IotaModel& im) {
  const GradedModule& m = im.base.module;
  std::map<Rational, std::pair<std::size_t, std::size_t>> out;
  for (const auto& [r, dim] : m.graded_dims()) {
    auto here = m.basis_in(r);
    std::size_t rank = f2_rank(local_images(m, here, here, false, &im.perm));
    out[r] = {dim - rank, dim - rank};
  }
  return out;
}

}  // namespace plumbhf
