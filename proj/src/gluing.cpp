#include "resolvent/gluing.hpp"

#include "resolvent/errors.hpp"

namespace resolvent {

ExtElement epsilon(const Instance& inst) {
  const int r = static_cast<int>(inst.r()), s = static_cast<int>(inst.s());
  std::vector<int> rows0;
  for (int j = 0; j < r; ++j) rows0.push_back(j);
  ExtElement out;
  for (const auto& I : subsets_of_size(s, r)) {
    Subset K = complement(I, s);
    std::vector<int> cols0;
    for (int i : I) cols0.push_back(i - 1);
    Poly m = inst.R->normal_form(minor(inst, rows0, cols0).scaled(std::int64_t{parity_sign(subset_sum(K))}));
    if (!m.is_zero()) out[K] = std::move(m);
  }
  return out;
}

std::vector<Poly> dual_coordinates(const ExtElement& word, const FreeMod& module, const PolyCtxPtr& ring) {
  std::vector<Poly> v(module.rank(), Poly(ring));
  for (const auto& [K, p] : word) {
    auto idx = module.index_of(subset_tag(K), true);
    if (!idx) throw ConstructionError("dual label " + subset_tag(K) + " missing from module");
    v[*idx] = p.scaled(std::int64_t{reversal_sign(static_cast<int>(K.size()))});
  }
  return v;
}

KernelCheck check_horizontal_kernel(const Instance& inst, const DualTate& Fd, const ExtElement& eps) {
  const int g = inst.grade();
  const HomogMatrix& d = Fd.d.at(-g);
  auto v = dual_coordinates(eps, d.cols(), inst.ring);
  KernelCheck out;
  for (std::size_t r = 0; r < d.nrows(); ++r) {
    Poly acc(inst.ring);
    for (std::size_t c = 0; c < d.ncols(); ++c)
      if (!d.at(r, c).is_zero() && !v[c].is_zero()) acc += d.at(r, c) * v[c];
    acc = inst.R->normal_form(acc);
    if (!acc.is_zero()) {
      out.ok = false;
      out.nonzero.push_back({d.rows()[r].display(), acc});
    }
  }
  return out;
}

std::optional<Action> module_action(const TateLabel& a, const TateLabel& lambda) {
  if (!is_subset(a.ext, lambda.ext)) return std::nullopt;
  if (a.div.size() != lambda.div.size()) throw ConstructionError("module action on labels of different shapes");
  std::int64_t coeff = 1;
  TateLabel out{difference(lambda.ext, a.ext), lambda.div};
  for (std::size_t j = 0; j < a.div.size(); ++j) {
    if (a.div[j] > lambda.div[j]) return std::nullopt;
    coeff *= binomial(lambda.div[j], a.div[j]);
    out.div[j] -= a.div[j];
  }
  coeff *= *merge_sign(a.ext, out.ext);
  return Action{coeff, out};
}

GradedComplex gluing_target(const Instance& inst, const TateResolution& F) {
  return twist(dual(*F.complex), inst.twist());
}

ChainMap gluing_map(const Instance& inst, const TateResolution& F, const ComplexPtr& target, const ExtElement& eps,
                    bool unsigned_) {
  const int g = inst.grade();
  const std::vector<int> zeros(inst.r(), 0);
  ChainMap v{F.complex, target, -g, {}};
  for (int n = 0; n <= std::min(g, F.top); ++n) {
    const FreeMod& rows = target->module(n - g);
    HomogMatrix m(inst.R, rows, F.complex->module(n));
    const std::int64_t global = unsigned_ ? 1 : parity_sign(static_cast<long long>(n) * (g - 1));
    const auto& labels = F.labels.at(n);
    for (std::size_t c = 0; c < labels.size(); ++c)
      for (const auto& [K, p] : eps) {
        auto act = module_action(labels[c], TateLabel{K, zeros});
        if (!act) continue;
        auto r = rows.index_of(act->label.tag(), true);
        if (!r) throw ConstructionError("gluing lands outside F*: " + act->label.tag());
        const int sign = reversal_sign(static_cast<int>(act->label.ext.size()));
        m.add_to(*r, c, p.scaled(global * act->coeff * sign));
      }
    v.comps.emplace(n, std::move(m));
  }
  return v;
}

OmegaCheck check_omega_transpose(const Instance& inst, const ChainMap& v) {
  const int g = inst.grade();
  OmegaCheck out;
  for (int j = 0; j <= g; ++j) {
    const HomogMatrix& a = v.comps.at(g - j);
    HomogMatrix t = v.comps.at(j).transpose();
    if (a == t) out.agree_plus.push_back(j);
    if (a == -t) out.agree_minus.push_back(j);
  }
  const std::size_t all = static_cast<std::size_t>(g) + 1;
  if (out.agree_plus.size() == all)
    out.sigma = 1;
  else if (out.agree_minus.size() == all)
    out.sigma = -1;
  return out;
}

std::pair<int, int> phi_signs(int n, int sigma) {
  const bool even = ((n % 2) + 2) % 2 == 0;
  if (sigma > 0) return even ? std::make_pair(-1, 1) : std::make_pair(1, -1);
  return even ? std::make_pair(1, 1) : std::make_pair(-1, -1);
}

ChainMap self_duality_iso(const Instance& inst, const ComplexPtr& T, int sigma) {
  const int g = inst.grade();
  auto target = std::make_shared<GradedComplex>(twist(shift(dual(*T), g - 1), inst.twist()));
  ChainMap phi{T, target, 0, {}};
  for (int n = T->lo(); n <= T->hi(); ++n) {
    const FreeMod& src = T->module(n);
    const FreeMod& tgt = target->module(n);
    if (src.rank() != tgt.rank()) throw ConstructionError("T and its shifted dual differ in rank at " + std::to_string(n));
    auto [a, b] = phi_signs(n, sigma);
    HomogMatrix m(inst.R, tgt, src);
    for (std::size_t c = 0; c < src.rank(); ++c) {
      auto r = tgt.index_of(src[c].tag, src[c].dual);
      if (!r) throw ConstructionError("no partner for " + src[c].display() + " in the shifted dual");
      m.set(*r, c, Poly::constant(inst.ring, src[c].dual ? b : a));
    }
    phi.comps.emplace(n, std::move(m));
  }
  return phi;
}

bool is_signed_permutation(const HomogMatrix& m) {
  if (m.nrows() != m.ncols()) return false;
  std::vector<int> row_hits(m.nrows(), 0);
  const Coeff p = m.ring()->base()->prime();
  for (std::size_t c = 0; c < m.ncols(); ++c) {
    int hits = 0;
    for (std::size_t r = 0; r < m.nrows(); ++r) {
      const Poly& e = m.at(r, c);
      if (e.is_zero()) continue;
      if (e.size() != 1 || !e.leading().mono.is_one()) return false;
      Coeff v = e.leading().coeff;
      if (v != 1 && v != p - 1) return false;
      ++hits;
      ++row_hits[r];
    }
    if (hits != 1) return false;
  }
  for (int h : row_hits)
    if (h != 1) return false;
  return true;
}

std::optional<UnitEntry> minimality_check(const GradedComplex& c) {
  for (const auto& [n, d] : c.diffs())
    if (auto u = d.unit_entry()) return UnitEntry{n, d.rows()[u->first].display(), d.cols()[u->second].display()};
  return std::nullopt;
}

std::vector<int> check_tail_agreement(const Instance& inst, const TateResolution& F, const GradedComplex& Fstar,
                                      const GradedComplex& C, const std::map<int, std::size_t>& target_block_size) {
  const int g = inst.grade();
  std::vector<int> bad;
  for (int n = C.lo() + 1; n <= C.hi(); ++n) {
    const HomogMatrix& D = C.diff(n);
    const std::size_t yr = target_block_size.at(n - 1), yc = target_block_size.at(n);
    bool ok = true;
    if (n >= g) {
      if (yc != 0 || (n > g && yr != 0) || n > F.top) {
        ok = false;
      } else {
        const HomogMatrix& d = F.complex->diff(n);
        for (std::size_t r = 0; r < d.nrows() && ok; ++r)
          for (std::size_t c = 0; c < d.ncols() && ok; ++c)
            if (D.at(yr + r, c) != -d.at(r, c)) ok = false;
      }
    } else if (n <= -1) {
      const int m = n + 1 - g;
      if (!Fstar.has_diff(m) || D.nrows() != yr || D.ncols() != yc) {
        ok = false;
      } else {
        const HomogMatrix& d = Fstar.diff(m);
        for (std::size_t r = 0; r < d.nrows() && ok; ++r)
          for (std::size_t c = 0; c < d.ncols() && ok; ++c)
            if (D.at(r, c) != d.at(r, c)) ok = false;
      }
    }
    if (!ok) bad.push_back(n);
  }
  return bad;
}

SelfDualResolution build_self_dual_resolution(const Instance& inst, int H) {
  const int g = inst.grade();
  if (H < g + 1) throw ConstructionError("window half-width must be at least g + 1");
  SelfDualResolution out;
  out.H = H;
  out.F = tate_resolution(inst, H);
  out.Fd = dual_tate(inst, out.F);
  out.Fstar = std::make_shared<GradedComplex>(gluing_target(inst, out.F));
  out.eps = epsilon(inst);
  out.v = gluing_map(inst, out.F, out.Fstar, out.eps);
  out.v_report = verify_chain_map(out.v);
  if (!out.v_report.ok())
    throw ChainMapError("gluing map fails the commuting square at index " +
                        std::to_string(out.v_report.failures.front().index));
  out.omega = check_omega_transpose(inst, out.v);
  if (!out.omega.sigma) throw ConstructionError("omega_{g-j} = +-omega_j^T fails to hold with a uniform sign");
  auto cone_complex = cone(out.v, g - 1 - H, H);
  out.T = std::make_shared<GradedComplex>(std::move(cone_complex.complex));
  out.target_block_size = std::move(cone_complex.target_block_size);
  out.phi = self_duality_iso(inst, out.T, *out.omega.sigma);
  out.phi_report = verify_chain_map(out.phi);
  return out;
}

}  // namespace resolvent
