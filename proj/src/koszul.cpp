#include "resolvent/koszul.hpp"

#include <algorithm>

#include "resolvent/errors.hpp"

namespace resolvent {

namespace {

std::vector<int> degrees_of(const std::vector<Poly>& seq) {
  std::vector<int> d;
  for (const auto& p : seq) {
    auto h = p.homogeneous_degree();
    if (!h) throw ConstructionError("Koszul sequence entries must be nonzero and homogeneous");
    d.push_back(*h);
  }
  return d;
}

void accumulate(ExtElement& x, const Subset& s, const Poly& p, const QuotientCtx& ring) {
  auto it = x.find(s);
  Poly v = ring.normal_form(it == x.end() ? p : it->second + p);
  if (v.is_zero()) {
    if (it != x.end()) x.erase(it);
  } else {
    x[s] = std::move(v);
  }
}

}  // namespace

ExtElement wedge(const ExtElement& a, const ExtElement& b, const QuotientCtx& ring) {
  ExtElement out;
  for (const auto& [s, p] : a)
    for (const auto& [t, q] : b) {
      auto sign = merge_sign(s, t);
      if (!sign) continue;
      accumulate(out, merged(s, t), (p * q).scaled(std::int64_t{*sign}), ring);
    }
  return out;
}

BasisLabel koszul_label(const Subset& s, const std::vector<int>& degrees) {
  int d = 0;
  for (int i : s) d += degrees[i - 1];
  return {subset_tag(s), d, false};
}

GradedComplex koszul_complex(const std::vector<Poly>& seq, const QuotientPtr& ring) {
  if (seq.empty()) throw ConstructionError("Koszul complex of an empty sequence");
  const auto degs = degrees_of(seq);
  const int s = static_cast<int>(seq.size());
  std::map<int, FreeMod> mods;
  std::map<int, std::vector<Subset>> subs;
  for (int l = 0; l <= s; ++l) {
    subs[l] = subsets_of_size(s, l);
    std::vector<BasisLabel> b;
    for (const auto& S : subs[l]) b.push_back(koszul_label(S, degs));
    mods.emplace(l, FreeMod(std::move(b)));
  }
  std::map<int, HomogMatrix> diffs;
  for (int l = 1; l <= s; ++l) {
    HomogMatrix d(ring, mods.at(l - 1), mods.at(l));
    const auto& lower = subs[l - 1];
    for (std::size_t c = 0; c < subs[l].size(); ++c) {
      const Subset& S = subs[l][c];
      for (std::size_t u = 0; u < S.size(); ++u) {
        Subset rest = S;
        rest.erase(rest.begin() + u);
        std::size_t r = std::lower_bound(lower.begin(), lower.end(), rest) - lower.begin();
        const Poly& g = seq[S[u] - 1];
        d.set(r, c, u % 2 == 0 ? g : -g);
      }
    }
    diffs.emplace(l, std::move(d));
  }
  return GradedComplex(ring, 0, s, std::move(mods), std::move(diffs), true, true);
}

ExtElement koszul_boundary(const ExtElement& x, const std::vector<Poly>& seq, const QuotientCtx& ring) {
  ExtElement out;
  for (const auto& [S, p] : x)
    for (std::size_t u = 0; u < S.size(); ++u) {
      Subset rest = S;
      rest.erase(rest.begin() + u);
      Poly term = p * seq[S[u] - 1];
      accumulate(out, rest, u % 2 == 0 ? term : -term, ring);
    }
  return out;
}

std::vector<KoszulCycle> koszul_homology_basis(const Instance& inst, int l) {
  std::vector<KoszulCycle> out;
  const int r = static_cast<int>(inst.r()), s = static_cast<int>(inst.s());
  if (l < 0) throw ConstructionError("negative Koszul degree");
  if (l > r) return out;
  const auto& R = *inst.R;
  for (const auto& J : subsets_of_size(r, l)) {
    KoszulCycle cyc;
    cyc.rows = J;
    for (int j : J) cyc.degree += inst.f_degrees[j - 1];
    std::vector<int> rows0;
    for (int j : J) rows0.push_back(j - 1);
    for (const auto& I : subsets_of_size(s, l)) {
      std::vector<int> cols0;
      for (int i : I) cols0.push_back(i - 1);
      accumulate(cyc.element, I, minor(inst, rows0, cols0), R);
    }
    if (!koszul_boundary(cyc.element, inst.g, R).empty())
      throw ConstructionError("minor element for rows " + subset_tag(J) + " is not a Koszul cycle");
    out.push_back(std::move(cyc));
  }
  return out;
}

HomogMatrix koszul_self_duality_matrix(const Instance& inst, int j, const GradedComplex& koszul,
                                       const GradedComplex& target) {
  const int s = static_cast<int>(inst.s());
  const FreeMod& src = koszul.module(j);
  const FreeMod& tgt = target.module(j - s);
  HomogMatrix m(inst.R, tgt, src);
  for (const auto& I : subsets_of_size(s, j)) {
    Subset K = complement(I, s);
    int sign = parity_sign(j * (s - j) + subset_sum(K));
    auto c = src.index_of(subset_tag(I), false);
    auto r = tgt.index_of(subset_tag(K), true);
    m.set(*r, *c, Poly::constant(inst.ring, sign));
  }
  return m;
}

KoszulSelfDuality koszul_self_duality(const Instance& inst) {
  const int s = static_cast<int>(inst.s());
  int total = 0;
  for (int d : inst.g_degrees) total += d;
  auto K = std::make_shared<GradedComplex>(koszul_complex(inst.g, inst.R));
  auto T = std::make_shared<GradedComplex>(twist(dual(*K), total));
  KoszulSelfDuality out;
  out.koszul = K;
  out.target = T;
  out.raw = {K, T, -s, {}};
  out.corrected = {K, T, -s, {}};
  for (int j = 0; j <= s; ++j) {
    HomogMatrix m = koszul_self_duality_matrix(inst, j, *K, *T);
    out.corrected.comps.emplace(j, m.scaled(std::int64_t{parity_sign(s * j)}));
    out.raw.comps.emplace(j, std::move(m));
  }
  return out;
}

bool is_koszul_cocycle(const Instance& inst, const ExtElement& x) {
  const int s = static_cast<int>(inst.s());
  const int g = inst.grade();
  for (const auto& L : subsets_of_size(s, g + 1)) {
    Poly acc(inst.ring);
    for (std::size_t u = 0; u < L.size(); ++u) {
      Subset rest = L;
      rest.erase(rest.begin() + u);
      auto it = x.find(rest);
      if (it == x.end()) continue;
      Poly term = inst.g[L[u] - 1] * it->second;
      acc = u % 2 == 0 ? acc + term : acc - term;
    }
    if (!inst.R->contains(acc)) return false;
  }
  return true;
}

ExtElement koszul_cohomology_generator(const Instance& inst) {
  const int r = static_cast<int>(inst.r()), s = static_cast<int>(inst.s());
  const int g = inst.grade();
  std::vector<int> rows0;
  for (int j = 0; j < r; ++j) rows0.push_back(j);
  ExtElement out;
  for (const auto& I : subsets_of_size(s, r)) {
    Subset K = complement(I, s);
    std::vector<int> cols0;
    for (int i : I) cols0.push_back(i - 1);
    Poly m = minor(inst, rows0, cols0).scaled(std::int64_t{parity_sign(r * g + subset_sum(K))});
    accumulate(out, K, m, *inst.R);
  }
  if (!is_koszul_cocycle(inst, out)) throw ConstructionError("Koszul cohomology generator is not a cocycle");
  return out;
}

nlohmann::ordered_json ext_element_json(const ExtElement& x) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [S, p] : x) j[subset_tag(S)] = p.to_string();
  return j;
}

}  // namespace resolvent
