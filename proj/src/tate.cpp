#include "resolvent/tate.hpp"

#include "resolvent/errors.hpp"

namespace resolvent {

int TateLabel::weight() const {
  int w = 0;
  for (int e : div) w += e;
  return w;
}

std::string TateLabel::tag() const {
  std::string t = ext.empty() ? "" : subset_tag(ext);
  for (std::size_t j = 0; j < div.size(); ++j) {
    if (div[j] == 0) continue;
    t += "T" + std::to_string(j + 1);
    if (div[j] > 1) t += "^(" + std::to_string(div[j]) + ")";
  }
  return t.empty() ? "1" : t;
}

int tate_internal_degree(const Instance& inst, const TateLabel& l) {
  int d = 0;
  for (int i : l.ext) d += inst.g_degrees[i - 1];
  for (std::size_t j = 0; j < l.div.size(); ++j) d += l.div[j] * inst.f_degrees[j];
  return d;
}

namespace {

void compositions(int r, int w, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == r - 1) {
    cur.push_back(w);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = w; a >= 0; --a) {
    cur.push_back(a);
    compositions(r, w - a, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> multi_indices(int r, int w) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  compositions(r, w, cur, out);
  return out;
}

void accumulate(TateElement& x, const TateLabel& l, const Poly& p, const QuotientCtx& ring) {
  auto it = x.find(l);
  Poly v = ring.normal_form(it == x.end() ? p : it->second + p);
  if (v.is_zero()) {
    if (it != x.end()) x.erase(it);
  } else {
    x[l] = std::move(v);
  }
}

FreeMod tate_module(const Instance& inst, const std::vector<TateLabel>& labels) {
  std::vector<BasisLabel> b;
  for (const auto& l : labels) b.push_back({l.tag(), tate_internal_degree(inst, l), false});
  return FreeMod(std::move(b));
}

}  // namespace

std::vector<TateLabel> tate_basis(int s, int r, int n) {
  std::vector<TateLabel> out;
  for (int w = 0; 2 * w <= n; ++w) {
    int k = n - 2 * w;
    if (k > s) continue;
    auto subs = subsets_of_size(s, k);
    auto mis = multi_indices(r, w);
    for (const auto& S : subs)
      for (const auto& e : mis) out.push_back({S, e});
  }
  return out;
}

std::int64_t tate_rank_formula(int s, int r, int n) {
  if (n < 0) return 0;
  // (1+t)^s times sum_u C(u+r-1, r-1) t^{2u}
  std::int64_t total = 0;
  for (int u = 0; 2 * u <= n; ++u) total += binomial(s, n - 2 * u) * binomial(u + r - 1, r - 1);
  return total;
}

TateElement tate_product(const TateElement& a, const TateElement& b, const Instance& inst) {
  TateElement out;
  for (const auto& [la, pa] : a)
    for (const auto& [lb, pb] : b) {
      auto sign = merge_sign(la.ext, lb.ext);
      if (!sign) continue;
      std::int64_t c = *sign;
      TateLabel l{merged(la.ext, lb.ext), la.div};
      for (std::size_t j = 0; j < l.div.size(); ++j) {
        c *= binomial(la.div[j] + lb.div[j], la.div[j]);
        c %= static_cast<std::int64_t>(inst.ring->prime());
        l.div[j] += lb.div[j];
      }
      accumulate(out, l, (pa * pb).scaled(c), *inst.R);
    }
  return out;
}

TateElement tate_boundary(const TateElement& x, const Instance& inst) {
  TateElement out;
  const int s = static_cast<int>(inst.s());
  for (const auto& [l, p] : x) {
    const Subset& S = l.ext;
    for (std::size_t u = 0; u < S.size(); ++u) {
      TateLabel t{S, l.div};
      t.ext.erase(t.ext.begin() + u);
      Poly term = p * inst.g[S[u] - 1];
      accumulate(out, t, u % 2 == 0 ? term : -term, *inst.R);
    }
    const std::int64_t outer = parity_sign(static_cast<long long>(S.size()));
    for (std::size_t j = 0; j < l.div.size(); ++j) {
      if (l.div[j] == 0) continue;
      for (int i = 1; i <= s; ++i) {
        auto sign = merge_sign(S, {i});
        if (!sign || inst.A[j][i - 1].is_zero()) continue;
        TateLabel t{merged(S, {i}), l.div};
        --t.div[j];
        accumulate(out, t, (p * inst.A[j][i - 1]).scaled(outer * *sign), *inst.R);
      }
    }
  }
  return out;
}

TateResolution tate_resolution(const Instance& inst, int top) {
  if (top < 0) throw ConstructionError("Tate window must be non-negative");
  if (static_cast<int>(inst.ring->prime()) <= top / 2)
    throw ConstructionError("prime " + std::to_string(inst.ring->prime()) +
                            " is too small for divided powers up to weight " + std::to_string(top / 2));
  const int s = static_cast<int>(inst.s()), r = static_cast<int>(inst.r());
  TateResolution F;
  F.top = top;
  std::map<int, FreeMod> mods;
  std::map<int, std::map<TateLabel, std::size_t>> index;
  for (int n = 0; n <= top; ++n) {
    F.labels[n] = tate_basis(s, r, n);
    mods.emplace(n, tate_module(inst, F.labels[n]));
    for (std::size_t k = 0; k < F.labels[n].size(); ++k) index[n][F.labels[n][k]] = k;
  }
  std::map<int, HomogMatrix> diffs;
  for (int n = 1; n <= top; ++n) {
    HomogMatrix V(inst.R, mods.at(n - 1), mods.at(n));
    HomogMatrix H(inst.R, mods.at(n - 1), mods.at(n));
    const auto& lower = index[n - 1];
    for (std::size_t c = 0; c < F.labels[n].size(); ++c) {
      const TateLabel& l = F.labels[n][c];
      const Subset& S = l.ext;
      for (std::size_t u = 0; u < S.size(); ++u) {
        TateLabel t{S, l.div};
        t.ext.erase(t.ext.begin() + u);
        const Poly& g = inst.g[S[u] - 1];
        V.set(lower.at(t), c, u % 2 == 0 ? g : -g);
      }
      const std::int64_t outer = parity_sign(static_cast<long long>(S.size()));
      for (int j = 0; j < r; ++j) {
        if (l.div[j] == 0) continue;
        for (int i = 1; i <= s; ++i) {
          auto sign = merge_sign(S, {i});
          if (!sign || inst.A[j][i - 1].is_zero()) continue;
          TateLabel t{merged(S, {i}), l.div};
          --t.div[j];
          H.add_to(lower.at(t), c, inst.A[j][i - 1].scaled(outer * *sign));
        }
      }
    }
    diffs.emplace(n, V + H);
    F.vertical.emplace(n, std::move(V));
    F.horizontal.emplace(n, std::move(H));
  }
  F.complex = std::make_shared<GradedComplex>(inst.R, 0, top, std::move(mods), std::move(diffs), true, false);
  return F;
}

DualTate dual_tate(const Instance& inst, const TateResolution& F) {
  DualTate out;
  auto D = std::make_shared<GradedComplex>(dual(*F.complex));
  out.complex = D;
  const int s = static_cast<int>(inst.s()), r = static_cast<int>(inst.r());
  for (int m = D->lo() + 1; m <= D->hi(); ++m) {
    const int n = -m;  // columns are (F_n)*, rows (F_{n+1})*
    const FreeMod& cols = D->module(m);
    const FreeMod& rows = D->module(m - 1);
    HomogMatrix mu(inst.R, rows, cols), dd(inst.R, rows, cols);
    for (std::size_t c = 0; c < F.labels.at(n).size(); ++c) {
      const TateLabel& l = F.labels.at(n)[c];
      const Subset& K = l.ext;
      const int k = static_cast<int>(K.size());
      // word dg*_K T*^e times dg*_i on the right
      for (int i = 1; i <= s; ++i) {
        auto sign = merge_sign(K, {i});
        if (!sign) continue;
        TateLabel t{merged(K, {i}), l.div};
        std::int64_t coef = reversal_sign(k) * reversal_sign(k + 1) * *sign;
        mu.set(*rows.index_of(t.tag(), true), c, inst.g[i - 1].scaled(coef));
      }
      // right contraction of dg*_i, times sum_j a_{ji} T*_j
      for (int pos = 1; pos <= k; ++pos) {
        TateLabel base{K, l.div};
        base.ext.erase(base.ext.begin() + (pos - 1));
        std::int64_t coef = reversal_sign(k) * reversal_sign(k - 1) * parity_sign(k - pos);
        for (int j = 0; j < r; ++j) {
          const Poly& a = inst.A[j][K[pos - 1] - 1];
          if (a.is_zero()) continue;
          TateLabel t = base;
          ++t.div[j];
          dd.add_to(*rows.index_of(t.tag(), true), c, a.scaled(coef));
        }
      }
    }
    out.mu_x.emplace(m, std::move(mu));
    out.d.emplace(m, std::move(dd));
  }
  return out;
}

DualTateCheck check_dual_tate(const TateResolution& F, const DualTate& Fd) {
  DualTateCheck chk;
  for (const auto& [m, mu] : Fd.mu_x) {
    const int n = 1 - m;
    bool v = mu == F.vertical.at(n).transpose();
    bool h = Fd.d.at(m) == F.horizontal.at(n).transpose();
    if (!v) chk.mu_x_is_vertical_transpose = false;
    if (!h) chk.d_is_horizontal_transpose = false;
    if (!v || !h) chk.mismatches.push_back(m);
  }
  return chk;
}

}  // namespace resolvent
