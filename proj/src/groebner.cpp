#include "resolvent/groebner.hpp"

#include <algorithm>
#include <deque>

#include "resolvent/errors.hpp"

namespace resolvent {

Poly reduce_by(const Poly& f, const std::vector<Poly>& basis) {
  if (f.is_zero() || basis.empty()) return f;
  const auto& ctx = f.ctx();
  std::vector<Term> remainder;
  Poly p = f;
  while (!p.is_zero()) {
    const Term& lt = p.leading();
    const Poly* div = nullptr;
    for (const auto& g : basis) {
      if (g.leading().mono.divides(lt.mono)) {
        div = &g;
        break;
      }
    }
    if (!div) {
      remainder.push_back(lt);
      p = p - Poly::monomial(ctx, lt.mono, lt.coeff);
      continue;
    }
    Coeff c = ctx->mul(lt.coeff, ctx->inv(div->leading().coeff));
    p = p.minus_multiple(*div, div->leading().mono.quotient_of(lt.mono), c);
  }
  return Poly::from_terms(ctx, std::move(remainder));
}

Poly s_polynomial(const Poly& a, const Poly& b) {
  const auto& ctx = a.ctx();
  Monomial l = a.leading().mono.lcm(b.leading().mono);
  Poly left = a.times(a.leading().mono.quotient_of(l), ctx->inv(a.leading().coeff));
  Poly right = b.times(b.leading().mono.quotient_of(l), ctx->inv(b.leading().coeff));
  return left - right;
}

namespace {

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

std::vector<Poly> interreduce(std::vector<Poly> basis) {
  // Drop elements whose leading monomial is divisible by another one's.
  std::sort(basis.begin(), basis.end(),
            [](const Poly& a, const Poly& b) { return grevlex_cmp(a.leading().mono, b.leading().mono) < 0; });
  std::vector<Poly> minimal;
  for (const auto& g : basis) {
    bool redundant = false;
    for (const auto& h : minimal)
      if (h.leading().mono.divides(g.leading().mono)) redundant = true;
    if (!redundant) minimal.push_back(g.monic());
  }
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t k = 0; k < minimal.size(); ++k)
      if (k != i) others.push_back(minimal[k]);
    // Leading term survives: no other leading monomial divides it.
    Poly tail = minimal[i] - Poly::monomial(minimal[i].ctx(), minimal[i].leading().mono, minimal[i].leading().coeff);
    minimal[i] = Poly::monomial(minimal[i].ctx(), minimal[i].leading().mono, 1) + reduce_by(tail, others);
  }
  return minimal;
}

}  // namespace

std::vector<Poly> groebner(const std::vector<Poly>& gens) {
  std::vector<Poly> basis;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    if (!basis.empty() && basis.front().ctx() != g.ctx()) throw ContextError("generators from different rings");
    basis.push_back(g.monic());
  }
  if (basis.empty()) return basis;

  std::deque<Pair> pairs;
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.push_back({i, j, basis[i].leading().mono.lcm(basis[j].leading().mono)});

  while (!pairs.empty()) {
    // Normal strategy: smallest lcm first (degree-by-degree for homogeneous input).
    auto it = std::min_element(pairs.begin(), pairs.end(),
                               [](const Pair& a, const Pair& b) { return grevlex_cmp(a.lcm, b.lcm) < 0; });
    Pair pr = *it;
    pairs.erase(it);
    const auto& mi = basis[pr.i].leading().mono;
    const auto& mj = basis[pr.j].leading().mono;
    if (mi.coprime(mj)) continue;  // Buchberger's first criterion
    // Chain criterion: some k with lt_k | lcm and both pairs (i,k), (j,k) already treated.
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!basis[k].leading().mono.divides(pr.lcm)) continue;
      auto pending = [&](std::size_t a, std::size_t b) {
        auto lo = std::min(a, b), hi = std::max(a, b);
        return std::any_of(pairs.begin(), pairs.end(), [&](const Pair& q) { return q.i == lo && q.j == hi; });
      };
      if (!pending(pr.i, k) && !pending(pr.j, k)) chain = true;
    }
    if (chain) continue;
    Poly s = reduce_by(s_polynomial(basis[pr.i], basis[pr.j]), basis);
    if (s.is_zero()) continue;
    basis.push_back(s.monic());
    std::size_t n = basis.size() - 1;
    for (std::size_t i = 0; i < n; ++i) pairs.push_back({i, n, basis[i].leading().mono.lcm(basis[n].leading().mono)});
  }
  return interreduce(std::move(basis));
}

// -------------------------------------------------------------- QuotientCtx

std::shared_ptr<const QuotientCtx> QuotientCtx::make(PolyCtxPtr base, std::vector<Poly> ideal_gens) {
  for (const auto& g : ideal_gens)
    if (g.ctx() && g.ctx() != base) throw ContextError("ideal generator from a different ring");
  auto q = std::shared_ptr<QuotientCtx>(new QuotientCtx());
  q->base_ = std::move(base);
  q->gb_ = resolvent::groebner(ideal_gens);
  q->gens_ = std::move(ideal_gens);
  return q;
}

bool QuotientCtx::is_unit_ideal() const {
  return gb_.size() == 1 && gb_.front().leading().mono.is_one();
}

Poly QuotientCtx::normal_form(const Poly& f) const {
  if (f.ctx() && f.ctx() != base_) throw ContextError("polynomial from a different ring");
  if (f.is_zero()) return Poly(base_);
  return reduce_by(f, gb_);
}

bool QuotientCtx::is_standard(const Monomial& m) const {
  for (const auto& g : gb_)
    if (g.leading().mono.divides(m)) return false;
  return true;
}

std::vector<Monomial> QuotientCtx::standard_monomials(int d) const {
  std::vector<Monomial> out;
  for (auto& m : monomials_of_degree(base_->nvars(), d))
    if (is_standard(m)) out.push_back(std::move(m));
  return out;
}

std::size_t QuotientCtx::graded_dim(int d) const { return standard_monomials(d).size(); }

std::shared_ptr<const QuotientCtx> QuotientCtx::extended(const std::vector<Poly>& extra) const {
  std::vector<Poly> gens = gens_;
  gens.insert(gens.end(), extra.begin(), extra.end());
  return make(base_, std::move(gens));
}

bool QuotientCtx::contains_ideal(const QuotientCtx& other) const {
  if (other.base_ != base_) return false;
  for (const auto& g : other.gb_)
    if (!contains(g)) return false;
  return true;
}

// ------------------------------------------------------------- regularity

std::vector<std::int64_t> complete_intersection_hilbert(const std::vector<int>& degs, std::size_t nvars,
                                                        int bound) {
  std::vector<std::int64_t> num(bound + 1, 0);
  num[0] = 1;
  for (int d : degs) {
    for (int k = bound; k >= d; --k) num[k] -= num[k - d];
  }
  // Divide by (1 - t) nvars times: repeated prefix sums.
  for (std::size_t v = 0; v < nvars; ++v)
    for (int k = 1; k <= bound; ++k) num[k] += num[k - 1];
  return num;
}

bool is_regular_sequence(const std::vector<Poly>& seq, const PolyCtxPtr& ctx, int bound) {
  std::vector<int> degs;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto d = seq[i].homogeneous_degree();
    if (!d || *d <= 0)
      throw ValidationError("NotHomogeneous", "sequence entry " + std::to_string(i + 1) +
                                                  " is zero, constant or inhomogeneous");
    degs.push_back(*d);
  }
  auto q = QuotientCtx::make(ctx, seq);
  auto expected = complete_intersection_hilbert(degs, ctx->nvars(), bound);
  for (int d = 0; d <= bound; ++d)
    if (static_cast<std::int64_t>(q->graded_dim(d)) != expected[d]) return false;
  return true;
}

}  // namespace resolvent
