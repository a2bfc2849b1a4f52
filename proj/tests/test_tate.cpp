#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "resolvent/errors.hpp"
#include "resolvent/random_instances.hpp"
#include "resolvent/tate.hpp"

using namespace resolvent;

namespace {

Instance E(int k) { return validate_instance(catalog_instance(k)); }
Poly P(const Instance& i, const char* s) { return parse_poly(i.ring, s); }

// Count pairs (subset of [s], multi-index of size r) with |S| + 2|e| = n by brute force.
std::int64_t brute_rank(int s, int r, int n) {
  std::int64_t count = 0;
  for (int mask = 0; mask < (1 << s); ++mask) {
    int k = __builtin_popcount(mask);
    if ((n - k) < 0 || (n - k) % 2) continue;
    int w = (n - k) / 2;
    // multi-indices of r entries summing to w
    std::vector<int> e(r, 0);
    std::function<void(int, int)> rec = [&](int j, int left) {
      if (j == r - 1) {
        ++count;
        return;
      }
      for (int a = 0; a <= left; ++a) rec(j + 1, left - a);
    };
    rec(0, w);
  }
  return count;
}

TateElement random_element(const Instance& inst, int n, std::mt19937_64& rng) {
  TateElement x;
  for (const auto& l : tate_basis(static_cast<int>(inst.s()), static_cast<int>(inst.r()), n))
    if (rng() % 2) {
      x[l] = Poly::constant(inst.ring, 1 + rng() % 7);
    }
  return x;
}

TateElement sum(TateElement a, const TateElement& b, const Instance& inst) {
  for (const auto& [l, p] : b) {
    Poly v = inst.R->normal_form(a.count(l) ? a[l] + p : p);
    if (v.is_zero())
      a.erase(l);
    else
      a[l] = v;
  }
  return a;
}

TateElement scale(TateElement a, std::int64_t c) {
  for (auto& [l, p] : a) p = p.scaled(c);
  return a;
}

}  // namespace

TEST_CASE("rank formula against enumeration") {
  for (int s = 1; s <= 4; ++s)
    for (int r = 1; r <= s; ++r)
      for (int n = 0; n <= 8; ++n) {
        CHECK(tate_rank_formula(s, r, n) == brute_rank(s, r, n));
        CHECK(static_cast<std::int64_t>(tate_basis(s, r, n).size()) == brute_rank(s, r, n));
      }
}

TEST_CASE("Tate resolution of E1") {
  auto e1 = E(1);
  auto F = tate_resolution(e1, 6);
  const std::int64_t expected[] = {1, 2, 2, 2, 2};
  for (int n = 0; n <= 4; ++n) CHECK(static_cast<std::int64_t>(F.complex->module(n).rank()) == expected[n]);
  // d(T1) = x dg1
  const auto& d2 = F.complex->diff(2);
  auto col = F.complex->module(2).index_of("T1", false);
  auto row = F.complex->module(1).index_of("dg1", false);
  REQUIRE(col);
  REQUIRE(row);
  CHECK(d2.at(*row, *col) == P(e1, "x"));
  auto row2 = F.complex->module(1).index_of("dg2", false);
  CHECK(d2.at(*row2, *col).is_zero());
  // H_0 = R/J: coker of d_1 is one-dimensional in degree 0
  CHECK(oracle::homology_dim(*F.complex, 0, 0) == 1);
  for (int d = 1; d <= 6; ++d) CHECK(oracle::homology_dim(*F.complex, 0, d) == 0);
  for (int n = 1; n <= 5; ++n)
    for (int d = 0; d <= 8; ++d) CHECK(oracle::homology_dim(*F.complex, n, d) == 0);
}

TEST_CASE("Tate resolutions are acyclic on the catalog") {
  for (int k = 2; k <= 4; ++k) {
    auto inst = E(k);
    auto F = tate_resolution(inst, 5);
    CHECK(F.complex->square_zero_failures().empty());
    for (int n = 1; n <= 4; ++n)
      for (int d = 0; d <= 7; ++d) CHECK(oracle::homology_dim(*F.complex, n, d) == 0);
    auto h0 = oracle::free_module_hilbert(*inst.R_mod_J, {0}, 7);
    for (int d = 0; d <= 7; ++d) CHECK(oracle::homology_dim(*F.complex, 0, d) == h0[d]);
  }
}

TEST_CASE("matrix differential agrees with the derivation and Leibniz holds") {
  std::mt19937_64 rng(99);
  for (int k = 1; k <= 4; ++k) {
    auto inst = E(k);
    auto F = tate_resolution(inst, 6);
    for (int n = 1; n <= 6; ++n) {
      const auto& labels = F.labels.at(n);
      for (std::size_t c = 0; c < labels.size(); ++c) {
        auto b = tate_boundary({{labels[c], Poly::constant(inst.ring, 1)}}, inst);
        for (std::size_t r = 0; r < F.labels.at(n - 1).size(); ++r) {
          const auto& lr = F.labels.at(n - 1)[r];
          Poly want = b.count(lr) ? b.at(lr) : Poly(inst.ring);
          CHECK(F.complex->diff(n).at(r, c) == want);
        }
      }
    }
    for (int t = 0; t < 20; ++t) {
      int na = rng() % 4, nb = rng() % 4;
      auto a = random_element(inst, na, rng);
      auto b = random_element(inst, nb, rng);
      auto lhs = tate_boundary(tate_product(a, b, inst), inst);
      auto rhs = sum(tate_product(tate_boundary(a, inst), b, inst),
                     scale(tate_product(a, tate_boundary(b, inst), inst), na % 2 ? -1 : 1), inst);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("divided power product") {
  auto e4 = E(4);
  TateLabel t1{{}, {1, 0}}, t1sq{{}, {2, 0}}, t13{{}, {3, 0}};
  auto one = Poly::constant(e4.ring, 1);
  auto p = tate_product({{t1, one}}, {{t1, one}}, e4);
  CHECK(p.at(t1sq) == Poly::constant(e4.ring, 2));
  auto q = tate_product({{t1, one}}, {{t1sq, one}}, e4);
  CHECK(q.at(t13) == Poly::constant(e4.ring, 3));
  TateLabel d1{{1}, {0, 0}}, d2{{2}, {0, 0}}, d12{{1, 2}, {0, 0}};
  CHECK(tate_product({{d2, one}}, {{d1, one}}, e4).at(d12) == Poly::constant(e4.ring, -1));
  CHECK(tate_product({{d1, one}}, {{d1, one}}, e4).empty());
}

TEST_CASE("small primes are rejected") {
  RawInstance raw = catalog_instance(1);
  raw.prime = 3;
  auto inst = validate_instance(raw);
  CHECK_NOTHROW(tate_resolution(inst, 5));
  CHECK_THROWS_AS(tate_resolution(inst, 6), ConstructionError);
}

TEST_CASE("dual Tate maps are the transposes") {
  auto e1 = E(1);
  auto F = tate_resolution(e1, 5);
  auto Fd = dual_tate(e1, F);
  // d(dg*1) = x T*1, d(dg*2) = 0
  const auto& dm = Fd.d.at(-1);
  auto c1 = Fd.complex->module(-1).index_of("dg1", true);
  auto c2 = Fd.complex->module(-1).index_of("dg2", true);
  auto rt = Fd.complex->module(-2).index_of("T1", true);
  CHECK(dm.at(*rt, *c1) == P(e1, "x"));
  CHECK(dm.at(*rt, *c2).is_zero());
  // mu_x(1) = x dg*1 + y dg*2
  const auto& mu = Fd.mu_x.at(0);
  CHECK(mu.at(*Fd.complex->module(-1).index_of("dg1", true), 0) == P(e1, "x"));
  CHECK(mu.at(*Fd.complex->module(-1).index_of("dg2", true), 0) == P(e1, "y"));
  CHECK(check_dual_tate(F, Fd).ok());

  for (int k = 2; k <= 4; ++k) {
    auto inst = E(k);
    auto G = tate_resolution(inst, 6);
    CHECK(check_dual_tate(G, dual_tate(inst, G)).ok());
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = validate_instance(random_power_instance(seed));
    auto G = tate_resolution(inst, 5);
    CHECK(check_dual_tate(G, dual_tate(inst, G)).ok());
  }
}
