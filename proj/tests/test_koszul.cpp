#include <doctest.h>

#include "oracles.hpp"
#include "resolvent/koszul.hpp"
#include "resolvent/random_instances.hpp"

using namespace resolvent;

namespace {
Instance E(int k) { return validate_instance(catalog_instance(k)); }
Poly P(const Instance& i, const char* s) { return parse_poly(i.ring, s); }
}  // namespace

TEST_CASE("exterior helpers") {
  CHECK(subsets_of_size(4, 2).size() == 6);
  CHECK(subsets_of_size(3, 0) == std::vector<Subset>{{}});
  CHECK(subsets_of_size(3, 2) == std::vector<Subset>{{1, 2}, {1, 3}, {2, 3}});
  CHECK(merge_sign({1}, {2}) == 1);
  CHECK(merge_sign({2}, {1}) == -1);
  CHECK(merge_sign({2, 3}, {1}) == 1);
  CHECK_FALSE(merge_sign({1, 2}, {2}).has_value());
  CHECK(complement({2}, 3) == Subset{1, 3});
  CHECK(binomial(5, 2) == 10);
  CHECK(reversal_sign(2) == -1);
  CHECK(reversal_sign(4) == 1);
}

TEST_CASE("Koszul complex examples") {
  auto e1 = E(1);
  auto K1 = koszul_complex({P(e1, "x")}, e1.R);
  CHECK(K1.module(0).rank() == 1);
  CHECK(K1.module(1).rank() == 1);
  CHECK(K1.diff(1).at(0, 0) == P(e1, "x"));

  auto Q = QuotientCtx::make(e1.ring, {});
  auto K2 = koszul_complex(e1.g, Q);
  CHECK(K2.diff(1).at(0, 0) == P(e1, "x"));
  CHECK(K2.diff(1).at(0, 1) == P(e1, "y"));
  CHECK(K2.diff(2).at(0, 0) == P(e1, "-y"));
  CHECK(K2.diff(2).at(1, 0) == P(e1, "x"));
  CHECK((K2.diff(1) * K2.diff(2)).is_zero());

  auto c4 = PolyCtx::make(101, {"a", "b", "c", "d"});
  std::vector<Poly> vars;
  for (std::size_t i = 0; i < 4; ++i) vars.push_back(Poly::variable(c4, i));
  auto K4 = koszul_complex(vars, QuotientCtx::make(c4, {}));
  CHECK(K4.module(2).rank() == 6);
  CHECK(K4.square_zero_failures().empty());
}

TEST_CASE("homology basis examples") {
  auto e1 = E(1);
  auto b1 = koszul_homology_basis(e1, 1);
  REQUIRE(b1.size() == 1);
  CHECK(b1[0].element.size() == 1);
  CHECK(b1[0].element.at({1}) == P(e1, "x"));
  CHECK(b1[0].degree == 2);

  auto b0 = koszul_homology_basis(e1, 0);
  REQUIRE(b0.size() == 1);
  CHECK(b0[0].element.at({}) == P(e1, "1"));
  CHECK(koszul_homology_basis(e1, 2).empty());

  auto e4 = E(4);
  auto b2 = koszul_homology_basis(e4, 2);
  REQUIRE(b2.size() == 1);
  CHECK(b2[0].element.size() == 1);
  CHECK(b2[0].element.at({1, 2}) == P(e4, "x*y"));
  CHECK(b2[0].degree == 4);
}

TEST_CASE("minor cycles multiply") {
  auto e4 = E(4);
  auto b1 = koszul_homology_basis(e4, 1);
  auto b2 = koszul_homology_basis(e4, 2);
  REQUIRE(b1.size() == 2);
  auto w = wedge(b1[0].element, b1[1].element, *e4.R);
  CHECK(w == b2[0].element);
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto inst = validate_instance(random_linear_instance(seed));
    if (inst.r() < 2) continue;
    auto one = koszul_homology_basis(inst, 1);
    auto two = koszul_homology_basis(inst, 2);
    std::size_t k = 0;
    for (std::size_t a = 0; a < one.size(); ++a)
      for (std::size_t b = a + 1; b < one.size(); ++b) CHECK(wedge(one[a].element, one[b].element, *inst.R) == two[k++].element);
  }
}

TEST_CASE("self-duality matrix examples") {
  // s = 2, j = 0: 1 -> -dg*1dg*2; j = 2: dg1dg2 -> 1
  auto e1 = E(1);
  auto sd = koszul_self_duality(e1);
  const auto& m0 = sd.raw.comps.at(0);
  CHECK(m0.at(0, 0) == P(e1, "-1"));
  CHECK(m0.rows()[0].tag == "dg1dg2");
  const auto& m2 = sd.raw.comps.at(2);
  CHECK(m2.at(0, 0) == P(e1, "1"));
  CHECK(m2.rows()[0].tag == "1");

  auto e3 = E(3);
  auto sd3 = koszul_self_duality(e3);
  CHECK(sd3.raw.comps.size() == 4);
}

TEST_CASE("textbook self-duality signs commute up to (-1)^s") {
  for (int k = 1; k <= 4; ++k) {
    auto inst = E(k);
    auto sd = koszul_self_duality(inst);
    CHECK(verify_chain_map(sd.corrected).ok());
    const bool s_even = inst.s() % 2 == 0;
    CHECK(verify_chain_map(sd.raw).ok() == s_even);
    // raw squares anticommute when s is odd
    if (!s_even) {
      ChainMap flipped = sd.raw;
      for (auto& [j, m] : flipped.comps)
        if (j % 2) m = m.scaled(-1);
      CHECK(verify_chain_map(flipped).ok());
    }
    for (const auto& [j, m] : sd.corrected.comps) {
      CHECK(m.nrows() == m.ncols());
      // signed permutation: m^T m = identity
      CHECK((m.transpose().relabeled(m.cols(), m.rows()) * m) == HomogMatrix::identity(inst.R, m.cols()));
    }
  }
}

TEST_CASE("Koszul cohomology generator") {
  auto e1 = E(1);
  auto gen = koszul_cohomology_generator(e1);
  REQUIRE(gen.size() == 1);
  CHECK(gen.at({2}) == P(e1, "-x"));
  CHECK(is_koszul_cocycle(e1, gen));

  auto e3 = E(3);
  auto g3 = koszul_cohomology_generator(e3);
  // (-1)^{rg + k1 + k2} times a_{1i}: i = 1 -> K = {2,3}; i = 2 -> K = {1,3}
  CHECK(g3.size() == 2);
  CHECK(g3.at({2, 3}) == P(e3, "-x"));
  CHECK(g3.at({1, 3}) == P(e3, "z"));

  ExtElement bogus{{{2}, P(e1, "y")}};
  CHECK_FALSE(is_koszul_cocycle(e1, bogus));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = validate_instance(random_power_instance(seed));
    CHECK_NOTHROW(koszul_cohomology_generator(inst));
  }
}

TEST_CASE("Koszul acyclicity over the polynomial ring") {
  auto e3 = E(3);
  auto Q = QuotientCtx::make(e3.ring, {});
  auto K = koszul_complex(e3.g, Q);
  for (int n = 1; n <= 3; ++n)
    for (int d = 0; d <= 5; ++d) CHECK(oracle::homology_dim(K, n, d) == 0);
  CHECK(oracle::homology_dim(K, 0, 0) == 1);
  for (int d = 1; d <= 5; ++d) CHECK(oracle::homology_dim(K, 0, d) == 0);
}
