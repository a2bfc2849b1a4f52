#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "resolvent/errors.hpp"
#include "resolvent/groebner.hpp"
#include "resolvent/instance.hpp"
#include "resolvent/random_instances.hpp"

using namespace resolvent;

namespace {
PolyCtxPtr xy() { return PolyCtx::make(101, {"x", "y"}); }
PolyCtxPtr xyz() { return PolyCtx::make(101, {"x", "y", "z"}); }
Poly P(const PolyCtxPtr& c, const char* s) { return parse_poly(c, s); }
}  // namespace

TEST_CASE("context validation") {
  CHECK_THROWS_AS(PolyCtx::make(100, {"x"}), ValidationError);
  CHECK_THROWS_AS(PolyCtx::make(2, {"x"}), ValidationError);
  CHECK_THROWS_AS(PolyCtx::make(101, {"x", "x"}), ValidationError);
  CHECK_THROWS_AS(PolyCtx::make(101, {}), ValidationError);
  CHECK(PolyCtx::make(2147483647, {"x"})->prime() == 2147483647u);
}

TEST_CASE("poly arithmetic examples") {
  auto c = xy();
  CHECK((P(c, "x+y") + P(c, "x-y")) == P(c, "2x"));
  CHECK((P(c, "x+y") * P(c, "x-y")) == P(c, "x^2 - y^2"));
  CHECK((P(c, "x") * Poly(c)).is_zero());
  CHECK(P(c, "x^2 + 3*y*x").to_string() == "x^2 + 3*x*y");
  CHECK(P(c, "-x").to_string() == "-x");
  CHECK(P(c, "0").to_string() == "0");
  CHECK(P(c, "102x").to_string() == "x");
  CHECK(P(c, "50x").to_string() == "50*x");
  CHECK(P(c, "51x").to_string() == "-50*x");
}

TEST_CASE("mixed contexts are rejected") {
  auto a = xy(), b = xy();
  CHECK_THROWS_AS(P(a, "x") + P(b, "x"), ContextError);
}

TEST_CASE("parser") {
  auto c = xyz();
  CHECK(P(c, " x y z ") == P(c, "x*y*z"));
  CHECK(P(c, "x^2y") == P(c, "x*x*y"));
  CHECK(P(c, "-3 + x") == P(c, "x - 3"));
  CHECK(P(c, "2*3x") == P(c, "6x"));
  try {
    parse_poly(c, "x + w");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(parse_poly(c, "x +"), ParseError);
  CHECK_THROWS_AS(parse_poly(c, "x^"), ParseError);
  CHECK_THROWS_AS(parse_poly(c, ""), ParseError);
  auto longer = PolyCtx::make(101, {"x", "x1"});
  CHECK(parse_poly(longer, "x1").to_string() == "x1");
  CHECK(parse_poly(longer, "x x1").homogeneous_degree() == 2);
}

TEST_CASE("round trip of printed polynomials") {
  auto c = xyz();
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    Poly p = oracle::random_poly(c, 3, rng);
    CHECK(parse_poly(c, p.to_string()) == p);
  }
}

TEST_CASE("ring axioms on random polynomials") {
  auto c = xyz();
  std::mt19937_64 rng(11);
  auto q = QuotientCtx::make(c, {P(c, "x^2 + y*z"), P(c, "y^3")});
  for (int t = 0; t < 40; ++t) {
    Poly a = oracle::random_poly(c, 2, rng), b = oracle::random_poly(c, 2, rng), d = oracle::random_poly(c, 2, rng);
    CHECK(((a + b) + d) == (a + (b + d)));
    CHECK((a * (b + d)) == (a * b + a * d));
    CHECK((a * b) == (b * a));
    CHECK(q->normal_form(a * b) == q->normal_form(q->normal_form(a) * q->normal_form(b)));
    CHECK(q->normal_form(q->normal_form(a)) == q->normal_form(a));
  }
}

TEST_CASE("groebner examples") {
  auto c = xy();
  auto gb = groebner({P(c, "x^2")});
  REQUIRE(gb.size() == 1);
  CHECK(gb[0] == P(c, "x^2"));
  CHECK(groebner({P(c, "x")}) == std::vector<Poly>{P(c, "x")});

  auto gb2 = groebner({P(c, "x^2+y^2"), P(c, "x*y")});
  CHECK(oracle::buchberger_closed(gb2));
  CHECK(oracle::contains_poly(gb2, P(c, "x^2+y^2")));
  CHECK(oracle::contains_poly(gb2, P(c, "x*y")));
  CHECK(oracle::contains_poly(gb2, P(c, "y^3")));
  // y^3 = y (x^2 + y^2) - x (x y)
  CHECK(reduce_by(P(c, "y^3"), gb2).is_zero());
  for (const auto& g : {P(c, "x^2+y^2"), P(c, "x*y")}) CHECK(reduce_by(g, gb2).is_zero());
}

TEST_CASE("groebner basis is closed under S-polynomials on random ideals") {
  auto c = xyz();
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<Poly> gens{oracle::random_poly(c, 2, rng), oracle::random_poly(c, 2, rng), oracle::random_poly(c, 3, rng)};
    auto gb = groebner(gens);
    CHECK(oracle::buchberger_closed(gb));
    for (const auto& g : gens) CHECK(reduce_by(g, gb).is_zero());
  }
}

TEST_CASE("normal form examples") {
  auto c = xy();
  auto q = QuotientCtx::make(c, {P(c, "x^2")});
  CHECK(q->normal_form(P(c, "x^2")).is_zero());
  CHECK(q->normal_form(P(c, "x^3 + x*y")) == P(c, "x*y"));
  CHECK(q->normal_form(P(c, "y^5")) == P(c, "y^5"));
}

TEST_CASE("graded dimensions") {
  auto c = xy();
  auto q = QuotientCtx::make(c, {P(c, "x^2")});
  // monomials y^d and x*y^{d-1}
  for (int d = 0; d <= 6; ++d) CHECK(q->graded_dim(d) == static_cast<std::size_t>(oracle::count_monomials_avoiding_x2(d)));
  auto field = QuotientCtx::make(c, {P(c, "x"), P(c, "y")});
  CHECK(field->graded_dim(0) == 1);
  for (int d = 1; d <= 4; ++d) CHECK(field->graded_dim(d) == 0);
  auto poly = QuotientCtx::make(c, {});
  for (int d = 0; d <= 5; ++d) CHECK(poly->graded_dim(d) == static_cast<std::size_t>(d + 1));
  CHECK(QuotientCtx::make(c, {P(c, "1")})->is_unit_ideal());
}

TEST_CASE("regular sequences") {
  auto c = xy();
  CHECK(is_regular_sequence({P(c, "x"), P(c, "y")}, c));
  CHECK_FALSE(is_regular_sequence({P(c, "x"), P(c, "x*y")}, c));
  auto c3 = xyz();
  CHECK(is_regular_sequence({P(c3, "x^2"), P(c3, "y^2 + x*z")}, c3));
  CHECK_FALSE(is_regular_sequence({P(c3, "x*y"), P(c3, "x*z")}, c3));
  CHECK_THROWS_AS(is_regular_sequence({P(c, "x + y^2")}, c), ValidationError);
  // the (x, xy) Hilbert functions first disagree in degree 2
  auto series = complete_intersection_hilbert({1, 2}, 2, 3);
  auto q = QuotientCtx::make(c, {P(c, "x"), P(c, "x*y")});
  CHECK(static_cast<std::int64_t>(q->graded_dim(1)) == series[1]);
  CHECK(static_cast<std::int64_t>(q->graded_dim(2)) != series[2]);
  // every element of a regular sequence is a non-zerodivisor modulo the previous ones
  CHECK(oracle::nonzerodivisor_chain({P(c3, "x^2"), P(c3, "y^2 + x*z")}, 6));
  CHECK_FALSE(oracle::nonzerodivisor_chain({P(c3, "x*y"), P(c3, "x*z")}, 6));
}

namespace {
std::string kind_of(const RawInstance& raw) {
  try {
    validate_instance(raw);
  } catch (const ValidationError& e) {
    return e.kind();
  }
  return "ok";
}
}  // namespace

TEST_CASE("instance validation") {
  for (int k = 1; k <= 4; ++k) CHECK(kind_of(catalog_instance(k)) == "ok");
  auto e1 = validate_instance(catalog_instance(1));
  CHECK(e1.grade() == 1);
  CHECK(validate_instance(catalog_instance(3)).grade() == 2);
  CHECK(validate_instance(catalog_instance(4)).grade() == 1);

  RawInstance unit{101, {"x", "y"}, {"x", "y"}, {"x"}, {{"1", "0"}}};
  CHECK(kind_of(unit) == "NotMinimal");
  RawInstance twice{101, {"x", "y"}, {"x", "y"}, {"x^2", "x^2"}, {{"x", "0"}, {"x", "0"}}};
  CHECK(kind_of(twice) == "NotRegular");
  RawInstance wrong{101, {"x", "y"}, {"x", "y"}, {"x^2"}, {{"y", "0"}}};
  CHECK(kind_of(wrong) == "IdentityMismatch");
  RawInstance tall{101, {"x", "y"}, {"x"}, {"x^2", "x^3"}, {{"x"}, {"x^2"}}};
  CHECK(kind_of(tall) == "BadShape");
  RawInstance square{101, {"x", "y"}, {"x", "y"}, {"x^2", "y^2"}, {{"x", "0"}, {"0", "y"}}};
  CHECK(kind_of(square) == "BadShape");
  RawInstance degree{101, {"x", "y"}, {"x", "y^2"}, {"x^2 + y^3"}, {{"x", "y"}}};
  CHECK(kind_of(degree) == "NotHomogeneous");
  RawInstance prime{91, {"x", "y"}, {"x", "y"}, {"x^2"}, {{"x", "0"}}};
  CHECK(kind_of(prime) == "BadPrime");
  RawInstance badpoly{101, {"x", "y"}, {"x", "y"}, {"x^^2"}, {{"x", "0"}}};
  CHECK_THROWS_AS(validate_instance(badpoly), ParseError);
}

TEST_CASE("instance JSON round trip") {
  auto raw = catalog_instance(4);
  auto back = parse_instance_json(instance_to_json(raw));
  CHECK(back.g == raw.g);
  CHECK(back.f == raw.f);
  CHECK(back.A == raw.A);
  CHECK_THROWS_AS(parse_instance_json("{\"g\": ["), ParseError);
  CHECK_THROWS_AS(parse_instance_json("{\"g\": []}"), ParseError);
}

TEST_CASE("random instances validate and satisfy the identities") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (auto raw : {random_linear_instance(seed), random_power_instance(seed)}) {
      auto inst = validate_instance(raw);
      for (std::size_t j = 0; j < inst.r(); ++j) {
        Poly sum(inst.ring);
        for (std::size_t i = 0; i < inst.s(); ++i) sum += inst.A[j][i] * inst.g[i];
        CHECK((sum - inst.f[j]).is_zero());
      }
    }
  }
  CHECK(instance_to_json(random_linear_instance(7)) == instance_to_json(random_linear_instance(7)));
}

TEST_CASE("minors") {
  auto inst = validate_instance(catalog_instance(4));
  CHECK(minor(inst, {0, 1}, {0, 1}) == parse_poly(inst.ring, "x*y"));
  CHECK(minor(inst, {0, 1}, {0, 2}).is_zero());
  CHECK(minor(inst, {1}, {0}) == parse_poly(inst.ring, "z"));
}
