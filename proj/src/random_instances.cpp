#include "resolvent/random_instances.hpp"

#include <random>

#include "resolvent/errors.hpp"

namespace resolvent {

namespace {

Poly random_form(const PolyCtxPtr& ctx, int degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  Poly p(ctx);
  for (const auto& m : monomials_of_degree(ctx->nvars(), degree)) p += Poly::monomial(ctx, m, ctx->reduce(coeff(rng)));
  return p;
}

std::vector<std::string> var_names(std::size_t n) {
  static const char* names[] = {"x", "y", "z", "w", "u", "v"};
  return {names, names + n};
}

template <typename Draw>
RawInstance first_valid(std::uint64_t seed, Draw draw) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 17);
  for (int attempt = 0; attempt < 200; ++attempt) {
    RawInstance raw = draw(rng);
    try {
      validate_instance(raw);
      return raw;
    } catch (const ValidationError&) {
    }
  }
  throw Error("random instance generator failed to find a valid draw for seed " + std::to_string(seed));
}

RawInstance assemble(const PolyCtxPtr& ctx, const std::vector<Poly>& g, const std::vector<std::vector<Poly>>& A) {
  RawInstance raw;
  raw.prime = ctx->prime();
  raw.variables = ctx->variables();
  for (const auto& gi : g) raw.g.push_back(gi.to_string());
  for (const auto& row : A) {
    Poly fj(ctx);
    std::vector<std::string> srow;
    for (std::size_t i = 0; i < row.size(); ++i) {
      fj += row[i] * g[i];
      srow.push_back(row[i].to_string());
    }
    raw.f.push_back(fj.to_string());
    raw.A.push_back(std::move(srow));
  }
  return raw;
}

}  // namespace

RawInstance random_linear_instance(std::uint64_t seed) {
  return first_valid(seed, [](std::mt19937_64& rng) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
    auto ctx = PolyCtx::make(101, var_names(n));
    std::size_t s = std::uniform_int_distribution<std::size_t>(2, n)(rng);
    std::size_t r = std::uniform_int_distribution<std::size_t>(1, s - 1)(rng);
    std::vector<Poly> g;
    for (std::size_t i = 0; i < s; ++i) g.push_back(Poly::variable(ctx, i));
    std::vector<std::vector<Poly>> A(r);
    for (auto& row : A)
      for (std::size_t i = 0; i < s; ++i) row.push_back(random_form(ctx, 1, rng));
    return assemble(ctx, g, A);
  });
}

RawInstance random_power_instance(std::uint64_t seed) {
  return first_valid(seed, [](std::mt19937_64& rng) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
    auto ctx = PolyCtx::make(101, var_names(n));
    std::size_t s = std::uniform_int_distribution<std::size_t>(2, n)(rng);
    std::size_t r = std::uniform_int_distribution<std::size_t>(1, s - 1)(rng);
    std::vector<Poly> g;
    std::vector<int> gdeg;
    for (std::size_t i = 0; i < s; ++i) {
      bool square = std::bernoulli_distribution(0.5)(rng);
      Poly x = Poly::variable(ctx, i);
      g.push_back(square ? x * x : x);
      gdeg.push_back(square ? 2 : 1);
    }
    std::vector<std::vector<Poly>> A(r);
    for (auto& row : A)
      for (std::size_t i = 0; i < s; ++i) row.push_back(random_form(ctx, 3 - gdeg[i], rng));
    return assemble(ctx, g, A);
  });
}

}  // namespace resolvent
