#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace resolvent {

using Coeff = std::uint32_t;

/// Ring context: prime field F_p, ordered variable names, grevlex order.
class PolyCtx {
 public:
  /// Throws ValidationError("BadPrime") unless p is an odd prime below 2^31,
  /// and ValidationError("BadVariables") on empty or duplicate names.
  static std::shared_ptr<const PolyCtx> make(std::int64_t prime,
                                             std::vector<std::string> variables);

  Coeff prime() const { return p_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& variables() const { return vars_; }
  std::optional<std::size_t> var_index(std::string_view name) const;

  Coeff reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Coeff>(r < 0 ? r + p_ : r);
  }
  Coeff add(Coeff a, Coeff b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<Coeff>(s >= p_ ? s - p_ : s);
  }
  Coeff sub(Coeff a, Coeff b) const { return a >= b ? a - b : a + (p_ - b); }
  Coeff neg(Coeff a) const { return a == 0 ? 0 : p_ - a; }
  Coeff mul(Coeff a, Coeff b) const {
    return static_cast<Coeff>((std::uint64_t(a) * b) % p_);
  }
  Coeff inv(Coeff a) const;
  /// Symmetric representative in (-p/2, p/2], used for printing.
  std::int64_t lift(Coeff a) const {
    return a > p_ / 2 ? std::int64_t(a) - std::int64_t(p_) : std::int64_t(a);
  }

 private:
  PolyCtx(Coeff p, std::vector<std::string> vars) : p_(p), vars_(std::move(vars)) {}
  Coeff p_;
  std::vector<std::string> vars_;
};

using PolyCtxPtr = std::shared_ptr<const PolyCtx>;

bool is_prime(std::int64_t n);

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exp_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint16_t> exps);
  static Monomial variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return exp_.size(); }
  int degree() const { return degree_; }
  std::uint16_t operator[](std::size_t i) const { return exp_[i]; }
  const std::vector<std::uint16_t>& exponents() const { return exp_; }
  bool is_one() const { return degree_ == 0; }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  /// Requires divides(o): returns o / *this.
  Monomial quotient_of(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const;

  bool operator==(const Monomial& o) const { return exp_ == o.exp_; }
  bool operator!=(const Monomial& o) const { return exp_ != o.exp_; }

 private:
  std::vector<std::uint16_t> exp_;
  int degree_ = 0;
};

/// Graded reverse lexicographic comparison: negative, zero or positive.
int grevlex_cmp(const Monomial& a, const Monomial& b);

struct MonomialGrevlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_cmp(a, b) < 0; }
};

/// Enumerates all monomials of total degree d in n variables (grevlex-descending).
std::vector<Monomial> monomials_of_degree(std::size_t nvars, int d);

struct Term {
  Monomial mono;
  Coeff coeff;
};

/// Sparse polynomial; terms sorted by strictly decreasing grevlex, nonzero
/// coefficients only.
class Poly {
 public:
  Poly() = default;
  explicit Poly(PolyCtxPtr ctx) : ctx_(std::move(ctx)) {}
  static Poly constant(PolyCtxPtr ctx, std::int64_t c);
  static Poly monomial(PolyCtxPtr ctx, Monomial m, Coeff c = 1);
  static Poly variable(PolyCtxPtr ctx, std::size_t i);
  /// Builds from arbitrary terms: sorts, merges duplicates and drops zeros.
  static Poly from_terms(PolyCtxPtr ctx, std::vector<Term> terms);

  const PolyCtxPtr& ctx() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Term& leading() const { return terms_.front(); }

  /// Common total degree of all terms; nullopt for zero or inhomogeneous polys.
  std::optional<int> homogeneous_degree() const;
  bool is_homogeneous() const { return is_zero() || homogeneous_degree().has_value(); }
  Coeff constant_term() const;
  /// Coefficient of m (0 if absent).
  Coeff coefficient(const Monomial& m) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly scaled(Coeff c) const;
  Poly scaled(std::int64_t c) const { return scaled(ctx_->reduce(c)); }
  Poly times(const Monomial& m, Coeff c = 1) const;
  /// this - c*m*other, the reduction step of the division algorithm.
  Poly minus_multiple(const Poly& other, const Monomial& m, Coeff c) const;
  Poly monic() const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Canonical text form parseable by parse_poly ("0" for zero).
  std::string to_string() const;

 private:
  void require_same_ctx(const Poly& o) const;
  PolyCtxPtr ctx_;
  std::vector<Term> terms_;
};

/// Parses the polystring grammar: signed integer coefficients, declared
/// variables, `^` powers, optional `*`, `+`/`-` separators. Whitespace is
/// ignored. Throws ParseError with the byte offset of the problem.
Poly parse_poly(const PolyCtxPtr& ctx, std::string_view text);

}  // namespace resolvent
