#pragma once

#include <memory>
#include <vector>

#include "resolvent/poly.hpp"

namespace resolvent {

/// Reduced Groebner basis (monic, grevlex-ascending by leading monomial) of
/// the ideal generated by `gens`. Zero generators are ignored; an empty input
/// yields the empty basis of the zero ideal.
std::vector<Poly> groebner(const std::vector<Poly>& gens);

/// Full reduction of f by `basis` (remainder of the multivariate division).
Poly reduce_by(const Poly& f, const std::vector<Poly>& basis);

/// S-polynomial of two nonzero polynomials.
Poly s_polynomial(const Poly& a, const Poly& b);

/// Q/I for a homogeneous ideal I of a polynomial ring Q. Immutable once built.
class QuotientCtx {
 public:
  static std::shared_ptr<const QuotientCtx> make(PolyCtxPtr base, std::vector<Poly> ideal_gens);

  const PolyCtxPtr& base() const { return base_; }
  const std::vector<Poly>& ideal_gens() const { return gens_; }
  const std::vector<Poly>& groebner() const { return gb_; }
  bool is_unit_ideal() const;

  Poly normal_form(const Poly& f) const;
  bool contains(const Poly& f) const { return normal_form(f).is_zero(); }
  bool is_standard(const Monomial& m) const;
  /// Standard monomials of degree d, grevlex-descending; they form an F_p
  /// basis of the degree-d piece.
  std::vector<Monomial> standard_monomials(int d) const;
  std::size_t graded_dim(int d) const;

  /// Quotient by this ideal plus `extra`.
  std::shared_ptr<const QuotientCtx> extended(const std::vector<Poly>& extra) const;
  /// True when this ideal contains every generator of `other` (same base ring).
  bool contains_ideal(const QuotientCtx& other) const;

 private:
  QuotientCtx() = default;
  PolyCtxPtr base_;
  std::vector<Poly> gens_;
  std::vector<Poly> gb_;
};

using QuotientPtr = std::shared_ptr<const QuotientCtx>;

/// Default degree bound for the Hilbert-function regularity certificate.
inline constexpr int kDefaultRegularityBound = 12;

/// Coefficients t^0..t^bound of prod_j (1 - t^{degs_j}) / (1 - t)^nvars.
std::vector<std::int64_t> complete_intersection_hilbert(const std::vector<int>& degs, std::size_t nvars,
                                                        int bound);

/// Hilbert-function certificate that homogeneous, positive-degree `seq` is a
/// regular sequence in the polynomial ring: dims of Q/(seq) agree with the
/// complete-intersection series for every degree 0..bound. Throws
/// ValidationError("NotHomogeneous") on inhomogeneous or constant input.
bool is_regular_sequence(const std::vector<Poly>& seq, const PolyCtxPtr& ctx,
                         int bound = kDefaultRegularityBound);

}  // namespace resolvent
