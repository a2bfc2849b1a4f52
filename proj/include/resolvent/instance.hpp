#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "resolvent/groebner.hpp"
#include "resolvent/poly.hpp"

namespace resolvent {

/// Instance data exactly as read from disk, before any parsing of polystrings.
struct RawInstance {
  std::int64_t prime = 101;
  std::vector<std::string> variables;
  std::vector<std::string> g;
  std::vector<std::string> f;
  std::vector<std::vector<std::string>> A;  // r rows, s columns
};

/// Embedded complete intersection (f) in (g) with f_j = sum_i A[j][i] g_i.
/// Only produced by validate_instance, so every invariant holds.
struct Instance {
  PolyCtxPtr ring;
  std::vector<Poly> g;
  std::vector<Poly> f;
  std::vector<std::vector<Poly>> A;  // A[j][i] = a_{ji}
  std::vector<int> g_degrees;
  std::vector<int> f_degrees;
  QuotientPtr R;        // Q / (f)
  QuotientPtr R_mod_J;  // Q / (g)

  std::size_t r() const { return f.size(); }
  std::size_t s() const { return g.size(); }
  int grade() const { return static_cast<int>(s() - r()); }
  /// sum deg g_i - sum deg f_j: the internal twist that makes the gluing map
  /// homogeneous of degree zero.
  int twist() const;
};

/// Parses {"prime", "variables", "g", "f", "A"}; throws ParseError on
/// malformed JSON or missing keys.
RawInstance parse_instance_json(const std::string& text);
RawInstance load_instance_file(const std::string& path);
std::string instance_to_json(const RawInstance& raw);

/// Checks, in order: shape (r > s), polystring syntax, homogeneity, a_{ji} in
/// the maximal ideal, the identities f_j = sum a_{ji} g_i, degree
/// compatibility, regularity of f and g, and finally grade s - r >= 1.
/// Throws ValidationError with kind BadShape, NotHomogeneous, NotMinimal,
/// IdentityMismatch, DegreeMismatch or NotRegular.
Instance validate_instance(const RawInstance& raw, int regularity_bound = kDefaultRegularityBound);

/// k x k minor of A on rows `rows` and columns `cols` (0-based, increasing),
/// by cofactor expansion; computed in Q (not reduced).
Poly minor(const Instance& inst, const std::vector<int>& rows, const std::vector<int>& cols);

/// The catalog instances E1..E4 (index 1..4).
RawInstance catalog_instance(int index);

}  // namespace resolvent
