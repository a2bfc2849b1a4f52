#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "resolvent/complex.hpp"
#include "resolvent/instance.hpp"
#include "resolvent/koszul.hpp"

namespace resolvent {

/// Dense matrix over F_p.
struct FpMatrix {
  std::size_t rows = 0, cols = 0;
  Coeff p = 2;
  std::vector<Coeff> data;  // row-major

  FpMatrix() = default;
  FpMatrix(std::size_t r, std::size_t c, Coeff prime) : rows(r), cols(c), p(prime), data(r * c, 0) {}
  Coeff& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  Coeff at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Row reduction to echelon form; returns the rank.
std::size_t fp_rank(FpMatrix m);

/// Normal forms of all monomials up to a degree bound, computed once; then
/// immutable and safe to share across threads.
class GradedRing {
 public:
  GradedRing(QuotientPtr q, int max_degree);
  const QuotientPtr& quotient() const { return q_; }
  int max_degree() const { return max_degree_; }
  /// Standard monomials of degree d (empty for d < 0 or d > max).
  const std::vector<Monomial>& basis(int d) const;
  std::size_t dim(int d) const { return basis(d).size(); }
  /// Coordinates of m * p in the standard basis of degree deg(m) + deg(p).
  void multiply_into(const Monomial& m, const Poly& p, std::vector<Coeff>& out) const;

 private:
  struct Row {
    std::vector<std::pair<std::uint32_t, Coeff>> entries;
  };
  const Row& normal_row(const Monomial& m) const;
  QuotientPtr q_;
  int max_degree_;
  std::vector<std::vector<Monomial>> basis_;
  std::vector<std::map<std::vector<std::uint16_t>, std::uint32_t>> index_;
  std::map<std::vector<std::uint16_t>, Row> nf_;
};

/// Offsets of the degree-d piece of a free module: label i contributes the
/// block [offset_i, offset_i + dim(d - deg_i)).
std::vector<std::size_t> piece_offsets(const FreeMod& m, const GradedRing& ring, int d);
std::size_t piece_dim(const FreeMod& m, const GradedRing& ring, int d);

/// Matrix of the degree-d restriction of `mat`: columns indexed by
/// (column label, standard monomial of degree d - deg), rows likewise.
FpMatrix graded_piece(const HomogMatrix& mat, const GradedRing& ring, int d);

struct DegreeWindow {
  int n_min = 0, n_max = 0;
  int D = 0;
};

/// Homology dimensions over (n, d), n in the window, d from the least label
/// degree in the window up to D.
struct HilbertTable {
  int n_min = 0, n_max = 0, d_min = 0, d_max = 0;
  std::map<std::pair<int, int>, std::int64_t> dims;
  std::map<int, bool> reliable;  // both neighbouring differentials known

  std::int64_t at(int n, int d) const;
  std::int64_t total(int n) const;
  nlohmann::ordered_json to_json() const;
};

/// Worker count from RESOLVENT_THREADS (default: hardware concurrency).
unsigned configured_threads();

/// Cell-parallel homology table; entry = dim C_{n,d} - rank d_n - rank d_{n+1}.
HilbertTable homology_table(const GradedComplex& c, const DegreeWindow& w, unsigned threads = 0);

struct Cell {
  int n = 0, d = 0;
  std::int64_t expected = 0, found = 0;
};

struct ExactnessVerdict {
  bool ok = true;
  std::optional<Cell> counterexample;  // first nonzero interior cell
  std::string where;                   // "T" or "T*"
};
/// Interior cells (n_min < n < n_max) of T over w and of dual(T) over the
/// mirrored window must all vanish.
ExactnessVerdict verify_exactness(const GradedComplex& T, const DegreeWindow& w, unsigned threads = 0);

/// Searches a uniform shift s with row(d) = reference(d - s) for all d in
/// [d_lo, d_hi]; candidates with |s| <= bound, smallest |s| first (ties: s > 0).
std::optional<int> find_uniform_shift(const std::map<int, std::int64_t>& row, const std::vector<std::int64_t>& reference,
                                      int d_lo, int d_hi, int bound);

struct ResolutionVerdict {
  bool ok = true;
  std::vector<Cell> failures;      // H_n(F) against R/J, 0
  std::vector<Cell> ext_failures;  // Ext^i(R/J, R) concentration
  std::optional<int> ext_shift;  // degree shift of Ext^g against R/J
  HilbertTable tor_table;        // H_n(F)
  HilbertTable ext_table;        // H^i(F*) stored at index i
  nlohmann::ordered_json to_json() const;
};
/// (a) H_n(F) = 0 for 1 <= n <= top-1 and H_0(F) = R/J degreewise; (b)
/// Ext^i(R/J, R) = H^i(F*) vanishes for i != g and matches R/J up to one
/// uniform shift at i = g, for 0 <= i <= top-1.
ResolutionVerdict verify_tate_is_resolution(const Instance& inst, const GradedComplex& F, int D, unsigned threads = 0);

/// Tor^_n(R/J, N) = H_n(T (x) N) and Ext^^n(R/J, N) = H^n(Hom(T, N)) for
/// N = Q / (ideal of R + extra generators).
HilbertTable stable_tor(const GradedComplex& T, const QuotientPtr& N, const DegreeWindow& w, unsigned threads = 0);
HilbertTable stable_ext(const GradedComplex& T, const QuotientPtr& N, const DegreeWindow& w, unsigned threads = 0);

struct DualityVerdict {
  std::string pairing;  // description of the index map
  bool ok = true;
  bool totals_ok = true;  // total dimensions agree for every compared pair
  std::optional<int> shift;
  std::vector<int> compared;
  std::optional<Cell> counterexample;
  std::string message;
  nlohmann::ordered_json to_json() const;
};
/// Compares Tor^_n with Ext^^{m(n)} for every interior n whose partner is
/// interior too: total dimensions over d <= D, then degreewise up to one
/// uniform shift (|shift| <= D/2).
DualityVerdict compare_stable(const HilbertTable& tor, const HilbertTable& ext, int (*partner)(int n, int g), int g,
                              const std::string& name, int D);
/// Literal statement: Tor^_n ~ Ext^^{n+g-1}.
DualityVerdict verify_stable_duality(const HilbertTable& tor, const HilbertTable& ext, int g, int D);
/// Pairing induced by phi : T ~ T*[g-1]: Tor^_n ~ Ext^^{g-1-n}.
DualityVerdict verify_phi_duality(const HilbertTable& tor, const HilbertTable& ext, int g, int D);

struct KoszulBasisVerdict {
  int l = 0;
  bool ok = true;
  std::vector<std::int64_t> homology;  // dim H_l(g;R)_d, d = 0..D
  std::vector<std::int64_t> expected;  // free R/J-module on the minor degrees
  std::vector<int> unspanned;          // degrees where the cycles do not span
  nlohmann::ordered_json to_json() const;
};
/// Hilbert function of H_l(g;R) against a free R/J-module on C(r,l)
/// generators in degrees sum deg f_{j_u}, and spanning by the minor cycles.
KoszulBasisVerdict koszul_basis_check(const Instance& inst, int l, int D);

}  // namespace resolvent
