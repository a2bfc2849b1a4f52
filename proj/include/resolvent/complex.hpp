#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "resolvent/groebner.hpp"

namespace resolvent {

/// Basis element of a graded free module. `dual` marks Hom(-, R) duals; the
/// dual of a dual label is the original label.
struct BasisLabel {
  std::string tag;
  int degree = 0;
  bool dual = false;

  BasisLabel dualized() const { return {tag, -degree, !dual}; }
  std::string display() const { return dual ? "(" + tag + ")*" : tag; }
  bool same_element(const BasisLabel& o) const { return tag == o.tag && dual == o.dual; }
};

class FreeMod {
 public:
  FreeMod() = default;
  explicit FreeMod(std::vector<BasisLabel> basis);

  std::size_t rank() const { return basis_.size(); }
  const std::vector<BasisLabel>& basis() const { return basis_; }
  const BasisLabel& operator[](std::size_t i) const { return basis_[i]; }
  std::optional<std::size_t> index_of(const std::string& tag, bool dual) const;
  FreeMod dual() const;
  FreeMod twisted(int t) const;
  /// Direct sum, `this` summand first.
  FreeMod direct_sum(const FreeMod& o) const;
  int min_degree() const;
  int max_degree() const;

 private:
  std::vector<BasisLabel> basis_;
};

/// Degree-preserving R-linear map between graded free modules, as a dense
/// matrix of normal forms. Column c is the image of basis element c, so a
/// nonzero entry at (b, c) has degree deg(c) - deg(b).
class HomogMatrix {
 public:
  HomogMatrix() = default;
  HomogMatrix(QuotientPtr ring, FreeMod rows, FreeMod cols);
  static HomogMatrix identity(QuotientPtr ring, const FreeMod& m);

  const QuotientPtr& ring() const { return ring_; }
  const FreeMod& rows() const { return rows_; }
  const FreeMod& cols() const { return cols_; }
  std::size_t nrows() const { return rows_.rank(); }
  std::size_t ncols() const { return cols_.rank(); }

  const Poly& at(std::size_t r, std::size_t c) const { return entries_[r * ncols() + c]; }
  /// Stores the normal form of p; throws ConstructionError if it is not
  /// homogeneous of degree deg(col) - deg(row).
  void set(std::size_t r, std::size_t c, const Poly& p);
  void add_to(std::size_t r, std::size_t c, const Poly& p) { set(r, c, at(r, c) + p); }

  HomogMatrix transpose() const;
  HomogMatrix operator*(const HomogMatrix& rhs) const;  // this after rhs
  HomogMatrix operator+(const HomogMatrix& rhs) const;
  HomogMatrix operator-(const HomogMatrix& rhs) const;
  HomogMatrix operator-() const;
  HomogMatrix scaled(std::int64_t c) const;
  bool is_zero() const;
  bool operator==(const HomogMatrix& o) const;
  bool operator!=(const HomogMatrix& o) const { return !(*this == o); }
  /// Same entries, relabelled modules (ranks must match).
  HomogMatrix relabeled(FreeMod rows, FreeMod cols) const;
  /// Entries reduced into a larger quotient of the same polynomial ring.
  HomogMatrix base_changed(const QuotientPtr& ring) const;
  /// First entry with a nonzero constant term, as (row, col).
  std::optional<std::pair<std::size_t, std::size_t>> unit_entry() const;

  nlohmann::ordered_json to_json() const;

 private:
  QuotientPtr ring_;
  FreeMod rows_, cols_;
  std::vector<Poly> entries_;
};

/// Chain complex on the finite window [lo, hi], differentials d_n : C_n -> C_{n-1}
/// for lo < n <= hi. A closed side means the complex is genuinely zero beyond
/// the window there; an open side is a truncation.
class GradedComplex {
 public:
  GradedComplex() = default;
  /// Validates shapes, homogeneity and d*d = 0; throws ConstructionError.
  GradedComplex(QuotientPtr ring, int lo, int hi, std::map<int, FreeMod> modules, std::map<int, HomogMatrix> diffs,
                bool closed_below, bool closed_above);

  const QuotientPtr& ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool closed_below() const { return closed_below_; }
  bool closed_above() const { return closed_above_; }
  bool has(int n) const { return n >= lo_ && n <= hi_; }
  /// Outside the window on a closed side: the module is zero.
  bool zero_at(int n) const { return (n < lo_ && closed_below_) || (n > hi_ && closed_above_); }
  /// Whether homology at n is determined by the stored data.
  bool homology_reliable(int n) const;

  const FreeMod& module(int n) const;
  /// d_n : C_n -> C_{n-1}; for n - 1 on a closed side this is a map to 0.
  const HomogMatrix& diff(int n) const;
  bool has_diff(int n) const { return diffs_.count(n) > 0; }
  const std::map<int, HomogMatrix>& diffs() const { return diffs_; }

  /// Indices n where d_{n-1} d_n != 0 (empty for a valid complex).
  std::vector<int> square_zero_failures() const;
  int min_degree() const;
  int max_degree() const;

  nlohmann::ordered_json to_json() const;

 private:
  QuotientPtr ring_;
  int lo_ = 0, hi_ = -1;
  std::map<int, FreeMod> modules_;
  std::map<int, HomogMatrix> diffs_;
  bool closed_below_ = true, closed_above_ = true;
};

using ComplexPtr = std::shared_ptr<const GradedComplex>;

/// Hom(C, R): module (C_{-n})* at index n, differential d_{1-n}^T at n.
GradedComplex dual(const GradedComplex& c);
/// C[i]: module C_{n-i} at index n, differentials carried unchanged.
GradedComplex shift(const GradedComplex& c, int i);
/// Adds t to every internal degree.
GradedComplex twist(const GradedComplex& c, int t);
GradedComplex base_change(const GradedComplex& c, const QuotientPtr& ring);

/// Family of maps source_n -> target_{n + shift}, all of internal degree 0.
struct ChainMap {
  ComplexPtr source;
  ComplexPtr target;
  int shift = 0;
  std::map<int, HomogMatrix> comps;
};

struct SquareFailure {
  int index;
  HomogMatrix residual;  // target_d * comp_n - comp_{n-1} * source_d
};

struct ChainMapReport {
  std::vector<SquareFailure> failures;
  std::vector<int> checked;
  bool ok() const { return failures.empty(); }
};

/// Checks target.d * comp_n = comp_{n-1} * source.d wherever both sides are
/// determined by the windows; a missing component on a closed side counts
/// as zero.
ChainMapReport verify_chain_map(const ChainMap& phi);

/// Mapping cone with cone_n = target_{n+1+shift} (+) source_n and
/// D_n = [ d_target, comp_n ; 0, -d_source ], built on [lo, hi]. Requires a
/// verified chain map (throws ChainMapError otherwise).
struct ConeComplex {
  GradedComplex complex;
  std::map<int, std::size_t> target_block_size;  // rows/cols of the target summand at n
};
ConeComplex cone(const ChainMap& phi, int lo, int hi);

}  // namespace resolvent
