#pragma once

#include <map>
#include <vector>

#include "resolvent/complex.hpp"
#include "resolvent/exterior.hpp"
#include "resolvent/instance.hpp"

namespace resolvent {

/// Element of an exterior power: subset -> coefficient. Zero coefficients are
/// dropped.
using ExtElement = std::map<Subset, Poly>;

/// dg_S * dg_T extended bilinearly, sorted-merge signs, coefficients reduced
/// into `ring`.
ExtElement wedge(const ExtElement& a, const ExtElement& b, const QuotientCtx& ring);

/// K(seq; ring). Module l has basis dg_S, |S| = l, internal degree
/// sum deg seq_i over S. d(dg_S) = sum_u (-1)^{u+1} seq_{S_u} dg_{S - S_u}.
GradedComplex koszul_complex(const std::vector<Poly>& seq, const QuotientPtr& ring);

/// Label of dg_S in koszul_complex.
BasisLabel koszul_label(const Subset& s, const std::vector<int>& degrees);

/// Applies the Koszul differential of K(seq; ring) to an element.
ExtElement koszul_boundary(const ExtElement& x, const std::vector<Poly>& seq, const QuotientCtx& ring);

struct KoszulCycle {
  Subset rows;  // j_1 < ... < j_l
  ExtElement element;
  int degree = 0;  // deg f_{j_1} + ... + deg f_{j_l}
};

/// One cycle of K(g; R) per l-subset of rows of A, with coefficients the
/// l x l minors on those rows. Each cycle is checked; a non-cycle throws
/// ConstructionError. Empty for l > r.
std::vector<KoszulCycle> koszul_homology_basis(const Instance& inst, int l);

/// Matrix of dg_I -> (-1)^{j(s-j) + sum K} dg*_K on the dual basis, K the
/// complement of I (|I| = j). This is the textbook sign; against plain
/// transposes it commutes with the differentials only up to (-1)^s.
HomogMatrix koszul_self_duality_matrix(const Instance& inst, int j, const GradedComplex& koszul,
                                       const GradedComplex& target);

/// Chain isomorphism K(g;R) -> twist(dual(K(g;R)), sum deg g) of shift -s,
/// with components (-1)^{s j} times koszul_self_duality_matrix.
struct KoszulSelfDuality {
  ComplexPtr koszul;
  ComplexPtr target;
  ChainMap raw;        // textbook signs
  ChainMap corrected;  // chain map
};
KoszulSelfDuality koszul_self_duality(const Instance& inst);

/// sum_I (-1)^{rg + sum K} A^I_{1..r} dg*_K over r-subsets I, K = complement.
/// Keyed by K. Throws ConstructionError if it is not a cocycle.
ExtElement koszul_cohomology_generator(const Instance& inst);

/// Whether x (keyed by K, |K| = g) is killed by the transpose differential
/// (d_{g+1})^T of K(g; R).
bool is_koszul_cocycle(const Instance& inst, const ExtElement& x);

nlohmann::ordered_json ext_element_json(const ExtElement& x);

}  // namespace resolvent
