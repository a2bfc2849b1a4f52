#pragma once

#include <map>
#include <vector>

#include "resolvent/complex.hpp"
#include "resolvent/exterior.hpp"
#include "resolvent/instance.hpp"

namespace resolvent {

/// dg_S T^(e): exterior subset times divided-power multi-index.
struct TateLabel {
  Subset ext;
  std::vector<int> div;  // e_1..e_r

  int weight() const;  // sum e_j
  int hom_degree() const { return static_cast<int>(ext.size()) + 2 * weight(); }
  std::string tag() const;
  auto operator<=>(const TateLabel&) const = default;
};

int tate_internal_degree(const Instance& inst, const TateLabel& l);

/// Basis of F_n: ordered by weight, then subset, then multi-index.
std::vector<TateLabel> tate_basis(int s, int r, int n);
/// Coefficient of t^n in (1+t)^s / (1-t^2)^r.
std::int64_t tate_rank_formula(int s, int r, int n);

/// Element of the Tate algebra over R.
using TateElement = std::map<TateLabel, Poly>;

/// Product in R<dg, T>: exterior sorted-merge sign times prod_j C(a_j+b_j, a_j).
TateElement tate_product(const TateElement& a, const TateElement& b, const Instance& inst);
/// The DG differential, computed directly from the derivation rule.
TateElement tate_boundary(const TateElement& x, const Instance& inst);

/// The Tate resolution F of R/J over R on [0, top], closed below. Each d_n is
/// the sum of the Koszul (vertical) block and the signed divided-power
/// (horizontal) block:
///   d(dg_S T^(e)) = sum_u (-1)^{u+1} g_{S_u} dg_{S-S_u} T^(e)
///                 + (-1)^{|S|} sum_{j,i} a_{ji} (dg_S dg_i) T^(e - delta_j).
struct TateResolution {
  int top = 0;
  std::map<int, std::vector<TateLabel>> labels;
  ComplexPtr complex;
  std::map<int, HomogMatrix> vertical;
  std::map<int, HomogMatrix> horizontal;
};

/// Throws ConstructionError when p <= top / 2 (binomials could vanish).
TateResolution tate_resolution(const Instance& inst, int top);

/// F* = dual(F) on [-top, 0], with the two maps of the dual bicomplex built
/// directly in the dual basis: mu_x (right multiplication by sum g_i dg*_i)
/// and d (dg*_i -> sum_j a_{ji} T*_j, a right contraction). Keys are the dual
/// complex indices m, maps (F_{-m})* -> (F_{1-m})*.
struct DualTate {
  ComplexPtr complex;
  std::map<int, HomogMatrix> mu_x;
  std::map<int, HomogMatrix> d;
};

/// Builds mu_x and d from their definitions. The dual basis element of
/// dg_K T^(e) is c(|K|) dg*_{k_1}...dg*_{k_m} T*^e with c(m) = (-1)^{m(m-1)/2}.
DualTate dual_tate(const Instance& inst, const TateResolution& F);

struct DualTateCheck {
  bool mu_x_is_vertical_transpose = true;
  bool d_is_horizontal_transpose = true;
  std::vector<int> mismatches;
  bool ok() const { return mu_x_is_vertical_transpose && d_is_horizontal_transpose; }
};
DualTateCheck check_dual_tate(const TateResolution& F, const DualTate& Fd);

}  // namespace resolvent
