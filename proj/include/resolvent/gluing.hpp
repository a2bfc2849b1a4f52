#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resolvent/koszul.hpp"
#include "resolvent/tate.hpp"

namespace resolvent {

/// epsilon = sum_I (-1)^{k_1+...+k_g} A^I_{1..r} dg*_K over r-subsets I,
/// K the complement; keyed by K, coefficients of the word dg*_{k_1}...dg*_{k_g}.
ExtElement epsilon(const Instance& inst);

/// Coordinates of a word-form element of (F_g)* in the dual basis of `module`.
std::vector<Poly> dual_coordinates(const ExtElement& word, const FreeMod& module, const PolyCtxPtr& ring);

struct KernelCheck {
  bool ok = true;
  std::vector<std::pair<std::string, Poly>> nonzero;  // (dual label, coefficient)
};
/// d(epsilon) in (F_{g+1})*, using the horizontal map of the dual bicomplex.
KernelCheck check_horizontal_kernel(const Instance& inst, const DualTate& Fd, const ExtElement& eps);

/// Word-form action dg_P T^(q) . dg*_K T*^l = (-1)^z prod_j C(l_j, q_j) dg*_V T*^{l-q}
/// when P is contained in K and q <= l, where V = K - P and z is the sign of
/// sorting P ++ V into K. nullopt when the action is zero.
struct Action {
  std::int64_t coeff;
  TateLabel label;
};
std::optional<Action> module_action(const TateLabel& a, const TateLabel& lambda);

/// twist(dual(F), sum deg g - sum deg f): the target of the gluing map.
GradedComplex gluing_target(const Instance& inst, const TateResolution& F);

/// v : F -> F*[-g], eta -> (-1)^{n(g-1)} eta . eps on F_n, written in the
/// dual basis. `unsigned_` drops the (-1)^{n(g-1)} factor.
ChainMap gluing_map(const Instance& inst, const TateResolution& F, const ComplexPtr& target, const ExtElement& eps,
                    bool unsigned_ = false);

struct OmegaCheck {
  std::optional<int> sigma;
  std::vector<int> agree_plus;   // j with omega_{g-j} = omega_j^T
  std::vector<int> agree_minus;  // j with omega_{g-j} = -omega_j^T
};
/// Compares omega_{g-j} with +-omega_j^T for 0 <= j <= g.
OmegaCheck check_omega_transpose(const Instance& inst, const ChainMap& v);

/// Diagonal sign pair (a_n on the F_n block, b_n on the F* block) of phi_n.
std::pair<int, int> phi_signs(int n, int sigma);

/// phi : T -> twist(shift(dual(T), g-1), sum deg g - sum deg f), anti-diagonal
/// +-identity blocks with signs from phi_signs.
ChainMap self_duality_iso(const Instance& inst, const ComplexPtr& T, int sigma);
bool is_signed_permutation(const HomogMatrix& m);

struct UnitEntry {
  int index;
  std::string row, col;
};
/// First differential entry with a nonzero constant term.
std::optional<UnitEntry> minimality_check(const GradedComplex& c);

/// Indices where T fails to reproduce F: for n >= g the F_n block of D_n
/// must be -d_n (and D_n = -d_n outright for n > g); for n <= -1 it must be
/// the differential of the twisted dual.
std::vector<int> check_tail_agreement(const Instance& inst, const TateResolution& F, const GradedComplex& Fstar,
                                      const GradedComplex& T, const std::map<int, std::size_t>& target_block_size);

/// Everything built by the gluing step on the symmetric window [g-1-H, H].
struct SelfDualResolution {
  int H = 0;
  TateResolution F;
  DualTate Fd;
  ComplexPtr Fstar;  // twisted dual, target of v
  ExtElement eps;
  ChainMap v;
  ChainMapReport v_report;
  OmegaCheck omega;
  ComplexPtr T;
  std::map<int, std::size_t> target_block_size;
  ChainMap phi;
  ChainMapReport phi_report;
};

/// Throws ConstructionError (or ChainMapError) when v is not a chain map or
/// no uniform sigma exists; phi failures are recorded, not thrown.
SelfDualResolution build_self_dual_resolution(const Instance& inst, int H);

}  // namespace resolvent
