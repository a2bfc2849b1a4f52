#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace resolvent {

/// Strictly increasing list of 1-based indices.
using Subset = std::vector<int>;

/// All k-subsets of {1..n} in lexicographic order.
std::vector<Subset> subsets_of_size(int n, int k);
/// {1..n} minus s.
Subset complement(const Subset& s, int n);
int subset_sum(const Subset& s);
bool is_subset(const Subset& small, const Subset& big);
/// big minus small (requires is_subset).
Subset difference(const Subset& big, const Subset& small);

/// Sign of the permutation that sorts the concatenation a ++ b; nullopt when
/// a and b intersect. This is the sorted-merge sign of dg_a * dg_b.
std::optional<int> merge_sign(const Subset& a, const Subset& b);
Subset merged(const Subset& a, const Subset& b);

/// (-1)^{k(k-1)/2}: the sign of reversing k letters.
inline int reversal_sign(int k) { return (k * (k - 1) / 2) % 2 ? -1 : 1; }
inline int parity_sign(long long e) { return (e % 2 + 2) % 2 ? -1 : 1; }

std::int64_t binomial(int n, int k);

/// "dg1dg3" style tag; "1" for the empty subset.
std::string subset_tag(const Subset& s);

}  // namespace resolvent
