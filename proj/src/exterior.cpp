#include "resolvent/exterior.hpp"

#include <algorithm>

namespace resolvent {

std::vector<Subset> subsets_of_size(int n, int k) {
  std::vector<Subset> out;
  if (k < 0 || k > n) return out;
  Subset cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

Subset complement(const Subset& s, int n) {
  Subset out;
  for (int i = 1; i <= n; ++i)
    if (!std::binary_search(s.begin(), s.end(), i)) out.push_back(i);
  return out;
}

int subset_sum(const Subset& s) {
  int t = 0;
  for (int i : s) t += i;
  return t;
}

bool is_subset(const Subset& small, const Subset& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

Subset difference(const Subset& big, const Subset& small) {
  Subset out;
  std::set_difference(big.begin(), big.end(), small.begin(), small.end(), std::back_inserter(out));
  return out;
}

std::optional<int> merge_sign(const Subset& a, const Subset& b) {
  long long inversions = 0;
  for (int x : a)
    for (int y : b) {
      if (x == y) return std::nullopt;
      if (x > y) ++inversions;
    }
  return parity_sign(inversions);
}

Subset merged(const Subset& a, const Subset& b) {
  Subset out;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::string subset_tag(const Subset& s) {
  if (s.empty()) return "1";
  std::string t;
  for (int i : s) t += "dg" + std::to_string(i);
  return t;
}

}  // namespace resolvent
