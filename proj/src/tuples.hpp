#pragma once

#include <vector>

namespace lfc::detail {

// Calls fn(idx) for every index tuple with idx[k] < sizes[k], last index
// fastest. Nothing happens when some size is zero.
template <typename Fn>
void for_each_tuple(const std::vector<std::size_t>& sizes, Fn&& fn) {
  for (std::size_t s : sizes)
    if (s == 0) return;
  std::vector<std::size_t> idx(sizes.size(), 0);
  while (true) {
    fn(idx);
    std::size_t k = sizes.size();
    while (true) {
      if (k == 0) return;
      --k;
      if (++idx[k] < sizes[k]) break;
      idx[k] = 0;
    }
  }
}

}  // namespace lfc::detail
