#pragma once
#include <stdexcept>
#include <vector>

#include "geores/ring.hpp"

namespace geores {

// Solve sum_m c_m * nodes_l^m = rhs_l (Bjorck-Pereyra, O(n^2) ring operations).
// Works over any commutative ring in which pairwise node differences are
// invertible; `invert` supplies that inverse (ring_inv for fields, Newton
// inversion for truncated series).
template <class K, class Inv>
std::vector<K> vandermonde_solve(const std::vector<K>& nodes, const std::vector<K>& rhs, Inv invert) {
  if (nodes.size() != rhs.size() || nodes.empty())
    throw std::domain_error("vandermonde_solve needs matching nonempty inputs");
  size_t n = nodes.size();
  std::vector<K> f = rhs;
  for (size_t k = 0; k + 1 < n; ++k) {
    for (size_t i = n - 1; i > k; --i) {
      K diff = nodes[i] - nodes[i - k - 1];
      f[i] = (f[i] - f[i - 1]) * invert(diff);
    }
  }
  for (size_t k = n - 1; k-- > 0;) {
    for (size_t i = k; i + 1 < n; ++i) f[i] = f[i] - nodes[k] * f[i + 1];
  }
  return f;
}

template <class K>
std::vector<K> vandermonde_solve(const std::vector<K>& nodes, const std::vector<K>& rhs) {
  return vandermonde_solve(nodes, rhs, [](const K& x) {
    if (ring_is_zero(x)) throw std::domain_error("repeated vandermonde node");
    return ring_inv(x);
  });
}

} // namespace geores
