#include "chemeq/linalg.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace chemeq {

std::vector<double> solve_dense(DenseSystem sys) {
  const std::size_t n = sys.dim;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(sys(r, k)) > std::abs(sys(piv, k))) piv = r;
    }
    if (!(std::abs(sys(piv, k)) >= kPivotFloor)) {
      throw SingularMatrixError(k, "singular linear system at column " + std::to_string(k));
    }
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(sys(k, c), sys(piv, c));
      std::swap(sys.rhs[k], sys.rhs[piv]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = sys(r, k) / sys(k, k);
      if (f == 0.0) continue;
      for (std::size_t c = k; c < n; ++c) sys(r, c) -= f * sys(k, c);
      sys.rhs[r] -= f * sys.rhs[k];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double acc = sys.rhs[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= sys(i, c) * x[c];
    x[i] = acc / sys(i, i);
  }
  return x;
}

}  // namespace chemeq
