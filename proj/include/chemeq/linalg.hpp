#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace chemeq {

class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(std::size_t column, const std::string& what)
      : std::runtime_error(what), column_(column) {}
  /// Column (unknown) whose pivot vanished.
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// Small dense square system, row-major.
struct DenseSystem {
  std::size_t dim = 0;
  std::vector<double> matrix;
  std::vector<double> rhs;

  explicit DenseSystem(std::size_t n = 0) : dim(n), matrix(n * n, 0.0), rhs(n, 0.0) {}
  double& operator()(std::size_t r, std::size_t c) { return matrix[r * dim + c]; }
  double operator()(std::size_t r, std::size_t c) const { return matrix[r * dim + c]; }
};

inline constexpr double kPivotFloor = 1e-300;

/// Gaussian elimination with partial (row) pivoting. Throws
/// SingularMatrixError when a pivot magnitude falls below kPivotFloor.
std::vector<double> solve_dense(DenseSystem system);

}  // namespace chemeq
