#pragma once

#include <stdexcept>
#include <vector>

namespace qtransfer {

/// Thrown when the QL iteration fails to deflate an eigenvalue within the sweep cap.
class NonConvergence : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Eigenpairs of a real symmetric tridiagonal matrix; vectors stored column-major,
/// vectors[k * n + i] is component i of eigenvector k. Eigenvalues ascending.
template <typename Real>
struct TridiagonalEigen {
  std::vector<Real> values;
  std::vector<Real> vectors;
};

/// Implicit-shift QL on the tridiagonal matrix with the given diagonal and
/// off-diagonal (size n-1). At most `max_sweeps` QL sweeps per eigenvalue.
template <typename Real>
TridiagonalEigen<Real> tridiagonal_eigensolve(std::vector<Real> diagonal,
                                              std::vector<Real> off_diagonal,
                                              int max_sweeps = 50);

extern template TridiagonalEigen<double> tridiagonal_eigensolve(std::vector<double>,
                                                                std::vector<double>, int);
extern template TridiagonalEigen<long double> tridiagonal_eigensolve(std::vector<long double>,
                                                                     std::vector<long double>,
                                                                     int);

}  // namespace qtransfer
