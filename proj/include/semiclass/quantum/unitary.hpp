#pragma once

#include <Eigen/Dense>
#include <complex>

namespace semiclass::quantum {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Dense N x N unitary. Construction checks unitarity at the given tolerance.
class UnitaryMatrix {
 public:
  UnitaryMatrix() = default;
  /// Throws QuantizationFailure when max |U^dag U - I| exceeds tol.
  explicit UnitaryMatrix(CMatrix entries, double tol = 1e-10);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

 private:
  CMatrix m_;
};

/// max_ij |(A^dag A - I)_ij|
double unitarity_defect(const CMatrix& a);

/// (F_n)_{kj} = exp(-2 pi i k j / n) / sqrt(n), phases reduced exactly mod n.
CMatrix dft_matrix(int n);

}  // namespace semiclass::quantum
