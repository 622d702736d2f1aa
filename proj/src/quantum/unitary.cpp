#include "semiclass/quantum/unitary.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "semiclass/error.hpp"

namespace semiclass::quantum {

UnitaryMatrix::UnitaryMatrix(CMatrix entries, double tol) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw Error(ErrorKind::Dimension, "unitary matrix must be square");
  const double defect = unitarity_defect(m_);
  if (!(defect <= tol)) {
    std::ostringstream os;
    os << "matrix is not unitary (defect " << defect << ")";
    throw Error(ErrorKind::QuantizationFailure, os.str());
  }
}

double unitarity_defect(const CMatrix& a) {
  const CMatrix g = a.adjoint() * a - CMatrix::Identity(a.rows(), a.cols());
  return g.cwiseAbs().maxCoeff();
}

CMatrix dft_matrix(int n) {
  CMatrix f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      const long long idx = (static_cast<long long>(k) * j) % n;
      f(k, j) = std::polar(scale, -2.0 * std::numbers::pi * static_cast<double>(idx) / n);
    }
  }
  return f;
}

}  // namespace semiclass::quantum
