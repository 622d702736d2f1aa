#include "semiclass/quantum/quantize.hpp"

#include <cmath>
#include <numbers>

#include "semiclass/error.hpp"

namespace semiclass::quantum {

using classical::CatMatrix;
using classical::MapKind;
using classical::MapModel;

namespace {

// Rescales so that U^dag U has unit mean diagonal.
CMatrix normalize_columns_globally(CMatrix u) {
  const double mean = (u.adjoint() * u).diagonal().real().mean();
  if (!(mean > 0.0)) throw Error(ErrorKind::QuantizationFailure, "quantized matrix vanishes");
  u /= std::sqrt(mean);
  return u;
}

}  // namespace

UnitaryMatrix quantize_cat(const CatMatrix& m, int N) {
  if (N < 1) throw Error(ErrorKind::Dimension, "N must be >= 1");
  if (m.det() != 1) throw Error(ErrorKind::InvalidArgument, "cat matrix must have determinant 1");
  if (m.t12 == 0) throw Error(ErrorKind::SingularGeneratingFunction, "quantization needs t12 != 0");
  if (!m.quantizable()) {
    throw Error(ErrorKind::NonQuantizable, "t11*t12 and t21*t22 must both be even");
  }
  const long long period = 2 * std::llabs(m.t12);
  // N S(Q1/N, Q2/N + j) = num / (2 t12 N) with integer num.
  const long long den = 2 * m.t12 * static_cast<long long>(N);
  const long long aden = std::llabs(den);
  const Complex pref = std::sqrt(Complex(0.0, static_cast<double>(m.t12) / N)) / static_cast<double>(period);
  const double two_pi = 2.0 * std::numbers::pi;

  CMatrix u(N, N);
#pragma omp parallel for schedule(static)
  for (int q1 = 0; q1 < N; ++q1) {
    for (int q2 = 0; q2 < N; ++q2) {
      Complex acc = 0.0;
      for (long long j = 0; j < period; ++j) {
        const __int128 y = q2 + j * static_cast<long long>(N);
        __int128 num = static_cast<__int128>(m.t11) * q1 * q1 - 2 * static_cast<__int128>(q1) * y +
                       static_cast<__int128>(m.t22) * y * y;
        if (den < 0) num = -num;
        long long r = static_cast<long long>(num % aden);
        if (r < 0) r += aden;
        acc += std::polar(1.0, two_pi * static_cast<double>(r) / static_cast<double>(aden));
      }
      u(q1, q2) = pref * acc;
    }
  }
  return UnitaryMatrix(normalize_columns_globally(std::move(u)), 1e-10);
}

UnitaryMatrix quantize_baker(int N) {
  if (N < 2 || N % 2 != 0) throw Error(ErrorKind::Dimension, "baker quantization needs even N >= 2");
  const int h = N / 2;
  const CMatrix fh = dft_matrix(h);
  CMatrix block = CMatrix::Zero(N, N);
  block.topLeftCorner(h, h) = fh;
  block.bottomRightCorner(h, h) = fh;
  CMatrix u = dft_matrix(N).adjoint() * block;
  return UnitaryMatrix(std::move(u), 1e-12);
}

UnitaryMatrix quantize_kicked(const MapModel& model, int N) {
  if (N < 1) throw Error(ErrorKind::Dimension, "N must be >= 1");
  const classical::KickedParams& kp = model.kicked_params();
  const double two_pi = 2.0 * std::numbers::pi;
  const double inv_hbar = N / two_pi;
  CVector kick(N);
  CVector free(N);
  for (int j = 0; j < N; ++j) {
    const double q = two_pi * j / N;
    kick(j) = std::polar(1.0, -kp.k * classical::potential_value(kp.potential, q) * inv_hbar);
    // T p_j^2 / (2 hbar) = pi T j^2 / N
    const double jj = static_cast<double>(j) * j;
    free(j) = std::polar(1.0, -std::numbers::pi * kp.T * jj / N);
  }
  const CMatrix f = dft_matrix(N);
  CMatrix u = f.adjoint() * free.asDiagonal() * f * kick.asDiagonal();
  return UnitaryMatrix(std::move(u), 1e-12);
}

UnitaryMatrix quantize(const MapModel& model, int N) {
  switch (model.kind()) {
    case MapKind::Cat: return quantize_cat(model.cat_matrix(), N);
    case MapKind::Baker: return quantize_baker(N);
    case MapKind::Kicked: return quantize_kicked(model, N);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown map kind");
}

bool quantization_defined(const MapModel& model, int N) {
  if (N < 1) return false;
  switch (model.kind()) {
    case MapKind::Cat: return model.cat_matrix().quantizable();
    case MapKind::Baker: return N % 2 == 0;
    case MapKind::Kicked: return true;
  }
  return false;
}

}  // namespace semiclass::quantum
