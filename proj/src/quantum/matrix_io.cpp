#include "semiclass/quantum/matrix_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "semiclass/error.hpp"

namespace semiclass::quantum {
namespace {

constexpr char kMagic[8] = {'S', 'C', 'Q', 'M', 'A', 'T', '0', '1'};

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw Error(ErrorKind::Io, "truncated matrix file");
  return v;
}

}  // namespace

void write_matrix(std::ostream& os, const CMatrix& m, bool row_major) {
  os.write(kMagic, sizeof(kMagic));
  put<std::uint64_t>(os, static_cast<std::uint64_t>(m.rows()));
  put<std::uint64_t>(os, static_cast<std::uint64_t>(m.cols()));
  put<std::uint32_t>(os, row_major ? 1u : 0u);
  put<std::uint32_t>(os, 0u);
  auto emit = [&](const Complex& z) {
    put<double>(os, z.real());
    put<double>(os, z.imag());
  };
  if (row_major) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) emit(m(i, j));
  } else {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i) emit(m(i, j));
  }
  if (!os) throw Error(ErrorKind::Io, "failed to write matrix");
}

CMatrix read_matrix(std::istream& is) {
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) throw Error(ErrorKind::Io, "bad matrix magic");
  const auto rows = get<std::uint64_t>(is);
  const auto cols = get<std::uint64_t>(is);
  const auto row_major = get<std::uint32_t>(is);
  get<std::uint32_t>(is);
  if (rows > (1u << 26) || cols > (1u << 26)) throw Error(ErrorKind::Io, "matrix header too large");
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  auto take = [&]() {
    const double re = get<double>(is);
    const double im = get<double>(is);
    return Complex(re, im);
  };
  if (row_major) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = take();
  } else {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = take();
  }
  return m;
}

void write_matrix_file(const std::string& path, const CMatrix& m, bool row_major) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot open " + path);
  write_matrix(os, m, row_major);
}

CMatrix read_matrix_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::Io, "cannot open " + path);
  return read_matrix(is);
}

void write_complex_csv(std::ostream& os, const std::string& index_name, int first_index,
                       const std::vector<Complex>& values) {
  os << index_name << ",real,imag\n";
  const auto old = os.precision(17);
  for (std::size_t i = 0; i < values.size(); ++i) {
    os << first_index + static_cast<int>(i) << ',' << values[i].real() << ',' << values[i].imag() << '\n';
  }
  os.precision(old);
}

}  // namespace semiclass::quantum
