#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "semiclass/quantum/unitary.hpp"

namespace semiclass::quantum {

/// Binary layout: "SCQMAT01", u64 rows, u64 cols, u32 row-major flag,
/// u32 reserved, then interleaved re/im doubles (little endian).
void write_matrix(std::ostream& os, const CMatrix& m, bool row_major = true);
CMatrix read_matrix(std::istream& is);

void write_matrix_file(const std::string& path, const CMatrix& m, bool row_major = true);
CMatrix read_matrix_file(const std::string& path);

/// CSV rows "index,real,imag" with the given first-column name.
void write_complex_csv(std::ostream& os, const std::string& index_name, int first_index,
                       const std::vector<Complex>& values);

}  // namespace semiclass::quantum
