#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace semiclass::qsim {

/// Register occupying qubits [offset, offset + width); qubit offset is the
/// least significant bit of the register value.
struct Register {
  std::string name;
  int width = 0;
  int offset = 0;

  std::uint64_t mask() const { return (std::uint64_t{1} << width) - 1; }
  std::uint64_t value(std::uint64_t basis) const { return (basis >> offset) & mask(); }
  std::uint64_t with_value(std::uint64_t basis, std::uint64_t v) const {
    return (basis & ~(mask() << offset)) | ((v & mask()) << offset);
  }
};

class RegisterLayout {
 public:
  static constexpr int kDefaultCap = 26;

  RegisterLayout() = default;
  /// Registers are packed in the given order starting at qubit 0.
  explicit RegisterLayout(const std::vector<std::pair<std::string, int>>& registers, int cap = kDefaultCap);

  const Register& reg(const std::string& name) const;
  bool has(const std::string& name) const;
  const std::vector<Register>& registers() const { return regs_; }
  int total_qubits() const { return total_; }
  std::uint64_t dim() const { return std::uint64_t{1} << total_; }
  int cap() const { return cap_; }

  /// Basis index from (name, value) pairs; unnamed registers are zero.
  std::uint64_t basis(const std::vector<std::pair<std::string, std::uint64_t>>& values) const;

 private:
  std::vector<Register> regs_;
  int total_ = 0;
  int cap_ = kDefaultCap;
};

}  // namespace semiclass::qsim
