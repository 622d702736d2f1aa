#include "semiclass/qsim/layout.hpp"

#include <set>

#include "semiclass/error.hpp"

namespace semiclass::qsim {

RegisterLayout::RegisterLayout(const std::vector<std::pair<std::string, int>>& registers, int cap) : cap_(cap) {
  std::set<std::string> names;
  for (const auto& [name, width] : registers) {
    if (width < 1) throw Error(ErrorKind::InvalidArgument, "register " + name + " must have width >= 1");
    if (!names.insert(name).second) throw Error(ErrorKind::InvalidArgument, "duplicate register " + name);
    regs_.push_back({name, width, total_});
    total_ += width;
  }
  if (total_ > cap_) {
    throw Error(ErrorKind::SizeCap, "layout needs " + std::to_string(total_) + " qubits, cap is " + std::to_string(cap_));
  }
}

const Register& RegisterLayout::reg(const std::string& name) const {
  for (const auto& r : regs_)
    if (r.name == name) return r;
  throw Error(ErrorKind::InvalidArgument, "unknown register " + name);
}

bool RegisterLayout::has(const std::string& name) const {
  for (const auto& r : regs_)
    if (r.name == name) return true;
  return false;
}

std::uint64_t RegisterLayout::basis(const std::vector<std::pair<std::string, std::uint64_t>>& values) const {
  std::uint64_t b = 0;
  for (const auto& [name, v] : values) {
    const Register& r = reg(name);
    if (v > r.mask()) throw Error(ErrorKind::InvalidArgument, "value does not fit register " + name);
    b = r.with_value(b, v);
  }
  return b;
}

}  // namespace semiclass::qsim
