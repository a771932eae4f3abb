#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qlift::statevec {

struct Register {
  std::string name;
  uint32_t dim = 1;
};

/// Ordered register list with mixed-radix index encoding. History and
/// control slots have per-slot dimension M*N + 1; the extra symbol (value
/// M*N) means "empty", giving set-valued registers a unique basis encoding.
class RegisterLayout {
 public:
  /// Default cap on the total dimension; override with QLIFT_AMP_CAP.
  static uint64_t memory_cap();

  int add(const std::string& name, uint32_t dim);
  void finalize();  // computes strides, enforces the memory cap

  int index_of(const std::string& name) const;  // -1 if absent
  const Register& reg(int i) const { return regs_[size_t(i)]; }
  size_t register_count() const { return regs_.size(); }
  uint64_t dim() const { return total_dim_; }
  bool finalized() const { return !strides_.empty(); }

  uint32_t digit(uint64_t idx, int reg) const {
    return uint32_t((idx / strides_[size_t(reg)]) % regs_[size_t(reg)].dim);
  }
  uint64_t with_digit(uint64_t idx, int reg, uint32_t v) const {
    uint64_t old = digit(idx, reg);
    return idx + (uint64_t(v) - uint64_t(old)) * strides_[size_t(reg)];
  }

  // role bookkeeping (filled by the layout builders)
  int input = -1;
  int output = -1;
  std::vector<int> history;  // per-slot register indices, fill order
  std::vector<int> control;  // canonical sorted contents
  std::vector<int> y_slots;  // verification answers, one per output index
  std::vector<int> x_out;
  std::vector<int> z_out;
  unsigned M = 0;
  unsigned N = 0;

  uint32_t slot_empty() const { return M * N; }
  uint32_t slot_pair(int x, int y) const { return uint32_t(x) * N + uint32_t(y); }
  int slot_x(uint32_t v) const { return int(v / N); }
  int slot_y(uint32_t v) const { return int(v % N); }

 private:
  std::vector<Register> regs_;
  std::vector<uint64_t> strides_;
  uint64_t total_dim_ = 0;
};

}  // namespace qlift::statevec
