#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "qlift/layout.hpp"

namespace qlift::statevec {

using cdouble = std::complex<double>;

struct Amp {
  uint64_t idx;
  cdouble a;
};

/// Sparse amplitude vector over a register layout. States are immutable
/// values; operations return new states. Sub-normalized states arise after
/// projective branches, so norm2() may be below 1.
class QuantumState {
 public:
  QuantumState() = default;
  static QuantumState initial(const RegisterLayout* lay);
  static QuantumState basis(const RegisterLayout* lay, uint64_t idx);
  /// Sorts by index and merges duplicates (deterministic summation order).
  static QuantumState from_amps(const RegisterLayout* lay, std::vector<Amp> amps);

  const RegisterLayout* layout() const { return layout_; }
  const std::vector<Amp>& amps() const { return amps_; }
  double norm2() const;
  bool empty() const { return amps_.empty(); }

 private:
  const RegisterLayout* layout_ = nullptr;
  std::vector<Amp> amps_;  // sorted by idx
};

/// Per-thread simulation health counters (criteria live on these).
struct SimStats {
  double max_unitary_norm_drift = 0.0;
  uint64_t unitary_applications = 0;
  void reset() { *this = SimStats{}; }
};
SimStats& stats();

struct ControlCond {
  int reg;
  uint32_t value;
};

/// Oracle answer for a basis component; controlled queries resolve the
/// component's control-register patch inside this callback.
using LookupFn = std::function<int(uint64_t idx, int x)>;

/// Unitary on the joint space of `targets` (matrix is D x D with D the
/// product of target dims, column index encodes the first target as the
/// lowest digit), applied only where all control conditions hold.
QuantumState apply_unitary(const QuantumState& s, const std::vector<int>& targets,
                           const std::vector<std::vector<cdouble>>& matrix,
                           const std::vector<ControlCond>& controls);

/// |x>|y> -> |x>|y + f(x) mod N'> on (in_reg, out_reg); a permutation.
QuantumState apply_query(const QuantumState& s, int in_reg, int out_reg, const LookupFn& f);

/// Purified classical query: apply_query plus a copy of (x, f(x)) into
/// history slot `slot_reg`. Throws DuplicateClassicalQuery if any basis
/// component's input already appears in one of `guard_slots`, and
/// SlotOccupied if the slot is not empty.
QuantumState classical_query(const QuantumState& s, int in_reg, int out_reg, int slot_reg,
                             const std::vector<int>& guard_slots, const LookupFn& f);

/// Born split of the state by the value of one register; amplitude mass is
/// preserved across the returned branches.
std::vector<std::pair<uint32_t, QuantumState>> split_by_register(const QuantumState& s, int reg);

/// Full computational-basis measurement: one branch per populated basis
/// state, each carrying its own amplitude.
std::vector<std::pair<uint64_t, QuantumState>> dephase(const QuantumState& s);

/// Noisy-oracle step per the coin: quantum answer applies the query once;
/// a classical answer measures the input register (one branch per value)
/// and then answers. Branch weights are carried by the amplitudes; the
/// caller owns the (1-p) / p coin weights.
struct NoisyBranch {
  QuantumState state;
  bool classical;
  int measured_input;  // -1 for the quantum branch
};
std::vector<NoisyBranch> noisy_query(const QuantumState& s, int in_reg, int out_reg,
                                     const LookupFn& f, bool classical_coin);

struct ControlUpdateResult {
  QuantumState state;
  double abort_weight = 0.0;
};

/// Two-outcome projective check "source value not in control list", then
/// insertion of (x, g(x)) in canonical sorted order. The contained branch's
/// mass is removed and reported as abort weight.
ControlUpdateResult update_control(const QuantumState& s, int src_reg,
                                   const std::function<int(int)>& g);

/// Decoded control-list view of one basis component.
std::vector<std::pair<int, int>> control_pairs(const RegisterLayout& lay, uint64_t idx);

}  // namespace qlift::statevec
