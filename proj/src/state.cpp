#include "qlift/state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "qlift/errors.hpp"

namespace qlift::statevec {

uint64_t RegisterLayout::memory_cap() {
  if (const char* env = std::getenv("QLIFT_AMP_CAP")) {
    uint64_t v = std::strtoull(env, nullptr, 10);
    if (v > 0) return v;
  }
  return uint64_t(1) << 22;
}

int RegisterLayout::add(const std::string& name, uint32_t dim) {
  require(strides_.empty(), Errc::LayoutMismatch, "layout already finalized");
  require(dim >= 1, Errc::LayoutMismatch, "register dimension must be >= 1");
  require(index_of(name) < 0, Errc::LayoutMismatch, "duplicate register name: " + name);
  regs_.push_back({name, dim});
  return int(regs_.size()) - 1;
}

void RegisterLayout::finalize() {
  require(strides_.empty(), Errc::LayoutMismatch, "layout already finalized");
  strides_.resize(regs_.size());
  uint64_t acc = 1;
  const uint64_t cap = memory_cap();
  for (size_t i = 0; i < regs_.size(); ++i) {
    strides_[i] = acc;
    require(acc <= cap / regs_[i].dim + 1 && acc * regs_[i].dim <= cap, Errc::MemoryCapExceeded,
            "layout dimension exceeds the amplitude cap");
    acc *= regs_[i].dim;
  }
  total_dim_ = acc;
}

int RegisterLayout::index_of(const std::string& name) const {
  for (size_t i = 0; i < regs_.size(); ++i)
    if (regs_[i].name == name) return int(i);
  return -1;
}

QuantumState QuantumState::initial(const RegisterLayout* lay) {
  uint64_t idx = 0;
  for (int slot : lay->history) idx = lay->with_digit(idx, slot, lay->slot_empty());
  for (int slot : lay->control) idx = lay->with_digit(idx, slot, lay->slot_empty());
  return basis(lay, idx);
}

QuantumState QuantumState::basis(const RegisterLayout* lay, uint64_t idx) {
  QuantumState s;
  s.layout_ = lay;
  s.amps_.push_back({idx, cdouble(1.0, 0.0)});
  return s;
}

QuantumState QuantumState::from_amps(const RegisterLayout* lay, std::vector<Amp> amps) {
  std::sort(amps.begin(), amps.end(), [](const Amp& a, const Amp& b) { return a.idx < b.idx; });
  std::vector<Amp> merged;
  merged.reserve(amps.size());
  for (const Amp& a : amps) {
    if (!merged.empty() && merged.back().idx == a.idx)
      merged.back().a += a.a;
    else
      merged.push_back(a);
  }
  std::erase_if(merged, [](const Amp& a) { return a.a == cdouble(0.0, 0.0); });
  QuantumState s;
  s.layout_ = lay;
  s.amps_ = std::move(merged);
  return s;
}

double QuantumState::norm2() const {
  double n = 0;
  for (const Amp& a : amps_) n += std::norm(a.a);
  return n;
}

SimStats& stats() {
  thread_local SimStats s;
  return s;
}

namespace {

bool controls_match(const RegisterLayout& lay, uint64_t idx,
                    const std::vector<ControlCond>& controls) {
  for (const auto& c : controls)
    if (lay.digit(idx, c.reg) != c.value) return false;
  return true;
}

}  // namespace

QuantumState apply_unitary(const QuantumState& s, const std::vector<int>& targets,
                           const std::vector<std::vector<cdouble>>& matrix,
                           const std::vector<ControlCond>& controls) {
  const RegisterLayout& lay = *s.layout();
  uint64_t d = 1;
  for (int t : targets) d *= lay.reg(t).dim;
  require(matrix.size() == d, Errc::LayoutMismatch, "matrix dimension mismatch");

  std::vector<Amp> out;
  out.reserve(s.amps().size() * 2);
  for (const Amp& amp : s.amps()) {
    if (!controls_match(lay, amp.idx, controls)) {
      out.push_back(amp);
      continue;
    }
    // column index: first target register is the lowest mixed-radix digit
    uint64_t col = 0, mult = 1;
    for (int t : targets) {
      col += mult * lay.digit(amp.idx, t);
      mult *= lay.reg(t).dim;
    }
    for (uint64_t row = 0; row < d; ++row) {
      cdouble m = matrix[row][col];
      if (m == cdouble(0.0, 0.0)) continue;
      uint64_t idx = amp.idx, rem = row;
      for (int t : targets) {
        idx = lay.with_digit(idx, t, uint32_t(rem % lay.reg(t).dim));
        rem /= lay.reg(t).dim;
      }
      out.push_back({idx, m * amp.a});
    }
  }
  QuantumState next = QuantumState::from_amps(s.layout(), std::move(out));
  double drift = std::abs(next.norm2() - s.norm2());
  auto& st = stats();
  st.unitary_applications++;
  st.max_unitary_norm_drift = std::max(st.max_unitary_norm_drift, drift);
  require(drift <= 1e-9, Errc::LayoutMismatch, "unitary application lost norm");
  return next;
}

QuantumState apply_query(const QuantumState& s, int in_reg, int out_reg, const LookupFn& f) {
  const RegisterLayout& lay = *s.layout();
  const uint32_t n = lay.reg(out_reg).dim;
  std::vector<Amp> out;
  out.reserve(s.amps().size());
  for (const Amp& amp : s.amps()) {
    int x = int(lay.digit(amp.idx, in_reg));
    uint32_t y = lay.digit(amp.idx, out_reg);
    uint32_t y2 = (y + uint32_t(f(amp.idx, x))) % n;
    out.push_back({lay.with_digit(amp.idx, out_reg, y2), amp.a});
  }
  return QuantumState::from_amps(s.layout(), std::move(out));
}

QuantumState classical_query(const QuantumState& s, int in_reg, int out_reg, int slot_reg,
                             const std::vector<int>& guard_slots, const LookupFn& f) {
  const RegisterLayout& lay = *s.layout();
  for (const Amp& amp : s.amps()) {
    require(lay.digit(amp.idx, slot_reg) == lay.slot_empty(), Errc::SlotOccupied,
            "history slot already holds a pair");
    int x = int(lay.digit(amp.idx, in_reg));
    for (int g : guard_slots) {
      uint32_t v = lay.digit(amp.idx, g);
      if (v != lay.slot_empty() && lay.slot_x(v) == x)
        throw Error(Errc::DuplicateClassicalQuery,
                    "classical query repeats input " + std::to_string(x));
    }
  }
  QuantumState mid = apply_query(s, in_reg, out_reg, f);
  std::vector<Amp> out;
  out.reserve(mid.amps().size());
  for (const Amp& amp : mid.amps()) {
    int x = int(lay.digit(amp.idx, in_reg));
    uint32_t pair = lay.slot_pair(x, f(amp.idx, x));
    out.push_back({lay.with_digit(amp.idx, slot_reg, pair), amp.a});
  }
  return QuantumState::from_amps(s.layout(), std::move(out));
}

std::vector<std::pair<uint32_t, QuantumState>> split_by_register(const QuantumState& s, int reg) {
  const RegisterLayout& lay = *s.layout();
  std::vector<std::vector<Amp>> buckets(lay.reg(reg).dim);
  for (const Amp& amp : s.amps()) buckets[lay.digit(amp.idx, reg)].push_back(amp);
  std::vector<std::pair<uint32_t, QuantumState>> out;
  for (uint32_t v = 0; v < buckets.size(); ++v)
    if (!buckets[v].empty())
      out.emplace_back(v, QuantumState::from_amps(s.layout(), std::move(buckets[v])));
  return out;
}

std::vector<std::pair<uint64_t, QuantumState>> dephase(const QuantumState& s) {
  std::vector<std::pair<uint64_t, QuantumState>> out;
  out.reserve(s.amps().size());
  for (const Amp& amp : s.amps())
    out.emplace_back(amp.idx, QuantumState::from_amps(s.layout(), {amp}));
  return out;
}

std::vector<NoisyBranch> noisy_query(const QuantumState& s, int in_reg, int out_reg,
                                     const LookupFn& f, bool classical_coin) {
  std::vector<NoisyBranch> out;
  if (!classical_coin) {
    out.push_back({apply_query(s, in_reg, out_reg, f), false, -1});
    return out;
  }
  for (auto& [x, branch] : split_by_register(s, in_reg))
    out.push_back({apply_query(branch, in_reg, out_reg, f), true, int(x)});
  return out;
}

std::vector<std::pair<int, int>> control_pairs(const RegisterLayout& lay, uint64_t idx) {
  std::vector<std::pair<int, int>> pairs;
  for (int slot : lay.control) {
    uint32_t v = lay.digit(idx, slot);
    if (v != lay.slot_empty()) pairs.emplace_back(lay.slot_x(v), lay.slot_y(v));
  }
  return pairs;
}

ControlUpdateResult update_control(const QuantumState& s, int src_reg,
                                   const std::function<int(int)>& g) {
  const RegisterLayout& lay = *s.layout();
  ControlUpdateResult res;
  std::vector<Amp> surviving;
  surviving.reserve(s.amps().size());
  for (const Amp& amp : s.amps()) {
    int x = int(lay.digit(amp.idx, src_reg));
    auto pairs = control_pairs(lay, amp.idx);
    bool contained = std::any_of(pairs.begin(), pairs.end(),
                                 [&](const auto& p) { return p.first == x; });
    if (contained) {
      res.abort_weight += std::norm(amp.a);
      continue;
    }
    require(pairs.size() < lay.control.size(), Errc::ControlFull, "control register is full");
    pairs.emplace_back(x, g(x));
    std::sort(pairs.begin(), pairs.end());
    uint64_t idx = amp.idx;
    for (size_t i = 0; i < lay.control.size(); ++i) {
      uint32_t v = i < pairs.size() ? lay.slot_pair(pairs[i].first, pairs[i].second)
                                    : lay.slot_empty();
      idx = lay.with_digit(idx, lay.control[i], v);
    }
    surviving.push_back({idx, amp.a});
  }
  res.state = QuantumState::from_amps(s.layout(), std::move(surviving));
  return res;
}

}  // namespace qlift::statevec
