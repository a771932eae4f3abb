#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace qlift {

/// Total function table H : [M] -> [N].
struct OracleTable {
  unsigned domain_size = 0;    // M
  unsigned codomain_size = 0;  // N
  std::vector<int> table;

  OracleTable() = default;
  OracleTable(unsigned m, unsigned n, std::vector<int> t);

  int operator()(int x) const { return table[size_t(x)]; }

  /// Table with index `idx` in the lexicographic enumeration of all N^M
  /// tables (entry 0 is the fastest-varying digit).
  static OracleTable from_index(unsigned m, unsigned n, uint64_t idx);
  static uint64_t table_count(unsigned m, unsigned n);  // N^M, throws on overflow
};

/// Base oracle with an ordered patch list; patch entries win over the base.
struct ReprogrammedOracle {
  const OracleTable* base = nullptr;
  std::vector<std::pair<int, int>> patch;  // (input, output), inputs distinct

  int operator()(int x) const {
    for (const auto& [px, py] : patch)
      if (px == x) return py;
    return (*base)(x);
  }
};

/// H_{x,y}: duplicate patch inputs are rejected.
ReprogrammedOracle reprogram(const OracleTable& base, const std::vector<int>& xs,
                             const std::vector<int>& ys);

/// Materialize a reprogrammed oracle as a plain table.
OracleTable materialize(const ReprogrammedOracle& o);

}  // namespace qlift
