#pragma once

#include <string>
#include <vector>

#include "qlift/verify.hpp"

namespace qlift::verify {

/// Experiment manifest: a list of (circuit, game) cells checked under one
/// mode. Circuits come from files or named builders; paths are relative to
/// the manifest file.
struct Manifest {
  std::string name;
  std::string mode;  // "reprogram" | "noisy" | "lifting"
  double tolerance = 1e-9;
  bool exhaustive_schedules = true;
  std::vector<mpq_class> noise_levels;
  struct Cell {
    AdversaryCircuit circuit;
    GameSpec game;
  };
  std::vector<Cell> cells;
  uint64_t seed = 0;

  static Manifest load(const std::string& path);
};

struct ManifestResult {
  std::vector<InequalityReport> reports;
  bool pass = true;
};

ManifestResult run_manifest(const Manifest& m, const GridOptions& opts = {});

/// Columns: cell id, H index, G index, xo, lhs, rhs, margin, mode, seed.
std::string to_csv(const ManifestResult& r);

}  // namespace qlift::verify
