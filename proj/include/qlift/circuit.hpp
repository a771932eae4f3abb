#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qlift/layout.hpp"
#include "qlift/state.hpp"

namespace qlift::statevec {

using Matrix = std::vector<std::vector<cdouble>>;

/// One unitary step: explicit matrix over named work/input/output registers,
/// optionally applied only where all (register == value) conditions hold.
/// `spec` keeps the named construction it was built from for serialization.
struct UnitaryStep {
  std::vector<std::string> targets;
  Matrix matrix;
  std::vector<std::pair<std::string, uint32_t>> controls;
  nlohmann::json spec;  // empty -> serialize the raw matrix
};

struct QueryStep {
  bool classical = false;
};

using Step = std::variant<UnitaryStep, QueryStep>;

/// A static hybrid adversary circuit. The query pattern is fixed up front;
/// "input"/"output" name the query registers, everything else is work space.
/// `x_out` names the registers holding the answer vector.
struct AdversaryCircuit {
  std::string name;
  unsigned M = 2;
  unsigned N = 2;
  unsigned k = 1;
  std::vector<Register> work;
  std::vector<Step> steps;
  std::vector<std::string> x_out;
  std::vector<std::string> z_out;

  unsigned quantum_queries() const;
  unsigned classical_queries() const;
  /// true at classical positions, circuit order
  std::vector<bool> classical_pattern() const;
  void validate() const;

  nlohmann::json to_json() const;
  static AdversaryCircuit from_json(const nlohmann::json& j);
  static AdversaryCircuit load(const std::string& path);
};

// Named unitary constructions. All lower to explicit matrices at build time.
UnitaryStep op_add_const(const std::string& reg, uint32_t dim, uint32_t amount,
                         std::vector<std::pair<std::string, uint32_t>> controls = {});
UnitaryStep op_copy_add(const std::string& src, uint32_t src_dim, const std::string& dst,
                        uint32_t dst_dim,
                        std::vector<std::pair<std::string, uint32_t>> controls = {});
UnitaryStep op_sub_from(const std::string& src, uint32_t src_dim, const std::string& dst,
                        uint32_t dst_dim,
                        std::vector<std::pair<std::string, uint32_t>> controls = {});
/// Maps |from> to the uniform superposition over `points`; completed to a
/// unitary on the rest of the space.
UnitaryStep op_prepare_uniform(const std::string& reg, uint32_t dim, uint32_t from,
                               std::vector<uint32_t> points,
                               std::vector<std::pair<std::string, uint32_t>> controls = {});
/// 2|u><u| - I on span(points), identity elsewhere.
UnitaryStep op_diffusion(const std::string& reg, uint32_t dim, std::vector<uint32_t> points,
                         std::vector<std::pair<std::string, uint32_t>> controls = {});
UnitaryStep op_phase_flip(const std::string& reg, uint32_t dim, std::vector<uint32_t> points,
                          std::vector<std::pair<std::string, uint32_t>> controls = {});
/// dim-2 Hadamard
UnitaryStep op_hadamard(const std::string& reg,
                        std::vector<std::pair<std::string, uint32_t>> controls = {});
UnitaryStep op_matrix(std::vector<std::string> targets, Matrix m,
                      std::vector<std::pair<std::string, uint32_t>> controls = {});

bool is_unitary_matrix(const Matrix& m, double tol = 1e-9);

}  // namespace qlift::statevec
