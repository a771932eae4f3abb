#include "qlift/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "qlift/errors.hpp"

namespace qlift::statevec {

namespace {

Matrix identity(uint32_t d) {
  Matrix m(d, std::vector<cdouble>(d, 0.0));
  for (uint32_t i = 0; i < d; ++i) m[i][i] = 1.0;
  return m;
}

nlohmann::json controls_json(const std::vector<std::pair<std::string, uint32_t>>& cs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [reg, val] : cs) arr.push_back({{"reg", reg}, {"value", val}});
  return arr;
}

std::vector<std::pair<std::string, uint32_t>> controls_from_json(const nlohmann::json& j) {
  std::vector<std::pair<std::string, uint32_t>> out;
  if (!j.contains("controls")) return out;
  for (const auto& c : j["controls"])
    out.emplace_back(c.at("reg").get<std::string>(), c.at("value").get<uint32_t>());
  return out;
}

}  // namespace

bool is_unitary_matrix(const Matrix& m, double tol) {
  size_t d = m.size();
  for (const auto& row : m)
    if (row.size() != d) return false;
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < d; ++j) {
      cdouble dot = 0;
      for (size_t t = 0; t < d; ++t) dot += std::conj(m[t][i]) * m[t][j];
      if (std::abs(dot - (i == j ? cdouble(1) : cdouble(0))) > tol) return false;
    }
  }
  return true;
}

unsigned AdversaryCircuit::quantum_queries() const {
  unsigned n = 0;
  for (const Step& s : steps)
    if (auto* q = std::get_if<QueryStep>(&s); q && !q->classical) ++n;
  return n;
}

unsigned AdversaryCircuit::classical_queries() const {
  unsigned n = 0;
  for (const Step& s : steps)
    if (auto* q = std::get_if<QueryStep>(&s); q && q->classical) ++n;
  return n;
}

std::vector<bool> AdversaryCircuit::classical_pattern() const {
  std::vector<bool> out;
  for (const Step& s : steps)
    if (auto* q = std::get_if<QueryStep>(&s)) out.push_back(q->classical);
  return out;
}

void AdversaryCircuit::validate() const {
  require(M >= 1 && N >= 1 && k >= 1, Errc::ShapeMismatch, "circuit shape must be nonempty");
  require(x_out.size() == k, Errc::ArityMismatch, "x_out must name k registers");
  auto reg_dim = [&](const std::string& name) -> uint32_t {
    if (name == "input") return M;
    if (name == "output") return N;
    for (const auto& r : work)
      if (r.name == name) return r.dim;
    throw Error(Errc::LayoutMismatch, "unknown register: " + name);
  };
  for (const auto& r : work)
    require(r.name != "input" && r.name != "output", Errc::LayoutMismatch,
            "work registers may not shadow input/output");
  for (const auto& name : x_out)
    require(reg_dim(name) == M, Errc::LayoutMismatch, "x_out registers must have dimension M");
  for (const auto& name : z_out) reg_dim(name);
  for (const Step& s : steps) {
    if (auto* u = std::get_if<UnitaryStep>(&s)) {
      uint64_t d = 1;
      for (const auto& t : u->targets) d *= reg_dim(t);
      require(u->matrix.size() == d, Errc::LayoutMismatch, "matrix dimension mismatch");
      require(is_unitary_matrix(u->matrix), Errc::LayoutMismatch,
              "step matrix is not unitary: " + name);
      for (const auto& [reg, val] : u->controls)
        require(val < reg_dim(reg), Errc::LayoutMismatch, "control value out of range");
    }
  }
}

UnitaryStep op_add_const(const std::string& reg, uint32_t dim, uint32_t amount,
                         std::vector<std::pair<std::string, uint32_t>> controls) {
  Matrix m(dim, std::vector<cdouble>(dim, 0.0));
  for (uint32_t j = 0; j < dim; ++j) m[(j + amount) % dim][j] = 1.0;
  UnitaryStep st{{reg}, std::move(m), std::move(controls), {}};
  st.spec = {{"op", "add-const"}, {"reg", reg}, {"amount", amount}};
  if (!st.controls.empty()) st.spec["controls"] = controls_json(st.controls);
  return st;
}

UnitaryStep op_copy_add(const std::string& src, uint32_t src_dim, const std::string& dst,
                        uint32_t dst_dim, std::vector<std::pair<std::string, uint32_t>> controls) {
  uint32_t d = src_dim * dst_dim;
  Matrix m(d, std::vector<cdouble>(d, 0.0));
  // column digit order: src is the low digit
  for (uint32_t s = 0; s < src_dim; ++s)
    for (uint32_t t = 0; t < dst_dim; ++t) {
      uint32_t col = s + src_dim * t;
      uint32_t row = s + src_dim * ((t + s) % dst_dim);
      m[row][col] = 1.0;
    }
  UnitaryStep st{{src, dst}, std::move(m), std::move(controls), {}};
  st.spec = {{"op", "copy-add"}, {"src", src}, {"dst", dst}};
  if (!st.controls.empty()) st.spec["controls"] = controls_json(st.controls);
  return st;
}

UnitaryStep op_sub_from(const std::string& src, uint32_t src_dim, const std::string& dst,
                        uint32_t dst_dim, std::vector<std::pair<std::string, uint32_t>> controls) {
  uint32_t d = src_dim * dst_dim;
  Matrix m(d, std::vector<cdouble>(d, 0.0));
  for (uint32_t s = 0; s < src_dim; ++s)
    for (uint32_t t = 0; t < dst_dim; ++t) {
      uint32_t col = s + src_dim * t;
      uint32_t row = s + src_dim * ((t + dst_dim - s % dst_dim) % dst_dim);
      m[row][col] = 1.0;
    }
  UnitaryStep st{{src, dst}, std::move(m), std::move(controls), {}};
  st.spec = {{"op", "sub-from"}, {"src", src}, {"dst", dst}};
  if (!st.controls.empty()) st.spec["controls"] = controls_json(st.controls);
  return st;
}

UnitaryStep op_prepare_uniform(const std::string& reg, uint32_t dim, uint32_t from,
                               std::vector<uint32_t> points,
                               std::vector<std::pair<std::string, uint32_t>> controls) {
  require(!points.empty(), Errc::LayoutMismatch, "prepare-uniform needs target points");
  // Column `from` becomes the uniform vector over `points`; remaining
  // columns are completed by Gram-Schmidt over the standard basis.
  Matrix m(dim, std::vector<cdouble>(dim, 0.0));
  std::vector<std::vector<cdouble>> cols;
  std::vector<cdouble> u(dim, 0.0);
  for (uint32_t p : points) u[p] = 1.0 / std::sqrt(double(points.size()));
  cols.push_back(u);
  for (uint32_t b = 0; b < dim && cols.size() < dim; ++b) {
    std::vector<cdouble> v(dim, 0.0);
    v[b] = 1.0;
    for (const auto& c : cols) {
      cdouble dot = 0;
      for (uint32_t i = 0; i < dim; ++i) dot += std::conj(c[i]) * v[i];
      for (uint32_t i = 0; i < dim; ++i) v[i] -= dot * c[i];
    }
    double nrm2 = 0;
    for (const auto& x : v) nrm2 += std::norm(x);
    if (nrm2 < 1e-12) continue;
    double nrm = std::sqrt(nrm2);
    for (auto& x : v) x /= nrm;
    cols.push_back(std::move(v));
  }
  require(cols.size() == dim, Errc::LayoutMismatch, "prepare-uniform completion failed");
  // place the uniform column at index `from`, fill others in order
  size_t next = 1;
  for (uint32_t j = 0; j < dim; ++j) {
    const auto& c = j == from ? cols[0] : cols[next++];
    for (uint32_t i = 0; i < dim; ++i) m[i][j] = c[i];
  }
  UnitaryStep st{{reg}, std::move(m), std::move(controls), {}};
  st.spec = {{"op", "prepare-uniform"}, {"reg", reg}, {"from", from}, {"points", points}};
  if (!st.controls.empty()) st.spec["controls"] = controls_json(st.controls);
  return st;
}

UnitaryStep op_diffusion(const std::string& reg, uint32_t dim, std::vector<uint32_t> points,
                         std::vector<std::pair<std::string, uint32_t>> controls) {
  require(!points.empty(), Errc::LayoutMismatch, "diffusion needs a point set");
  Matrix m = identity(dim);
  double inv = 2.0 / double(points.size());
  for (uint32_t p : points) m[p][p] = inv - 1.0;
  for (uint32_t p : points)
    for (uint32_t r : points)
      if (r != p) m[r][p] = inv;
  UnitaryStep st{{reg}, std::move(m), std::move(controls), {}};
  st.spec = {{"op", "diffusion"}, {"reg", reg}, {"points", points}};
  if (!st.controls.empty()) st.spec["controls"] = controls_json(st.controls);
  return st;
}

UnitaryStep op_phase_flip(const std::string& reg, uint32_t dim, std::vector<uint32_t> points,
                          std::vector<std::pair<std::string, uint32_t>> controls) {
  Matrix m = identity(dim);
  for (uint32_t p : points) m[p][p] = -1.0;
  UnitaryStep st{{reg}, std::move(m), std::move(controls), {}};
  st.spec = {{"op", "phase-flip"}, {"reg", reg}, {"points", points}};
  if (!st.controls.empty()) st.spec["controls"] = controls_json(st.controls);
  return st;
}

UnitaryStep op_hadamard(const std::string& reg,
                        std::vector<std::pair<std::string, uint32_t>> controls) {
  double r = 1.0 / std::sqrt(2.0);
  Matrix m{{r, r}, {r, -r}};
  UnitaryStep st{{reg}, std::move(m), std::move(controls), {}};
  st.spec = {{"op", "hadamard"}, {"reg", reg}};
  if (!st.controls.empty()) st.spec["controls"] = controls_json(st.controls);
  return st;
}

UnitaryStep op_matrix(std::vector<std::string> targets, Matrix m,
                      std::vector<std::pair<std::string, uint32_t>> controls) {
  return UnitaryStep{std::move(targets), std::move(m), std::move(controls), {}};
}

nlohmann::json AdversaryCircuit::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["M"] = M;
  j["N"] = N;
  j["k"] = k;
  j["registers"] = nlohmann::json::array();
  for (const auto& r : work) j["registers"].push_back({{"name", r.name}, {"dim", r.dim}});
  nlohmann::json pattern = nlohmann::json::array();
  for (bool c : classical_pattern()) pattern.push_back(c ? "C" : "Q");
  j["pattern"] = pattern;
  nlohmann::json steps_j = nlohmann::json::array();
  for (const Step& s : steps) {
    if (auto* q = std::get_if<QueryStep>(&s)) {
      steps_j.push_back({{"op", "query"}, {"type", q->classical ? "C" : "Q"}});
    } else {
      const auto& u = std::get<UnitaryStep>(s);
      if (!u.spec.empty()) {
        steps_j.push_back(u.spec);
      } else {
        nlohmann::json mj = nlohmann::json::array();
        for (const auto& row : u.matrix) {
          nlohmann::json rj = nlohmann::json::array();
          for (const auto& x : row) rj.push_back({x.real(), x.imag()});
          mj.push_back(rj);
        }
        nlohmann::json sj = {{"op", "matrix"}, {"regs", u.targets}, {"matrix", mj}};
        if (!u.controls.empty()) sj["controls"] = controls_json(u.controls);
        steps_j.push_back(sj);
      }
    }
  }
  j["steps"] = steps_j;
  j["x_out"] = x_out;
  j["z_out"] = z_out;
  return j;
}

AdversaryCircuit AdversaryCircuit::from_json(const nlohmann::json& j) {
  AdversaryCircuit c;
  c.name = j.value("name", std::string{});
  c.M = j.at("M").get<unsigned>();
  c.N = j.at("N").get<unsigned>();
  c.k = j.at("k").get<unsigned>();
  for (const auto& r : j.value("registers", nlohmann::json::array()))
    c.work.push_back({r.at("name").get<std::string>(), r.at("dim").get<uint32_t>()});
  auto reg_dim = [&](const std::string& name) -> uint32_t {
    if (name == "input") return c.M;
    if (name == "output") return c.N;
    for (const auto& r : c.work)
      if (r.name == name) return r.dim;
    throw Error(Errc::BadFormat, "unknown register in circuit file: " + name);
  };
  for (const auto& sj : j.at("steps")) {
    std::string op = sj.at("op").get<std::string>();
    auto controls = controls_from_json(sj);
    if (op == "query") {
      c.steps.push_back(QueryStep{sj.at("type").get<std::string>() == "C"});
    } else if (op == "add-const") {
      std::string reg = sj.at("reg");
      c.steps.push_back(op_add_const(reg, reg_dim(reg), sj.at("amount"), controls));
    } else if (op == "copy-add") {
      std::string src = sj.at("src"), dst = sj.at("dst");
      c.steps.push_back(op_copy_add(src, reg_dim(src), dst, reg_dim(dst), controls));
    } else if (op == "sub-from") {
      std::string src = sj.at("src"), dst = sj.at("dst");
      c.steps.push_back(op_sub_from(src, reg_dim(src), dst, reg_dim(dst), controls));
    } else if (op == "prepare-uniform") {
      std::string reg = sj.at("reg");
      c.steps.push_back(op_prepare_uniform(reg, reg_dim(reg), sj.at("from"),
                                           sj.at("points").get<std::vector<uint32_t>>(),
                                           controls));
    } else if (op == "diffusion") {
      std::string reg = sj.at("reg");
      c.steps.push_back(
          op_diffusion(reg, reg_dim(reg), sj.at("points").get<std::vector<uint32_t>>(), controls));
    } else if (op == "phase-flip") {
      std::string reg = sj.at("reg");
      c.steps.push_back(op_phase_flip(reg, reg_dim(reg),
                                      sj.at("points").get<std::vector<uint32_t>>(), controls));
    } else if (op == "hadamard") {
      c.steps.push_back(op_hadamard(sj.at("reg"), controls));
    } else if (op == "matrix") {
      Matrix m;
      for (const auto& rj : sj.at("matrix")) {
        std::vector<cdouble> row;
        for (const auto& xj : rj) row.emplace_back(xj.at(0).get<double>(), xj.at(1).get<double>());
        m.push_back(std::move(row));
      }
      c.steps.push_back(op_matrix(sj.at("regs").get<std::vector<std::string>>(), std::move(m),
                                  controls));
    } else {
      throw Error(Errc::BadFormat, "unknown circuit op: " + op);
    }
  }
  c.x_out = j.at("x_out").get<std::vector<std::string>>();
  c.z_out = j.value("z_out", std::vector<std::string>{});
  if (j.contains("pattern")) {
    std::vector<bool> declared;
    for (const auto& p : j["pattern"]) declared.push_back(p.get<std::string>() == "C");
    require(declared == c.classical_pattern(), Errc::BadFormat,
            "declared pattern disagrees with query steps");
  }
  c.validate();
  return c;
}

AdversaryCircuit AdversaryCircuit::load(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), Errc::BadFormat, "cannot open circuit file: " + path);
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

}  // namespace qlift::statevec
