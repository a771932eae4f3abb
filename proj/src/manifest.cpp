#include "qlift/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qlift/errors.hpp"

namespace qlift::verify {

namespace {

AdversaryCircuit circuit_from_spec(const nlohmann::json& j, const std::string& base_dir) {
  if (j.contains("file")) {
    auto path = std::filesystem::path(base_dir) / j.at("file").get<std::string>();
    return AdversaryCircuit::load(path.string());
  }
  require(j.contains("builder"), Errc::BadFormat, "circuit needs a file or builder");
  std::string b = j.at("builder").get<std::string>();
  if (b == "staged-grover") {
    adversaries::StagedGroverSpec spec;
    spec.k = j.at("k").get<unsigned>();
    spec.u = j.at("u").get<unsigned>();
    spec.v = j.at("v").get<unsigned>();
    spec.targets = j.at("targets").get<std::vector<int>>();
    spec.M = j.at("M").get<unsigned>();
    spec.N = j.at("N").get<unsigned>();
    return adversaries::build_staged_grover(spec);
  }
  if (b == "fixed-output")
    return adversaries::build_fixed_output(j.at("M").get<unsigned>(), j.at("N").get<unsigned>(),
                                           j.at("outs").get<std::vector<int>>());
  if (b == "grover-probe-pair")
    return adversaries::build_grover_probe_pair(j.at("M").get<unsigned>(),
                                                j.at("u").get<unsigned>());
  if (b == "fixed-scan")
    return adversaries::build_fixed_scan(j.at("M").get<unsigned>(), j.at("N").get<unsigned>(),
                                         j.at("T").get<unsigned>(), j.at("decision").get<int>());
  if (b == "adaptive-scan")
    return adversaries::build_adaptive_scan(j.at("M").get<unsigned>(), j.at("N").get<unsigned>(),
                                            j.at("target").get<int>());
  if (b == "random-guess")
    return adversaries::build_random_guess(j.at("k").get<unsigned>(), j.at("M").get<unsigned>(),
                                           j.at("N").get<unsigned>());
  throw Error(Errc::BadFormat, "unknown circuit builder: " + b);
}

}  // namespace

Manifest Manifest::load(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), Errc::BadFormat, "cannot open manifest: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::BadFormat, std::string("manifest parse error: ") + e.what());
  }
  std::string base_dir = std::filesystem::path(path).parent_path().string();
  Manifest m;
  m.name = j.value("name", std::string("experiment"));
  m.mode = j.at("mode").get<std::string>();
  require(m.mode == "reprogram" || m.mode == "noisy" || m.mode == "lifting", Errc::BadFormat,
          "mode must be reprogram, noisy or lifting");
  m.tolerance = j.value("tolerance", 1e-9);
  m.exhaustive_schedules = j.value("schedule", std::string("exhaustive")) == "exhaustive";
  m.seed = j.value("seed", uint64_t(0));
  if (j.contains("p"))
    for (const auto& pv : j["p"]) {
      mpq_class p(pv.get<std::string>());
      p.canonicalize();
      require(p >= 0 && p <= 1, Errc::BadFormat, "p must lie in [0,1]");
      m.noise_levels.push_back(p);
    }
  for (const auto& cj : j.at("cells")) {
    Cell cell;
    if (cj.at("game").contains("file")) {
      auto gpath = std::filesystem::path(base_dir) / cj.at("game").at("file").get<std::string>();
      cell.game = GameSpec::load(gpath.string());
    } else {
      cell.game = GameSpec::from_json(cj.at("game"));
    }
    cell.circuit = circuit_from_spec(cj.at("circuit"), base_dir);
    m.cells.push_back(std::move(cell));
  }
  require(!m.cells.empty(), Errc::BadFormat, "manifest has no cells");
  if (m.mode == "noisy")
    require(!m.noise_levels.empty(), Errc::BadFormat, "noisy manifests need a p list");
  return m;
}

ManifestResult run_manifest(const Manifest& m, const GridOptions& opts_in) {
  GridOptions opts = opts_in;
  opts.tolerance = m.tolerance;
  ManifestResult res;
  for (const auto& cell : m.cells) {
    if (m.mode == "reprogram") {
      res.reports.push_back(check_reprogram_inequality(cell.game, cell.circuit, opts));
    } else if (m.mode == "noisy") {
      for (const auto& p : m.noise_levels)
        res.reports.push_back(check_noisy_inequality(cell.game, cell.circuit, p, opts));
    } else {
      res.reports.push_back(check_lifting(cell.game, fixed_circuit(cell.circuit), opts));
    }
  }
  for (const auto& r : res.reports) res.pass = res.pass && r.pass;
  return res;
}

std::string to_csv(const ManifestResult& r) {
  std::ostringstream os;
  os.precision(17);
  os << "cell_id,h_index,g_index,xo,lhs,rhs,margin,mode,seed\n";
  uint64_t id = 0;
  for (const auto& rep : r.reports) {
    for (const auto& c : rep.cells) {
      os << id++ << ',' << c.h_index << ',' << c.g_index << ',';
      for (size_t i = 0; i < c.xo.size(); ++i) os << (i ? "|" : "") << c.xo[i];
      os << ',' << c.lhs << ',' << c.rhs << ',' << c.margin << ',' << c.mode << ',' << c.seed
         << '\n';
    }
  }
  return os.str();
}

}  // namespace qlift::verify
