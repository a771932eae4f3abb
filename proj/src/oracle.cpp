#include "qlift/oracle.hpp"

#include <algorithm>

#include "qlift/errors.hpp"

namespace qlift {

OracleTable::OracleTable(unsigned m, unsigned n, std::vector<int> t)
    : domain_size(m), codomain_size(n), table(std::move(t)) {
  require(table.size() == m, Errc::ShapeMismatch, "table length must equal M");
  for (int v : table)
    require(v >= 0 && unsigned(v) < n, Errc::ShapeMismatch, "table entry out of range");
}

OracleTable OracleTable::from_index(unsigned m, unsigned n, uint64_t idx) {
  std::vector<int> t(m);
  for (unsigned i = 0; i < m; ++i) {
    t[i] = int(idx % n);
    idx /= n;
  }
  return OracleTable(m, n, std::move(t));
}

uint64_t OracleTable::table_count(unsigned m, unsigned n) {
  uint64_t count = 1;
  for (unsigned i = 0; i < m; ++i) {
    require(count <= UINT64_MAX / n, Errc::EnumerationTooLarge, "N^M overflows");
    count *= n;
  }
  return count;
}

ReprogrammedOracle reprogram(const OracleTable& base, const std::vector<int>& xs,
                             const std::vector<int>& ys) {
  require(xs.size() == ys.size(), Errc::ShapeMismatch, "|x| must equal |y|");
  std::vector<int> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), Errc::DuplicateInputs,
          "patch inputs must be pairwise distinct");
  ReprogrammedOracle out;
  out.base = &base;
  for (size_t i = 0; i < xs.size(); ++i) {
    require(xs[i] >= 0 && unsigned(xs[i]) < base.domain_size, Errc::ShapeMismatch,
            "patch input out of domain");
    require(ys[i] >= 0 && unsigned(ys[i]) < base.codomain_size, Errc::ShapeMismatch,
            "patch output out of codomain");
    out.patch.emplace_back(xs[i], ys[i]);
  }
  return out;
}

OracleTable materialize(const ReprogrammedOracle& o) {
  std::vector<int> t(o.base->domain_size);
  for (unsigned x = 0; x < o.base->domain_size; ++x) t[x] = o(int(x));
  return OracleTable(o.base->domain_size, o.base->codomain_size, std::move(t));
}

}  // namespace qlift
