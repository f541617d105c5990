#include "memetic/individual.h"

namespace mmhp {

Individual make_individual(const Hypergraph& h, std::vector<BlockID> blocks, BlockID k, double epsilon) {
  Individual ind;
  ind.objective = connectivity_metric(h, blocks);
  ind.signature = signature(h, blocks);
  ind.balanced = is_balanced(h, blocks, k, epsilon);
  ind.blocks = std::move(blocks);
  return ind;
}

std::size_t distance(const Individual& a, const Individual& b) {
  const Signature& x = a.signature;
  const Signature& y = b.signature;
  std::size_t d = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].first < y[j].first) {
      d += x[i++].second;
    } else if (y[j].first < x[i].first) {
      d += y[j++].second;
    } else {
      d += x[i].second > y[j].second ? x[i].second - y[j].second : y[j].second - x[i].second;
      ++i;
      ++j;
    }
  }
  for (; i < x.size(); ++i) d += x[i].second;
  for (; j < y.size(); ++j) d += y[j].second;
  return d;
}

bool fitter(const Individual& a, const Individual& b) {
  if (a.balanced != b.balanced) return a.balanced;
  return a.objective < b.objective;
}

}  // namespace mmhp
