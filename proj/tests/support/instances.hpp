#pragma once

#include "typesched/model.hpp"

#include <vector>

namespace typesched::testing {

// costs[job][type], one dimension
inline Instance one_dim(std::vector<std::size_t> counts, std::vector<std::vector<long>> costs) {
  Instance inst;
  inst.dims = 1;
  for (auto c : counts) inst.types.push_back({c});
  for (const auto& row : costs) {
    Job j;
    for (long c : row) j.costs.push_back({Rational(c)});
    inst.jobs.push_back(std::move(j));
  }
  return inst;
}

}  // namespace typesched::testing
