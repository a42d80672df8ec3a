#pragma once

#include <algorithm>
#include <random>

#include "vrebid/model.hpp"

namespace fixtures {

// Feasible random curves: 1-3 segments, sorted prices in [0, 60] $/MWh,
// quantities summing to at most capacity.
inline vrebid::BidSet random_bids(const vrebid::Instance& inst, std::mt19937& rng) {
  std::uniform_int_distribution<int> nseg(1, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int S = nseg(rng);
  vrebid::BidSet b;
  b.curves.resize(inst.vres.size());
  for (std::size_t k = 0; k < inst.vres.size(); ++k) {
    for (std::size_t t = 0; t < inst.hours(); ++t) {
      std::vector<double> p(S), share(S);
      for (auto& v : p) v = 60.0 * unit(rng);
      std::sort(p.begin(), p.end());
      double total = 0.0;
      for (auto& v : share) total += (v = unit(rng));
      const double q = inst.vres[k].capacity * unit(rng);
      vrebid::BidCurve c{inst.vres[k].id, t, {}};
      for (int s = 0; s < S; ++s) c.segments.push_back({p[s], q * share[s] / total});
      b.curves[k].push_back(std::move(c));
    }
  }
  return b;
}

}  // namespace fixtures
