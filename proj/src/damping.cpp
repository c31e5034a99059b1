#include "arkc/damping.hpp"

#include <cmath>
#include <stdexcept>

#include "arkc/ode_problem.hpp"

namespace arkc {

namespace {

const std::vector<RatioBand>& tables() {
  static const std::vector<RatioBand> t = {
      {0.05,
       "q=sqrt(-p)/20",
       {{200, 0.15}, {500, 0.6}}},
      {0.25,
       "q=sqrt(-p)/4",
       {{30, 0.2}, {60, 0.45}, {110, 1.0}, {160, 1.5}, {260, 2.4}, {360, 3.0}, {500, 4.0}}},
      {0.5,
       "q=sqrt(-p)/2",
       {{10, 0.15}, {20, 0.6},  {30, 1.0},  {40, 1.4},  {50, 1.7},  {60, 2.1},  {70, 2.4},
        {80, 2.7},  {90, 3.0},  {100, 3.3}, {120, 3.7}, {140, 4.1}, {160, 4.5}, {180, 4.9},
        {200, 5.3}, {250, 6.0}, {300, 6.6}, {400, 7.7}, {500, 8.8}}},
      {0.75,
       "q=3sqrt(-p)/4",
       {{10, 0.7},  {20, 1.5},  {30, 2.3},  {40, 2.9},  {50, 3.5},  {60, 4.0},
        {70, 4.5},  {80, 4.9},  {90, 5.2},  {100, 5.5}, {140, 6.7}, {180, 7.7},
        {250, 8.8}, {300, 9.8}, {400, 11.0}, {500, 12.0}}},
      {1.0,
       "q=sqrt(-p)",
       {{10, 1.0}, {20, 2.5}, {30, 3.5}, {50, 4.8}, {70, 6.0}, {110, 7.8}, {150, 9.0},
        {310, 12.5}, {500, 15.0}}},
      {1.4142135623730951,
       "q=sqrt(-2p)",
       {{10, 2.0}, {20, 3.8}, {30, 5.0}, {50, 6.8}, {70, 8.0}, {110, 10.4}, {150, 12.0},
        {310, 16.0}, {500, 19.0}}},
      {2.0,
       "q=2sqrt(-p)",
       {{10, 4.0}, {30, 9.0}, {70, 13.5}, {150, 18.0}, {310, 23.0}, {500, 27.0}}},
  };
  return t;
}

}  // namespace

std::span<const RatioBand> damping_table() { return tables(); }

std::size_t select_ratio_band(double rho_ratio) {
  const auto& t = tables();
  if (rho_ratio >= 2.0) return t.size() - 1;
  std::size_t best = 0;
  double best_dist = std::abs(rho_ratio - t[0].nominal_ratio);
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double dist = std::abs(rho_ratio - t[i].nominal_ratio);
    if (dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  return best;
}

double select_damping(double rho_ratio, int s) {
  if (s > kStageCap) throw StageCapExceeded();
  if (s < 2) throw std::invalid_argument("select_damping: stage count must be >= 2");
  const RatioBand& band = tables()[select_ratio_band(rho_ratio)];
  for (const StageBand& sb : band.bands)
    if (s <= sb.s_upper) return sb.eta;
  return band.bands.back().eta;  // unreachable: bands end at kStageCap
}

}  // namespace arkc
