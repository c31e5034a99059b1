#pragma once

#include <span>
#include <string>
#include <vector>

namespace arkc {

inline constexpr int kStageCap = 500;

/// One stage band of a damping schedule: covers stage counts in
/// (previous band's s_upper, s_upper].
struct StageBand {
  int s_upper;
  double eta;
};

/// Damping schedule tuned for one Peclet-ratio regime. nominal_ratio is the
/// rho_A/sqrt(rho_D) value the schedule was tuned for, which doubles as the
/// coefficient c of the eigenvalue curve q = c sqrt(-p) used to verify it.
struct RatioBand {
  double nominal_ratio;
  std::string label;
  std::vector<StageBand> bands;  // contiguous, ending at s_upper == kStageCap
};

/// The built-in damping schedules, ordered by nominal ratio
/// (1/20, 1/4, 1/2, 3/4, 1, sqrt(2), 2).
std::span<const RatioBand> damping_table();

/// Damping for the ratio band whose nominal ratio is nearest rho_ratio, at
/// stage count s. Ratios at or above 2 always use the last band. Throws
/// StageCapExceeded for s > 500.
double select_damping(double rho_ratio, int s);

/// Index of the nearest ratio band (helper for diagnostics and reports).
std::size_t select_ratio_band(double rho_ratio);

}  // namespace arkc
