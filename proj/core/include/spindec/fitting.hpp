#pragma once

// Power-law fits of coherence time against defect depth, and selection
// between the z^2 and z^4 scaling laws.

#include <optional>
#include <string>
#include <vector>

namespace spindec {

struct DepthPoint {
  double z = 0.0;                ///< depth [m]
  double T2 = 0.0;               ///< coherence time [s]
  std::optional<double> sigma;   ///< 1-sigma uncertainty on T2 [s]
};

struct DepthDataset {
  std::vector<DepthPoint> points;
};

void validate(const DepthDataset& d, bool free_exponent);

struct PowerLawFit {
  double amplitude = 0.0;  ///< A in T2 = A z^n (SI units)
  double exponent = 0.0;   ///< n
  double residual = 0.0;   ///< weighted rms misfit in log space
  // 2x2 covariance of (log A, n); only the (0,0) entry is meaningful for
  // fixed-exponent fits
  double cov[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
};

/// Weighted least squares of log T2 against log z.  fixed_exponent empty =
/// fit both amplitude and exponent (needs >= 3 points and >= 2 distinct z);
/// otherwise only the amplitude.  Weights are 1/sigma_log^2 when sigmas are
/// present, else uniform.
PowerLawFit fit_power_law(const DepthDataset& data,
                          std::optional<double> fixed_exponent = std::nullopt);

/// Same fit with an additional constant decay-rate floor:
/// 1/T2 = rate0 + 1/(A z^n).  The floor is scanned; off by default in the
/// plain fit.
PowerLawFit fit_power_law_with_floor(const DepthDataset& data,
                                     std::optional<double> fixed_exponent,
                                     double& rate0_out);

struct ModelSelection {
  int preferred = 0;        ///< 2 or 4
  double residual_2 = 0.0;
  double residual_4 = 0.0;
  double ratio = 0.0;       ///< larger residual / smaller residual, >= 1
  bool conclusive = false;  ///< false when the ratio is within the tie band
  PowerLawFit fit_2, fit_4;
};

/// Compare fixed n=2 against fixed n=4; ties within `tie_ratio` are reported
/// as inconclusive (preferred still carries the smaller-residual model).
ModelSelection model_select(const DepthDataset& data, double tie_ratio = 1.05);

/// Parse "z_nm,T2_us[,sigma_us]" CSV content (header required).
DepthDataset parse_depth_csv(const std::string& content);

}  // namespace spindec
