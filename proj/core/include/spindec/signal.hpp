#pragma once

// Empirical estimators for time series: autocorrelation, Welch-averaged
// power spectral density (two-sided, angular-frequency convention matching
// the analytic spectra), and a Lorentzian correlation-time fit.

#include <complex>
#include <vector>

namespace spindec {

/// Unbiased mean-subtracted autocorrelation c(k) for lags 0..max_lag.
std::vector<double> estimate_autocorrelation(const std::vector<double>& x,
                                             int max_lag);

struct PsdEstimate {
  std::vector<double> omega;  ///< angular frequencies [rad/s], >= 0
  std::vector<double> S;      ///< two-sided PSD [x^2 s]
};

/// Welch periodogram averaging: Hann window, 50% overlap, segment length a
/// power of two (0 = automatic).  Normalized so that
/// integral S(w) dw / 2pi over (-inf, inf) returns the series variance.
PsdEstimate estimate_psd(const std::vector<double>& x, double dt,
                         int segment_length = 0);

/// In-place radix-2 FFT (size must be a power of two).
void fft_radix2(std::vector<std::complex<double>>& a);

/// Least-squares fit of S(w) ~ A * 2 tau / (1 + w^2 tau^2) on a PSD estimate;
/// returns tau.  Fits log S by golden-section search over tau.
double fit_lorentzian_tau(const PsdEstimate& psd);

/// Mean and variance of a series.
double series_mean(const std::vector<double>& x);
double series_variance(const std::vector<double>& x);

}  // namespace spindec
