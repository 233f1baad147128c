#include "spindec/signal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spindec {

namespace {
constexpr double pi = std::numbers::pi_v<double>;

bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

double series_mean(const std::vector<double>& x) {
  if (x.empty()) throw std::invalid_argument("series_mean: empty series");
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double series_variance(const std::vector<double>& x) {
  const double m = series_mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size());
}

std::vector<double> estimate_autocorrelation(const std::vector<double>& x,
                                             int max_lag) {
  const int n = static_cast<int>(x.size());
  if (max_lag < 0 || max_lag >= n)
    throw std::invalid_argument("estimate_autocorrelation: series shorter than max_lag");
  const double m = series_mean(x);
  std::vector<double> c(static_cast<size_t>(max_lag) + 1, 0.0);
  for (int k = 0; k <= max_lag; ++k) {
    double s = 0.0;
    for (int i = 0; i + k < n; ++i) s += (x[i] - m) * (x[i + k] - m);
    c[static_cast<size_t>(k)] = s / static_cast<double>(n - k);
  }
  return c;
}

void fft_radix2(std::vector<std::complex<double>>& a) {
  const size_t n = a.size();
  if (!is_pow2(n)) throw std::invalid_argument("fft_radix2: size must be a power of 2");
  // bit reversal
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * pi / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

PsdEstimate estimate_psd(const std::vector<double>& x, double dt,
                         int segment_length) {
  if (!(dt > 0.0)) throw std::invalid_argument("estimate_psd: dt must be > 0");
  const size_t n = x.size();
  if (n < 8) throw std::invalid_argument("estimate_psd: series too short");

  size_t seg = static_cast<size_t>(segment_length);
  if (seg == 0) {
    seg = 256;
    while (seg * 8 <= n) seg <<= 1;
    while (seg > n) seg >>= 1;
  }
  if (!is_pow2(seg) || seg > n)
    throw std::invalid_argument("estimate_psd: bad segment length");

  const double mean = series_mean(x);

  // periodic Hann window
  std::vector<double> w(seg);
  double wss = 0.0;
  for (size_t i = 0; i < seg; ++i) {
    w[i] = 0.5 * (1.0 - std::cos(2.0 * pi * static_cast<double>(i) /
                                 static_cast<double>(seg)));
    wss += w[i] * w[i];
  }

  PsdEstimate out;
  out.omega.resize(seg / 2 + 1);
  out.S.assign(seg / 2 + 1, 0.0);
  for (size_t k = 0; k <= seg / 2; ++k)
    out.omega[k] = 2.0 * pi * static_cast<double>(k) /
                   (static_cast<double>(seg) * dt);

  std::vector<std::complex<double>> buf(seg);
  size_t count = 0;
  for (size_t start = 0; start + seg <= n; start += seg / 2) {
    for (size_t i = 0; i < seg; ++i) buf[i] = (x[start + i] - mean) * w[i];
    fft_radix2(buf);
    for (size_t k = 0; k <= seg / 2; ++k)
      out.S[k] += std::norm(buf[k]) * dt / wss;
    ++count;
  }
  if (count == 0) throw std::invalid_argument("estimate_psd: no full segment");
  for (double& s : out.S) s /= static_cast<double>(count);
  return out;
}

double fit_lorentzian_tau(const PsdEstimate& psd) {
  if (psd.omega.size() < 8)
    throw std::invalid_argument("fit_lorentzian_tau: need more bins");
  // use bins away from DC and from the Nyquist roll-off
  const double w_max = psd.omega.back() * 0.5;
  std::vector<double> ws, ls;
  for (size_t k = 1; k < psd.omega.size(); ++k) {
    if (psd.omega[k] <= w_max && psd.S[k] > 0.0) {
      ws.push_back(psd.omega[k]);
      ls.push_back(std::log(psd.S[k]));
    }
  }
  if (ws.size() < 4) throw std::invalid_argument("fit_lorentzian_tau: too few bins");

  auto cost = [&](double log_tau) {
    const double tau = std::exp(log_tau);
    // amplitude that zeroes the mean log residual
    double acc = 0.0;
    std::vector<double> shape(ws.size());
    for (size_t i = 0; i < ws.size(); ++i) {
      shape[i] = std::log(2.0 * tau / (1.0 + ws[i] * ws[i] * tau * tau));
      acc += ls[i] - shape[i];
    }
    const double log_a = acc / static_cast<double>(ws.size());
    double c = 0.0;
    for (size_t i = 0; i < ws.size(); ++i) {
      const double r = ls[i] - log_a - shape[i];
      c += r * r;
    }
    return c;
  };

  double lo = std::log(0.01 / ws.back());
  double hi = std::log(100.0 / ws.front());
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = cost(x1), f2 = cost(x2);
  for (int it = 0; it < 200 && (hi - lo) > 1e-10; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = cost(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = cost(x2);
    }
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace spindec
