#include "spindec/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace spindec {

void validate(const DepthDataset& d, bool free_exponent) {
  if (d.points.empty()) throw std::invalid_argument("DepthDataset: empty");
  for (const auto& p : d.points) {
    if (!(p.z > 0.0) || !(p.T2 > 0.0))
      throw std::invalid_argument("DepthDataset: z and T2 must be > 0");
    if (p.sigma && !(*p.sigma > 0.0))
      throw std::invalid_argument("DepthDataset: sigma must be > 0 when given");
  }
  if (free_exponent) {
    if (d.points.size() < 3)
      throw std::invalid_argument("DepthDataset: free-exponent fit needs >= 3 points");
    const double z0 = d.points.front().z;
    const bool distinct = std::any_of(d.points.begin(), d.points.end(),
                                      [&](const DepthPoint& p) { return p.z != z0; });
    if (!distinct)
      throw std::invalid_argument("DepthDataset: all depths equal, exponent degenerate");
  }
}

namespace {

struct LogData {
  std::vector<double> x, y, w;
};

LogData to_log(const DepthDataset& d) {
  LogData l;
  for (const auto& p : d.points) {
    l.x.push_back(std::log(p.z));
    l.y.push_back(std::log(p.T2));
    // multiplicative errors: sigma_log = sigma / T2
    l.w.push_back(p.sigma ? 1.0 / ((*p.sigma / p.T2) * (*p.sigma / p.T2)) : 1.0);
  }
  return l;
}

PowerLawFit weighted_fit(const LogData& l, std::optional<double> fixed_n) {
  const size_t n = l.x.size();
  double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sw += l.w[i];
    swx += l.w[i] * l.x[i];
    swy += l.w[i] * l.y[i];
    swxx += l.w[i] * l.x[i] * l.x[i];
    swxy += l.w[i] * l.x[i] * l.y[i];
  }

  PowerLawFit fit;
  double a = 0.0;  // log amplitude
  if (fixed_n) {
    fit.exponent = *fixed_n;
    a = (swy - fit.exponent * swx) / sw;
    fit.cov[0][0] = 1.0 / sw;
  } else {
    const double det = sw * swxx - swx * swx;
    if (!(std::abs(det) > 0.0))
      throw std::invalid_argument("fit_power_law: degenerate design matrix");
    fit.exponent = (sw * swxy - swx * swy) / det;
    a = (swxx * swy - swx * swxy) / det;
    fit.cov[0][0] = swxx / det;
    fit.cov[0][1] = fit.cov[1][0] = -swx / det;
    fit.cov[1][1] = sw / det;
  }
  fit.amplitude = std::exp(a);

  double chi = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double r = l.y[i] - a - fit.exponent * l.x[i];
    chi += l.w[i] * r * r;
  }
  fit.residual = std::sqrt(chi / sw);
  return fit;
}

}  // namespace

PowerLawFit fit_power_law(const DepthDataset& data,
                          std::optional<double> fixed_exponent) {
  validate(data, !fixed_exponent.has_value());
  return weighted_fit(to_log(data), fixed_exponent);
}

PowerLawFit fit_power_law_with_floor(const DepthDataset& data,
                                     std::optional<double> fixed_exponent,
                                     double& rate0_out) {
  validate(data, !fixed_exponent.has_value());
  // the floor cannot exceed the slowest observed rate; scan below it
  double min_rate = std::numeric_limits<double>::infinity();
  for (const auto& p : data.points) min_rate = std::min(min_rate, 1.0 / p.T2);

  PowerLawFit best;
  best.residual = std::numeric_limits<double>::infinity();
  double best_rate0 = 0.0;
  const int steps = 400;
  for (int k = 0; k < steps; ++k) {
    const double rate0 = 0.999 * min_rate * static_cast<double>(k) / steps;
    DepthDataset adj;
    bool ok = true;
    for (const auto& p : data.points) {
      const double r = 1.0 / p.T2 - rate0;
      if (!(r > 0.0)) {
        ok = false;
        break;
      }
      DepthPoint q = p;
      q.T2 = 1.0 / r;
      if (p.sigma) q.sigma = *p.sigma / (p.T2 * p.T2 * r * r);  // propagate through 1/x
      adj.points.push_back(q);
    }
    if (!ok) continue;
    const PowerLawFit f = weighted_fit(to_log(adj), fixed_exponent);
    if (f.residual < best.residual) {
      best = f;
      best_rate0 = rate0;
    }
  }
  rate0_out = best_rate0;
  return best;
}

ModelSelection model_select(const DepthDataset& data, double tie_ratio) {
  ModelSelection sel;
  sel.fit_2 = fit_power_law(data, 2.0);
  sel.fit_4 = fit_power_law(data, 4.0);
  sel.residual_2 = sel.fit_2.residual;
  sel.residual_4 = sel.fit_4.residual;
  sel.preferred = sel.residual_2 <= sel.residual_4 ? 2 : 4;
  const double lo = std::min(sel.residual_2, sel.residual_4);
  const double hi = std::max(sel.residual_2, sel.residual_4);
  sel.ratio = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  sel.conclusive = sel.ratio >= tie_ratio;
  return sel;
}

DepthDataset parse_depth_csv(const std::string& content) {
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("depth CSV: empty input");

  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
      if (ch == ',') {
        out.push_back(cur);
        cur.clear();
      } else if (ch != '\r' && ch != ' ') {
        cur += ch;
      }
    }
    out.push_back(cur);
    return out;
  };

  const auto header = split(line);
  if (header.size() < 2 || header[0] != "z_nm" || header[1] != "T2_us" ||
      (header.size() == 3 && header[2] != "sigma_us") || header.size() > 3)
    throw std::invalid_argument("depth CSV: header must be z_nm,T2_us[,sigma_us]");
  const bool has_sigma = header.size() == 3;

  DepthDataset d;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split(line);
    if (cells.size() != header.size())
      throw std::invalid_argument("depth CSV: wrong column count on line " +
                                  std::to_string(line_no));
    DepthPoint p;
    try {
      p.z = std::stod(cells[0]) * 1e-9;
      p.T2 = std::stod(cells[1]) * 1e-6;
      if (has_sigma) p.sigma = std::stod(cells[2]) * 1e-6;
    } catch (const std::exception&) {
      throw std::invalid_argument("depth CSV: bad number on line " +
                                  std::to_string(line_no));
    }
    d.points.push_back(p);
  }
  validate(d, false);
  return d;
}

}  // namespace spindec
