#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "exclab/errors.hpp"

namespace exclab {

// Monte Carlo point estimate: sample mean and its standard error.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
};

// Streaming first/second moment accumulator. Estimator sums here are sums of
// small integers (indicator products), so accumulation is exact and the merge
// order cannot change the result.
class Accumulator {
 public:
  void add(double x) {
    sum_ += x;
    sumsq_ += x * x;
    ++n_;
  }

  void merge(const Accumulator& o) {
    sum_ += o.sum_;
    sumsq_ += o.sumsq_;
    n_ += o.n_;
  }

  std::uint64_t count() const { return n_; }
  double sum() const { return sum_; }

  Estimate estimate() const {
    Estimate e;
    e.n = n_;
    if (n_ == 0) return e;
    e.mean = sum_ / static_cast<double>(n_);
    if (n_ >= 2) {
      double var = (sumsq_ - sum_ * e.mean) / static_cast<double>(n_ - 1);
      if (var < 0) var = 0;  // exact-cancellation guard
      e.std_error = std::sqrt(var / static_cast<double>(n_));
    }
    return e;
  }

 private:
  double sum_ = 0.0;
  double sumsq_ = 0.0;
  std::uint64_t n_ = 0;
};

inline Estimate binomial_estimate(std::uint64_t hits, std::uint64_t n) {
  Estimate e;
  e.n = n;
  if (n == 0) return e;
  double p = static_cast<double>(hits) / static_cast<double>(n);
  e.mean = p;
  e.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return e;
}

struct LinFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Unweighted least squares y = slope*x + intercept.
inline LinFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidParameter("least_squares: need >= 2 points");
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double den = n * sxx - sx * sx;
  if (den == 0) throw InvalidParameter("least_squares: degenerate abscissae");
  LinFit f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

// Slope of log(mean) against log(scale); the standard exponent readout.
inline double loglog_slope(const std::vector<double>& scale, const std::vector<Estimate>& val) {
  std::vector<double> lx, ly;
  lx.reserve(scale.size());
  ly.reserve(scale.size());
  for (std::size_t i = 0; i < scale.size(); ++i) {
    if (val[i].mean <= 0) throw NotReached("loglog_slope: zero-hit estimate");
    lx.push_back(std::log(scale[i]));
    ly.push_back(std::log(val[i].mean));
  }
  return least_squares(lx, ly).slope;
}

}  // namespace exclab
