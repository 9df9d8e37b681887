#pragma once

#include <functional>
#include <span>
#include <vector>

namespace linmax {

struct KsResult {
  double statistic = 0.0;  // D = sup_x |F_n(x) - F(x)|
  double p_value = 1.0;    // asymptotic Kolmogorov approximation
  std::size_t n = 0;
  bool approximate = false;  // n < 50: the asymptotic p-value is rough

  bool passes(double level) const { return p_value > level; }
};

/// Pr(K > lambda) for the Kolmogorov distribution, summing the alternating
/// series (or its Jacobi-transformed form for small lambda) until terms drop
/// below 1e-12.
double kolmogorov_survival(double lambda);

/// One-sample Kolmogorov-Smirnov test against a continuous CDF. D is exact:
/// both one-sided gaps are taken at every order statistic.
/// Throws DomainError on empty input.
KsResult ks_test(std::span<const double> samples,
                 const std::function<double(double)>& cdf);

/// Right-continuous empirical distribution function.
class EmpiricalCdf {
 public:
  /// Throws DomainError on empty input.
  explicit EmpiricalCdf(std::span<const double> samples);

  double operator()(double x) const;
  std::size_t size() const noexcept { return sorted_.size(); }

 private:
  std::vector<double> sorted_;
};

EmpiricalCdf empirical_cdf(std::span<const double> samples);

double median(std::vector<double> values);

}  // namespace linmax
