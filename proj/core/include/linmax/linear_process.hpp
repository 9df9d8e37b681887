#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "linmax/coefficients.hpp"
#include "linmax/innovations.hpp"
#include "linmax/step_function.hpp"

namespace linmax {

/// One simulated stretch X_1..X_n of the causal linear process
/// X_i = sum_{j=0}^{J} c_j Z_{i-j}.
struct SimulatedPath {
  std::size_t n = 0;
  std::size_t order = 0;  // J
  double a_n = 1.0;
  std::uint64_t seed = 0;
  std::vector<double> x;  // X_1..X_n, not normalized
  std::vector<double> z;  // Z_{1-J}..Z_n in time order
  /// tail_sum_bound * max|Z|: size of the lags beyond J that were dropped,
  /// measured against the innovations actually drawn.
  double neglected_tail_bound = 0.0;

  /// Z_1..Z_n.
  std::span<const double> innovations() const {
    return std::span<const double>(z).subspan(order);
  }
  /// Z_i for 1 - J <= i <= n.
  double innovation(std::ptrdiff_t i) const {
    return z[static_cast<std::size_t>(i + static_cast<std::ptrdiff_t>(order) - 1)];
  }
};

/// X_i = sum_j coeffs[j] * Z_{i-j} for i = 1..n, where `z` holds
/// Z_{1-J}..Z_n in time order (J = coeffs.size() - 1, n = z.size() - J).
std::vector<double> moving_average(std::span<const double> coeffs,
                                   std::span<const double> z);

/// Simulates X_1..X_n under `real`. Exactly n + J innovations are drawn from
/// one seeded stream in the order Z_1, ..., Z_n, Z_0, Z_{-1}, ..., Z_{1-J},
/// so paths with the same seed but different orders share every innovation
/// they have in common.
SimulatedPath simulate_path(const TailLaw& law, const CoefficientRealization& real,
                            std::size_t n, std::uint64_t seed);

/// Order-q approximant (c_0, ..., c_{q-2}, C^{q,max}, C^{q,min}) where the max
/// and min run over lags j >= q - 1: the realized head, the zero limit of
/// the sequence, and the unrealized tail bound on each side its sign allows.
/// Throws DomainError for q < 2.
CoefficientRealization finite_order_approx(const CoefficientRealization& real,
                                           std::size_t q);

/// Value of M_n on [0, 1/n).
enum class InitialConvention {
  FirstValue,  // X_1 / a_n
  Zero,
};

/// M_n(t) = max_{i <= floor(nt)} X_i / a_n for t >= 1/n.
StepFunction partial_maxima(std::span<const double> x, double a_n,
                            InitialConvention convention = InitialConvention::FirstValue);
StepFunction partial_maxima(const SimulatedPath& path,
                            InitialConvention convention = InitialConvention::FirstValue);

/// W_n(t) = max_{i <= floor(nt)} |Z_i| / a_n * (C+ 1{Z_i > 0} + C- 1{Z_i < 0}),
/// zero on [0, 1/n). `z` holds Z_1..Z_n.
StepFunction wn_process(std::span<const double> z, double a_n, double c_plus,
                        double c_minus);

/// max_i sum_j |a_j - b_j| |Z_{i-j}| / a_n over the path's innovations: a
/// bound on sup_t |M_n^a(t) - M_n^b(t)| for the two coefficient heads driven
/// by the same innovations. Both heads must fit within the path's order.
double coupling_bound(const SimulatedPath& path, std::span<const double> a,
                      std::span<const double> b);

/// CSV with header "i,x": one row per X_i (not normalized).
void write_path_csv(std::ostream& out, const SimulatedPath& path);

}  // namespace linmax
