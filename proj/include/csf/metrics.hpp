// Error norms, convergence-order fits and tolerance-threshold search.
#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "csf/mesh.hpp"

namespace csf {

/// ||T - T_ref|| / ||T_ref|| in L2, integrated with 4-point Gauss rules on
/// the trial mesh; the reference is interpolated at the trial quadrature
/// points.
double l2_relative_error(const Field1D& field, const Field1D& reference);
double l2_relative_error(const Field1D& field, const std::function<double(double)>& reference);
double l2_relative_error(const Field2D& field, const Field2D& reference);

struct ConvergenceFit {
  double slope = 0.0;                  // least-squares slope of log(err) vs log(eps)
  std::vector<double> pairwise;        // slopes between consecutive points (sorted by eps)
};

/// Requires at least three points with distinct positive abscissae and
/// positive errors.
ConvergenceFit convergence_order(std::vector<std::pair<double, double>> points);

struct ThresholdResult {
  double threshold = 0.0;  // eps at which error == tolerance
  std::vector<std::pair<double, double>> samples;  // every (eps, error) evaluated
};

/// Finds eps with error(eps) == tolerance for an error that grows with eps:
/// expands a bracket geometrically from `eps_start`, bisects in log(eps)
/// until the bracket ratio falls below `ratio_tolerance`, then interpolates
/// log(error) linearly in log(eps).
ThresholdResult find_threshold(const std::function<double(double)>& error, double tolerance,
                               double eps_start, double ratio_tolerance = 1.02,
                               int max_evaluations = 40);

}  // namespace csf
