#include "csf/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace csf {

namespace {

double l2_ratio(double err2, double ref2) {
  if (!(ref2 > 0.0)) throw InvalidInput("reference has zero L2 norm");
  return std::sqrt(err2 / ref2);
}

double trial_value(const Field1D& f, const QuadPoint& qp) {
  return qp.shape[0] * f.values[qp.nodes[0]] + qp.shape[1] * f.values[qp.nodes[1]];
}

}  // namespace

double l2_relative_error(const Field1D& field, const Field1D& reference) {
  if (!field.mesh || !reference.mesh) throw InvalidInput("fields need meshes");
  double err2 = 0.0;
  double ref2 = 0.0;
  field.mesh->for_each_quadrature_point([&](const QuadPoint& qp) {
    const double r = reference(qp.x.x);
    const double diff = trial_value(field, qp) - r;
    err2 += qp.weight * diff * diff;
    ref2 += qp.weight * r * r;
  });
  return l2_ratio(err2, ref2);
}

double l2_relative_error(const Field1D& field, const std::function<double(double)>& reference) {
  if (!field.mesh) throw InvalidInput("field needs a mesh");
  double err2 = 0.0;
  double ref2 = 0.0;
  field.mesh->for_each_quadrature_point([&](const QuadPoint& qp) {
    const double r = reference(qp.x.x);
    const double diff = trial_value(field, qp) - r;
    err2 += qp.weight * diff * diff;
    ref2 += qp.weight * r * r;
  });
  return l2_ratio(err2, ref2);
}

double l2_relative_error(const Field2D& field, const Field2D& reference) {
  if (!field.mesh || !reference.mesh) throw InvalidInput("fields need meshes");
  double err2 = 0.0;
  double ref2 = 0.0;
  field.mesh->for_each_quadrature_point([&](const QuadPoint& qp) {
    double v = 0.0;
    for (int k = 0; k < 4; ++k) v += qp.shape[k] * field.values[qp.nodes[k]];
    const double r = reference(qp.x);
    err2 += qp.weight * (v - r) * (v - r);
    ref2 += qp.weight * r * r;
  });
  return l2_ratio(err2, ref2);
}

ConvergenceFit convergence_order(std::vector<std::pair<double, double>> points) {
  if (points.size() < 3) throw InvalidInput("convergence fit needs at least three points");
  std::sort(points.begin(), points.end());
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_positive(points[i].first, "eps");
    require_positive(points[i].second, "error");
    if (i > 0 && points[i].first == points[i - 1].first) {
      throw InvalidInput("convergence fit needs distinct eps values");
    }
  }
  const double n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [e, err] : points) {
    const double x = std::log(e);
    const double y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  ConvergenceFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  for (std::size_t i = 1; i < points.size(); ++i) {
    fit.pairwise.push_back(std::log(points[i].second / points[i - 1].second) /
                           std::log(points[i].first / points[i - 1].first));
  }
  return fit;
}

ThresholdResult find_threshold(const std::function<double(double)>& error, double tolerance,
                               double eps_start, double ratio_tolerance, int max_evaluations) {
  require_positive(tolerance, "tolerance");
  require_positive(eps_start, "starting eps");
  if (!(ratio_tolerance > 1.0)) throw InvalidInput("ratio tolerance must be > 1");
  ThresholdResult result;
  auto eval = [&](double e) {
    if (static_cast<int>(result.samples.size()) >= max_evaluations) {
      throw SolverError("threshold search exceeded its evaluation budget");
    }
    const double err = error(e);
    if (!(err > 0.0) || !std::isfinite(err)) {
      throw SolverError("threshold search met a non-positive or non-finite error");
    }
    result.samples.emplace_back(e, err);
    return err;
  };

  double lo = eps_start;
  double hi = eps_start;
  double err_lo = eval(eps_start);
  double err_hi = err_lo;
  if (err_lo < tolerance) {
    while (err_hi < tolerance) {
      lo = hi;
      err_lo = err_hi;
      hi *= 2.0;
      err_hi = eval(hi);
    }
  } else {
    while (err_lo >= tolerance) {
      hi = lo;
      err_hi = err_lo;
      lo *= 0.5;
      err_lo = eval(lo);
    }
  }
  while (hi / lo > ratio_tolerance) {
    const double mid = std::sqrt(lo * hi);
    const double err_mid = eval(mid);
    if (err_mid < tolerance) {
      lo = mid;
      err_lo = err_mid;
    } else {
      hi = mid;
      err_hi = err_mid;
    }
  }
  if (err_hi == err_lo) {
    result.threshold = std::sqrt(lo * hi);
    return result;
  }
  const double s = (std::log(tolerance) - std::log(err_lo)) / (std::log(err_hi) - std::log(err_lo));
  result.threshold = std::exp(std::log(lo) + s * (std::log(hi) - std::log(lo)));
  return result;
}

}  // namespace csf
