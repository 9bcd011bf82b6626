#include "csf/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace csf {

GaussRule gauss_rule(int order) {
  GaussRule r;
  r.size = order;
  switch (order) {
    case 1:
      r.points = {0.0};
      r.weights = {2.0};
      break;
    case 2: {
      const double p = 1.0 / std::sqrt(3.0);
      r.points = {-p, p};
      r.weights = {1.0, 1.0};
      break;
    }
    case 3: {
      const double p = std::sqrt(0.6);
      r.points = {-p, 0.0, p};
      r.weights = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
      break;
    }
    case 4: {
      const double a = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
      const double b = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
      const double wa = (18.0 + std::sqrt(30.0)) / 36.0;
      const double wb = (18.0 - std::sqrt(30.0)) / 36.0;
      r.points = {-b, -a, a, b};
      r.weights = {wb, wa, wa, wb};
      break;
    }
    default:
      throw InvalidInput("Gauss rule order must be 1..4");
  }
  return r;
}

namespace {

void check_axis(const std::vector<double>& v, const char* what) {
  if (v.size() < 2) throw InvalidInput(std::string(what) + ": need at least two nodes");
  for (std::size_t i = 0; i < v.size(); ++i) {
    require_finite(v[i], what);
    if (i > 0 && !(v[i] > v[i - 1])) {
      throw InvalidInput(std::string(what) + ": nodes must be strictly increasing");
    }
  }
}

std::size_t locate_in(const std::vector<double>& v, double x) {
  if (x <= v.front()) return 0;
  if (x >= v.back()) return v.size() - 2;
  auto it = std::upper_bound(v.begin(), v.end(), x);
  std::size_t e = static_cast<std::size_t>(it - v.begin()) - 1;
  // Shared nodes belong to the left element.
  if (e > 0 && v[e] == x) --e;
  return e;
}

// Element sizes growing (or shrinking) geometrically from h0 towards far_h,
// capped at far_h, covering at most `length`.
std::vector<double> graded_steps(double h0, double far_h, double ratio, double length) {
  std::vector<double> steps;
  double h = h0;
  double covered = 0.0;
  const bool grow = far_h > h0;
  while (true) {
    h = grow ? std::min(h * ratio, far_h) : std::max(h / ratio, far_h);
    if (covered + h > length) break;
    steps.push_back(h);
    covered += h;
    if (h == far_h) break;
  }
  const double rest = length - covered;
  if (rest > 0.0) {
    const double base = steps.empty() ? h0 : steps.back();
    if (!steps.empty() && rest < 0.5 * base) {
      steps.back() += rest;
      return steps;
    }
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(rest / base - 1e-9)));
    for (std::size_t i = 0; i < n; ++i) steps.push_back(rest / static_cast<double>(n));
  }
  return steps;
}

}  // namespace

Mesh1D::Mesh1D(std::vector<double> nodes) : x_(std::move(nodes)) { check_axis(x_, "mesh nodes"); }

Mesh1D Mesh1D::uniform(double x0, double x1, std::size_t n_elements) {
  if (n_elements == 0) throw InvalidInput("mesh needs at least one element");
  require_finite(x0, "x0");
  require_finite(x1, "x1");
  std::vector<double> x(n_elements + 1);
  for (std::size_t i = 0; i <= n_elements; ++i) {
    x[i] = x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(n_elements);
  }
  x.back() = x1;
  return Mesh1D(std::move(x));
}

Mesh1D Mesh1D::interface_graded(double a, double eps, int n_i, double far_h, double ratio,
                                int margin) {
  require_positive(a, "domain half-width");
  require_positive(eps, "interface thickness");
  require_positive(far_h, "far-field element size");
  if (n_i < 1) throw InvalidInput("n_i must be >= 1");
  if (!(ratio > 1.0)) throw InvalidInput("grading ratio must be > 1");
  if (margin < 0) throw InvalidInput("margin must be >= 0");
  const double h = eps / n_i;
  const int m = (n_i + 1) / 2 + margin;
  const double band = m * h;
  if (band >= a) throw InvalidInput("interface band does not fit in the domain");
  std::vector<double> right;
  right.reserve(static_cast<std::size_t>(m) + 64);
  for (int k = 0; k <= m; ++k) right.push_back(k * h);
  double x = band;
  for (double step : graded_steps(h, far_h, ratio, a - band)) {
    x += step;
    right.push_back(x);
  }
  right.back() = a;
  std::vector<double> nodes;
  nodes.reserve(2 * right.size() - 1);
  for (std::size_t i = right.size(); i-- > 1;) nodes.push_back(-right[i]);
  nodes.insert(nodes.end(), right.begin(), right.end());
  return Mesh1D(std::move(nodes));
}

double Mesh1D::min_element_size() const {
  double m = element_size(0);
  for (std::size_t e = 1; e < n_elements(); ++e) m = std::min(m, element_size(e));
  return m;
}

double Mesh1D::max_element_size() const {
  double m = element_size(0);
  for (std::size_t e = 1; e < n_elements(); ++e) m = std::max(m, element_size(e));
  return m;
}

double Mesh1D::max_element_size_in(double lo, double hi) const {
  double m = 0.0;
  for (std::size_t e = 0; e < n_elements(); ++e) {
    if (x_[e + 1] > lo && x_[e] < hi) m = std::max(m, element_size(e));
  }
  return m;
}

std::size_t Mesh1D::locate(double x) const { return locate_in(x_, x); }

std::size_t Mesh1D::find_node(double x) const {
  auto it = std::lower_bound(x_.begin(), x_.end(), x);
  if (it != x_.end() && *it == x) return static_cast<std::size_t>(it - x_.begin());
  return x_.size();
}

double Mesh1D::interpolate(const std::vector<double>& values, double x) const {
  if (values.size() != x_.size()) throw InvalidInput("field length must match the mesh");
  const std::size_t e = locate(x);
  const double h = x_[e + 1] - x_[e];
  const double s = std::clamp((x - x_[e]) / h, 0.0, 1.0);
  return values[e] * (1.0 - s) + values[e + 1] * s;
}

Mesh2D::Mesh2D(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  check_axis(xs_, "mesh x nodes");
  check_axis(ys_, "mesh y nodes");
}

Mesh2D Mesh2D::uniform(double x0, double x1, std::size_t nx, double y0, double y1, std::size_t ny) {
  return Mesh2D(Mesh1D::uniform(x0, x1, nx).nodes(), Mesh1D::uniform(y0, y1, ny).nodes());
}

double Mesh2D::min_element_size() const {
  double m = xs_[1] - xs_[0];
  for (std::size_t i = 1; i < xs_.size(); ++i) m = std::min(m, xs_[i] - xs_[i - 1]);
  for (std::size_t j = 1; j < ys_.size(); ++j) m = std::min(m, ys_[j] - ys_[j - 1]);
  return m;
}

double Mesh2D::max_element_size() const {
  double m = 0.0;
  for (std::size_t i = 1; i < xs_.size(); ++i) m = std::max(m, xs_[i] - xs_[i - 1]);
  for (std::size_t j = 1; j < ys_.size(); ++j) m = std::max(m, ys_[j] - ys_[j - 1]);
  return m;
}

std::array<std::size_t, 4> Mesh2D::element_nodes(std::size_t ex, std::size_t ey) const {
  return {node_index(ex, ey), node_index(ex + 1, ey), node_index(ex + 1, ey + 1),
          node_index(ex, ey + 1)};
}

Mesh2D::Location Mesh2D::locate(Vec2 p) const {
  const std::size_t ex = locate_in(xs_, p.x);
  const std::size_t ey = locate_in(ys_, p.y);
  const double s = std::clamp((p.x - xs_[ex]) / (xs_[ex + 1] - xs_[ex]), 0.0, 1.0);
  const double t = std::clamp((p.y - ys_[ey]) / (ys_[ey + 1] - ys_[ey]), 0.0, 1.0);
  Location loc;
  loc.nodes = element_nodes(ex, ey);
  loc.shape = {(1 - s) * (1 - t), s * (1 - t), s * t, (1 - s) * t};
  return loc;
}

double Mesh2D::interpolate(const std::vector<double>& values, Vec2 p) const {
  if (values.size() != n_nodes()) throw InvalidInput("field length must match the mesh");
  const Location loc = locate(p);
  double v = 0.0;
  for (int k = 0; k < 4; ++k) v += loc.shape[k] * values[loc.nodes[k]];
  return v;
}

}  // namespace csf
