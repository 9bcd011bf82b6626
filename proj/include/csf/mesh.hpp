// Interval and tensor-product Cartesian meshes with linear / bilinear
// elements, Gauss quadrature iteration and nodal fields.
#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

#include "csf/types.hpp"

namespace csf {

/// Gauss-Legendre rule on [-1, 1]; `order` in 1..4.
struct GaussRule {
  std::array<double, 4> points{};
  std::array<double, 4> weights{};
  int size = 0;
};
GaussRule gauss_rule(int order);

/// One quadrature point with the values and gradients of the element's
/// shape functions. 1D elements use the first two slots.
struct QuadPoint {
  Vec2 x;
  double weight = 0.0;  // includes the Jacobian determinant
  int n_nodes = 0;
  std::array<std::size_t, 4> nodes{};
  std::array<double, 4> shape{};
  std::array<Vec2, 4> grad{};
  std::size_t element = 0;
};

class Mesh1D {
 public:
  /// Nodes must be finite and strictly increasing.
  explicit Mesh1D(std::vector<double> nodes);

  static Mesh1D uniform(double x0, double x1, std::size_t n_elements);

  /// Symmetric mesh on [-a, a] with a node at 0: uniform size eps / n_i over
  /// the band |x| <= eps/2 plus `margin` extra elements on each side, then
  /// geometric grading with `ratio` towards `far_h`, then uniform to +-a.
  static Mesh1D interface_graded(double a, double eps, int n_i, double far_h,
                                 double ratio = 1.05, int margin = 2);

  std::size_t n_nodes() const { return x_.size(); }
  std::size_t n_elements() const { return x_.size() - 1; }
  double node(std::size_t i) const { return x_[i]; }
  const std::vector<double>& nodes() const { return x_; }
  double element_size(std::size_t e) const { return x_[e + 1] - x_[e]; }
  double min_element_size() const;
  double max_element_size() const;
  /// Largest element size among elements intersecting [lo, hi].
  double max_element_size_in(double lo, double hi) const;
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

  /// Element containing x (the left one on shared nodes); x is clamped to
  /// the mesh extent.
  std::size_t locate(double x) const;
  /// Index of the node at exactly x, or n_nodes() when there is none.
  std::size_t find_node(double x) const;
  double interpolate(const std::vector<double>& values, double x) const;

  template <class F>
  void for_each_quadrature_point(F&& f, int order = 4) const {
    const GaussRule rule = gauss_rule(order);
    QuadPoint qp;
    qp.n_nodes = 2;
    for (std::size_t e = 0; e < n_elements(); ++e) {
      const double x0 = x_[e];
      const double h = x_[e + 1] - x0;
      qp.element = e;
      qp.nodes = {e, e + 1, 0, 0};
      qp.grad[0] = {-1.0 / h, 0.0};
      qp.grad[1] = {1.0 / h, 0.0};
      for (int g = 0; g < rule.size; ++g) {
        const double s = 0.5 * (rule.points[g] + 1.0);
        qp.x = {x0 + s * h, 0.0};
        qp.weight = 0.5 * rule.weights[g] * h;
        qp.shape[0] = 1.0 - s;
        qp.shape[1] = s;
        f(static_cast<const QuadPoint&>(qp));
      }
    }
  }

 private:
  std::vector<double> x_;
};

/// Tensor-product mesh of bilinear quadrilaterals. Node (i, j) has index
/// i + j * (nx + 1); element (i, j) has index i + j * nx.
class Mesh2D {
 public:
  Mesh2D(std::vector<double> xs, std::vector<double> ys);

  static Mesh2D uniform(double x0, double x1, std::size_t nx, double y0, double y1, std::size_t ny);

  std::size_t nx() const { return xs_.size() - 1; }
  std::size_t ny() const { return ys_.size() - 1; }
  std::size_t n_nodes() const { return xs_.size() * ys_.size(); }
  std::size_t n_elements() const { return nx() * ny(); }
  std::size_t node_index(std::size_t i, std::size_t j) const { return i + j * xs_.size(); }
  Vec2 node(std::size_t n) const { return {xs_[n % xs_.size()], ys_[n / xs_.size()]}; }
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  double min_element_size() const;
  double max_element_size() const;

  /// Element nodes in counter-clockwise order (lower-left first).
  std::array<std::size_t, 4> element_nodes(std::size_t ex, std::size_t ey) const;

  /// Element containing p (clamped to the mesh extent) and the bilinear
  /// shape values of p in it.
  struct Location {
    std::array<std::size_t, 4> nodes{};
    std::array<double, 4> shape{};
  };
  Location locate(Vec2 p) const;
  double interpolate(const std::vector<double>& values, Vec2 p) const;

  /// Visits quadrature points of the elements listed in `elements` (all
  /// elements when empty).
  template <class F>
  void for_each_quadrature_point(F&& f, int order = 4) const {
    for (std::size_t ey = 0; ey < ny(); ++ey) {
      for (std::size_t ex = 0; ex < nx(); ++ex) {
        visit_element(ex, ey, f, order);
      }
    }
  }

  template <class F>
  void visit_element(std::size_t ex, std::size_t ey, F&& f, int order = 4) const {
    const GaussRule rule = gauss_rule(order);
    QuadPoint qp;
    qp.n_nodes = 4;
    qp.element = ex + ey * nx();
    qp.nodes = element_nodes(ex, ey);
    const double x0 = xs_[ex];
    const double hx = xs_[ex + 1] - x0;
    const double y0 = ys_[ey];
    const double hy = ys_[ey + 1] - y0;
    for (int gy = 0; gy < rule.size; ++gy) {
      const double t = 0.5 * (rule.points[gy] + 1.0);
      for (int gx = 0; gx < rule.size; ++gx) {
        const double s = 0.5 * (rule.points[gx] + 1.0);
        qp.x = {x0 + s * hx, y0 + t * hy};
        qp.weight = 0.25 * rule.weights[gx] * rule.weights[gy] * hx * hy;
        qp.shape = {(1 - s) * (1 - t), s * (1 - t), s * t, (1 - s) * t};
        qp.grad[0] = {-(1 - t) / hx, -(1 - s) / hy};
        qp.grad[1] = {(1 - t) / hx, -s / hy};
        qp.grad[2] = {t / hx, s / hy};
        qp.grad[3] = {-t / hx, (1 - s) / hy};
        f(static_cast<const QuadPoint&>(qp));
      }
    }
  }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

/// Nodal scalar field on a mesh. Immutable once built.
template <class Mesh>
struct DiscreteField {
  std::shared_ptr<const Mesh> mesh;
  std::vector<double> values;

  DiscreteField() = default;
  DiscreteField(std::shared_ptr<const Mesh> m, std::vector<double> v)
      : mesh(std::move(m)), values(std::move(v)) {
    if (!mesh || values.size() != mesh->n_nodes()) {
      throw InvalidInput("field length must match the mesh node count");
    }
  }

  template <class P>
  double operator()(P p) const {
    return mesh->interpolate(values, p);
  }

  bool all_finite() const {
    for (double v : values) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }
};

using Field1D = DiscreteField<Mesh1D>;
using Field2D = DiscreteField<Mesh2D>;

}  // namespace csf
