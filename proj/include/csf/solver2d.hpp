// 2D two-phase heat conduction on a tensor-product Cartesian mesh with
// bilinear elements, implicit Euler, and CSF laser / evaporation sources on
// the melt-pool interface. Bottom and top edges are Dirichlet, the sides
// adiabatic (a mesh covering only x >= 0 therefore models the symmetric
// half of the domain).
#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

#include "csf/delta.hpp"
#include "csf/evaporation.hpp"
#include "csf/geometry.hpp"
#include "csf/materials.hpp"
#include "csf/mesh.hpp"

namespace csf {

enum class LinearSolverKind { Direct, ConjugateGradient };

struct ThermalScenario2D {
  std::shared_ptr<const Mesh2D> mesh;
  MaterialSet materials;
  DeltaCase delta_case = DeltaCase::V1;
  double eps = 0.0;
  InterfaceGeometry geometry;
  LaserModel laser;
  bool laser_on = true;
  EvaporationModel evaporation;
  double initial_temperature = 500.0;
  double boundary_temperature = 500.0;
  double dt = 1e-9;
  double t_end = 1e-5;
  double picard_tolerance = 1e-8;
  int picard_max_iterations = 50;
  LinearSolverKind solver = LinearSolverKind::Direct;
  double cg_tolerance = 1e-10;  // relative residual

  void validate() const;
};

struct SolveReport2D {
  Field2D temperature;
  double interface_temperature = 0.0;  // at the bottom of the depression
  double peak_temperature = 0.0;
  Vec2 peak_location;
  double peak_distance = 0.0;  // signed distance of the peak node
  double wall_seconds = 0.0;
  std::size_t steps = 0;
  std::vector<int> picard_iterations;
};

class HeatSolver2D {
 public:
  explicit HeatSolver2D(ThermalScenario2D scenario);
  ~HeatSolver2D();
  HeatSolver2D(const HeatSolver2D&) = delete;
  HeatSolver2D& operator=(const HeatSolver2D&) = delete;

  const ThermalScenario2D& scenario() const { return s_; }
  const Mesh2D& mesh() const { return *s_.mesh; }

  std::vector<double> initial_field() const;
  std::vector<double> step(const std::vector<double>& tn, int* picard_iterations = nullptr);
  /// Advances from the initial field to t_end with fixed steps.
  SolveReport2D solve_transient();

  std::size_t band_point_count() const { return band_.size(); }
  /// Integral of the volumetric source at temperature t.
  double source_power(const std::vector<double>& t) const;
  double heat_content(const std::vector<double>& t) const;
  std::vector<double> indicator_field() const;
  std::vector<double> distance_field() const;

 private:
  struct BandPoint {
    std::array<std::size_t, 4> nodes;
    std::array<double, 4> shape;
    double weighted_delta;
    double laser;
    std::array<std::size_t, 4> proj_nodes;
    std::array<double, 4> proj_shape;
  };
  struct Impl;

  void assemble();
  std::vector<double> source_vector(const std::vector<double>& t) const;
  std::vector<double> solve_free(const std::vector<double>& rhs_free);

  ThermalScenario2D s_;
  std::vector<BandPoint> band_;
  std::vector<std::ptrdiff_t> free_index_;  // node -> free dof or -1
  std::vector<std::size_t> free_nodes_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace csf
