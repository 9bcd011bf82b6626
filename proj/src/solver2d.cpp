#include "csf/solver2d.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "csf/indicator.hpp"
#include "csf/thermal.hpp"

namespace csf {

using SpMat = Eigen::SparseMatrix<double>;

struct HeatSolver2D::Impl {
  SpMat mass;          // full
  SpMat system_free;   // (M/dt + K) on free dofs
  Eigen::VectorXd dirichlet_shift;  // A_fD * T_bar
  Eigen::SimplicialLLT<SpMat, Eigen::Lower, Eigen::AMDOrdering<int>> direct;
  Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper, Eigen::IncompleteCholesky<double>> cg;
  Eigen::VectorXd last_solution;
};

void ThermalScenario2D::validate() const {
  if (!mesh) throw InvalidInput("scenario needs a mesh");
  materials.validate();
  evaporation.validate();
  geometry.validate();
  require_positive(eps, "interface thickness");
  require_positive(dt, "time step");
  require_finite(t_end, "end time");
  if (t_end < dt * (1.0 - 1e-12)) throw InvalidInput("end time must be >= time step");
  require_finite(initial_temperature, "initial temperature");
  require_finite(boundary_temperature, "boundary temperature");
  require_positive(picard_tolerance, "Picard tolerance");
  require_positive(cg_tolerance, "CG tolerance");
  if (picard_max_iterations < 1) throw InvalidInput("Picard iteration limit must be >= 1");
  if (laser_on) laser.validate();
  if (geometry.kind != GeometryKind::MeltPool2D) {
    throw InvalidInput("2D solver requires the melt pool geometry");
  }
}

HeatSolver2D::HeatSolver2D(ThermalScenario2D scenario)
    : s_(std::move(scenario)), impl_(std::make_unique<Impl>()) {
  s_.validate();
  assemble();
}

HeatSolver2D::~HeatSolver2D() = default;

void HeatSolver2D::assemble() {
  const Mesh2D& mesh = *s_.mesh;
  const std::size_t n = mesh.n_nodes();
  const MaterialSet& m = s_.materials;
  const InterpolationCase icase = m.interpolation(s_.delta_case);
  const ScaledDelta delta(icase);
  const PhasePair k = m.conductivity();
  const double eps = s_.eps;

  // Dirichlet rows: bottom (j = 0) and top (j = ny).
  free_index_.assign(n, -1);
  free_nodes_.clear();
  for (std::size_t j = 0; j <= mesh.ny(); ++j) {
    for (std::size_t i = 0; i <= mesh.nx(); ++i) {
      const std::size_t node = mesh.node_index(i, j);
      if (j == 0 || j == mesh.ny()) continue;
      free_index_[node] = static_cast<std::ptrdiff_t>(free_nodes_.size());
      free_nodes_.push_back(node);
    }
  }

  std::vector<Eigen::Triplet<double>> mass_t;
  std::vector<Eigen::Triplet<double>> stiff_t;
  mass_t.reserve(16 * mesh.n_elements());
  stiff_t.reserve(16 * mesh.n_elements());
  band_.clear();
  const auto& xs = mesh.xs();
  const auto& ys = mesh.ys();
  for (std::size_t ey = 0; ey < mesh.ny(); ++ey) {
    for (std::size_t ex = 0; ex < mesh.nx(); ++ex) {
      double me[4][4] = {};
      double ke[4][4] = {};
      const Vec2 c{0.5 * (xs[ex] + xs[ex + 1]), 0.5 * (ys[ey] + ys[ey + 1])};
      const double half_diag = 0.5 * std::hypot(xs[ex + 1] - xs[ex], ys[ey + 1] - ys[ey]);
      const double dc = signed_distance(c, s_.geometry);
      const bool near_band = std::abs(dc) <= 0.5 * eps + half_diag;
      std::array<std::size_t, 4> nodes{};
      mesh.visit_element(ex, ey, [&](const QuadPoint& qp) {
        nodes = qp.nodes;
        double cv;
        double kk;
        if (near_band) {
          const double d = signed_distance(qp.x, s_.geometry);
          const double chi = indicator(d, eps);
          cv = icase.heat_capacity(chi);
          kk = effective_conductivity(k, chi);
          if (std::abs(d) < 0.5 * eps) {
            BandPoint b;
            b.nodes = qp.nodes;
            b.shape = qp.shape;
            b.weighted_delta = qp.weight * delta(d, eps);
            b.laser = s_.laser_on ? laser_flux(qp.x, s_.geometry, s_.laser) : 0.0;
            const Mesh2D::Location loc = mesh.locate(closest_point(qp.x, s_.geometry).point);
            b.proj_nodes = loc.nodes;
            b.proj_shape = loc.shape;
            band_.push_back(b);
          }
        } else {
          const bool liquid = dc > 0.0;
          cv = liquid ? m.rho_liquid * m.cp_liquid : m.rho_gas * m.cp_gas;
          kk = liquid ? m.k_liquid : m.k_gas;
        }
        for (int a = 0; a < 4; ++a) {
          for (int b = 0; b < 4; ++b) {
            me[a][b] += qp.weight * cv * qp.shape[a] * qp.shape[b];
            ke[a][b] += qp.weight * kk * qp.grad[a].dot(qp.grad[b]);
          }
        }
      });
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          mass_t.emplace_back(static_cast<int>(nodes[a]), static_cast<int>(nodes[b]), me[a][b]);
          stiff_t.emplace_back(static_cast<int>(nodes[a]), static_cast<int>(nodes[b]), ke[a][b]);
        }
      }
    }
  }
  const int ni = static_cast<int>(n);
  impl_->mass.resize(ni, ni);
  impl_->mass.setFromTriplets(mass_t.begin(), mass_t.end());
  SpMat stiff(ni, ni);
  stiff.setFromTriplets(stiff_t.begin(), stiff_t.end());
  const SpMat full = impl_->mass * (1.0 / s_.dt) + stiff;

  const int nf = static_cast<int>(free_nodes_.size());
  std::vector<Eigen::Triplet<double>> free_t;
  free_t.reserve(static_cast<std::size_t>(full.nonZeros()));
  impl_->dirichlet_shift = Eigen::VectorXd::Zero(nf);
  for (int col = 0; col < full.outerSize(); ++col) {
    const std::ptrdiff_t fc = free_index_[static_cast<std::size_t>(col)];
    for (SpMat::InnerIterator it(full, col); it; ++it) {
      const std::ptrdiff_t fr = free_index_[static_cast<std::size_t>(it.row())];
      if (fr < 0) continue;
      if (fc >= 0) {
        free_t.emplace_back(static_cast<int>(fr), static_cast<int>(fc), it.value());
      } else {
        impl_->dirichlet_shift[fr] += it.value() * s_.boundary_temperature;
      }
    }
  }
  impl_->system_free.resize(nf, nf);
  impl_->system_free.setFromTriplets(free_t.begin(), free_t.end());

  if (s_.solver == LinearSolverKind::Direct) {
    impl_->direct.compute(impl_->system_free);
    if (impl_->direct.info() != Eigen::Success) {
      throw SolverError("sparse Cholesky factorization failed");
    }
  } else {
    impl_->cg.setTolerance(s_.cg_tolerance);
    impl_->cg.setMaxIterations(10000);
    impl_->cg.compute(impl_->system_free);
    if (impl_->cg.info() != Eigen::Success) {
      throw SolverError("incomplete Cholesky preconditioner failed");
    }
  }
}

std::vector<double> HeatSolver2D::solve_free(const std::vector<double>& rhs_free) {
  const Eigen::Map<const Eigen::VectorXd> b(rhs_free.data(), static_cast<int>(rhs_free.size()));
  Eigen::VectorXd x;
  if (s_.solver == LinearSolverKind::Direct) {
    x = impl_->direct.solve(b);
  } else {
    if (impl_->last_solution.size() == b.size()) {
      x = impl_->cg.solveWithGuess(b, impl_->last_solution);
    } else {
      x = impl_->cg.solve(b);
    }
    if (impl_->cg.info() != Eigen::Success) {
      std::ostringstream msg;
      msg << "conjugate gradient did not converge: relative residual " << impl_->cg.error()
          << " after " << impl_->cg.iterations() << " iterations";
      throw SolverError(msg.str());
    }
    impl_->last_solution = x;
  }
  return std::vector<double>(x.data(), x.data() + x.size());
}

std::vector<double> HeatSolver2D::source_vector(const std::vector<double>& t) const {
  std::vector<double> f(t.size(), 0.0);
  const CoolingVariant cooling = s_.evaporation.cooling;
  const bool iv = s_.evaporation.method == EvalMethod::IV;
  for (const BandPoint& b : band_) {
    double q = b.laser;
    if (cooling != CoolingVariant::None) {
      double tq = 0.0;
      if (iv) {
        for (int a = 0; a < 4; ++a) tq += b.proj_shape[a] * t[b.proj_nodes[a]];
      } else {
        for (int a = 0; a < 4; ++a) tq += b.shape[a] * t[b.nodes[a]];
      }
      q += evaporative_cooling(tq, s_.evaporation);
    }
    const double scaled = q * b.weighted_delta;
    for (int a = 0; a < 4; ++a) f[b.nodes[a]] += scaled * b.shape[a];
  }
  return f;
}

std::vector<double> HeatSolver2D::initial_field() const {
  std::vector<double> t(s_.mesh->n_nodes(), s_.initial_temperature);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (free_index_[i] < 0) t[i] = s_.boundary_temperature;
  }
  return t;
}

namespace {

void require_finite_field(const std::vector<double>& t) {
  for (double v : t) {
    if (!std::isfinite(v)) throw SolverError("non-finite temperature after solve");
  }
}

}  // namespace

std::vector<double> HeatSolver2D::step(const std::vector<double>& tn, int* picard_iterations) {
  if (tn.size() != s_.mesh->n_nodes()) throw InvalidInput("field length must match the mesh");
  const Eigen::Map<const Eigen::VectorXd> tv(tn.data(), static_cast<int>(tn.size()));
  const Eigen::VectorXd mt = impl_->mass * tv;
  const std::size_t nf = free_nodes_.size();

  std::vector<double> f_prev = source_vector(tn);
  std::vector<double> rhs(nf);
  for (std::size_t k = 0; k < nf; ++k) {
    const std::size_t node = free_nodes_[k];
    rhs[k] = mt[static_cast<int>(node)] / s_.dt + f_prev[node] - impl_->dirichlet_shift[static_cast<int>(k)];
  }
  std::vector<double> xf = solve_free(rhs);
  std::vector<double> t = initial_field();
  double change = 0.0;
  for (std::size_t k = 0; k < nf; ++k) {
    const std::size_t node = free_nodes_[k];
    t[node] = xf[k];
    change = std::max(change, std::abs(t[node] - tn[node]));
  }
  int it = 1;
  const bool dependent = s_.evaporation.cooling != CoolingVariant::None;
  if (dependent) {
    // Picard on increments: T^{k+1} = T^k + A^{-1}(F(T^k) - F(T^{k-1})).
    while (change >= s_.picard_tolerance) {
      if (it >= s_.picard_max_iterations) {
        std::ostringstream msg;
        msg << "Picard iteration did not converge after " << it
            << " iterations (last max-norm change " << change << " K)";
        throw SolverError(msg.str());
      }
      std::vector<double> f = source_vector(t);
      for (std::size_t k = 0; k < nf; ++k) {
        const std::size_t node = free_nodes_[k];
        rhs[k] = f[node] - f_prev[node];
      }
      const std::vector<double> inc = solve_free(rhs);
      change = 0.0;
      for (std::size_t k = 0; k < nf; ++k) {
        t[free_nodes_[k]] += inc[k];
        change = std::max(change, std::abs(inc[k]));
      }
      f_prev = std::move(f);
      ++it;
    }
  }
  if (picard_iterations) *picard_iterations = it;
  require_finite_field(t);
  return t;
}

SolveReport2D HeatSolver2D::solve_transient() {
  const auto start = std::chrono::steady_clock::now();
  SolveReport2D report;
  std::vector<double> t = initial_field();
  const auto n_steps = static_cast<std::size_t>(std::llround(s_.t_end / s_.dt));
  report.picard_iterations.reserve(n_steps);
  for (std::size_t n = 0; n < n_steps; ++n) {
    int it = 0;
    t = step(t, &it);
    report.picard_iterations.push_back(it);
  }
  report.steps = n_steps;
  const auto peak = std::max_element(t.begin(), t.end());
  const auto peak_node = static_cast<std::size_t>(peak - t.begin());
  report.peak_temperature = *peak;
  report.peak_location = s_.mesh->node(peak_node);
  report.peak_distance = signed_distance(report.peak_location, s_.geometry);
  report.interface_temperature =
      s_.mesh->interpolate(t, Vec2{0.0, -s_.geometry.center_radius});
  report.temperature = Field2D(s_.mesh, std::move(t));
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

double HeatSolver2D::source_power(const std::vector<double>& t) const {
  const std::vector<double> f = source_vector(t);
  double sum = 0.0;
  for (double v : f) sum += v;
  return sum;
}

double HeatSolver2D::heat_content(const std::vector<double>& t) const {
  const Eigen::Map<const Eigen::VectorXd> tv(t.data(), static_cast<int>(t.size()));
  return (impl_->mass * tv).sum();
}

std::vector<double> HeatSolver2D::indicator_field() const {
  std::vector<double> chi(s_.mesh->n_nodes());
  for (std::size_t i = 0; i < chi.size(); ++i) {
    chi[i] = indicator(signed_distance(s_.mesh->node(i), s_.geometry), s_.eps);
  }
  return chi;
}

std::vector<double> HeatSolver2D::distance_field() const {
  std::vector<double> d(s_.mesh->n_nodes());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = signed_distance(s_.mesh->node(i), s_.geometry);
  return d;
}

}  // namespace csf
