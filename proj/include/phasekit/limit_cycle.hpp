#ifndef PHASEKIT_LIMIT_CYCLE_HPP
#define PHASEKIT_LIMIT_CYCLE_HPP

#include <string>
#include <vector>

#include "phasekit/ode.hpp"
#include "phasekit/periodic.hpp"
#include "phasekit/torus.hpp"

namespace phasekit {

// Stable periodic orbit of one oscillator, parametrized by uniform phase
// theta in [0, 2pi) with theta = 0 at the section anchor.
struct LimitCycle {
  double period = 0.0;
  PeriodicSample samples;  // states on the phase grid, dim = d
  PeriodicSample derivs;   // vector field at the samples
  std::string anchor;
  DenseOutput dense;       // one period of dense output starting at the anchor
  VectorFieldSpec field;

  int dim() const { return samples.dim(); }
  double omega() const { return two_pi / period; }
  // state at arbitrary phase via the dense interpolant
  std::vector<double> state_at(Phase theta) const;
  std::vector<double> state_at_time(double t) const;  // t taken mod period
  // phase of a point assumed (near) on the cycle: orthogonal projection onto
  // the orbit, Newton-refined from the closest grid sample
  Phase phase_of_point(const std::vector<double>& x) const;
};

struct FindCycleOptions {
  double warmup = 200.0;
  double return_tol = 1e-10;    // convergence of successive return points
  int max_returns = 200;
  double t_return_max = 50.0;   // bound on one return time
  Tolerances ode_tol{1e-10, 1e-12};
  int grid = 2048;
  int snap_component = -1;      // zero this component at phase 0 (anchor)
  double min_transversal_speed = 1e-8;
};

// Locates the attracting cycle by integrating through `warmup`, then following
// successive section crossings until two return points agree to return_tol.
// Throws NoCycle / NonTransversal.
LimitCycle find_limit_cycle(const VectorFieldSpec& vf,
                            const std::vector<double>& x0,
                            const EventSpec& section,
                            const FindCycleOptions& opts = {});

// Geometric angle of a planar state seen from `center`, measured from the
// downward vertical ray (v = cx, w < cy), in [0, 2pi).
Phase geometric_phase(double v, double w, double cx = 0.0, double cy = 0.5);

// Tabulated monotone map theta -> psi along a planar cycle and its inverse.
class GeometricPhaseMap {
 public:
  GeometricPhaseMap(const LimitCycle& lc, double cx = 0.0, double cy = 0.5);
  Phase psi_from_theta(Phase theta) const;
  Phase theta_from_psi(Phase psi) const;
  Phase theta_of_state(double v, double w) const;
  double center_x() const { return cx_; }
  double center_y() const { return cy_; }

 private:
  double cx_, cy_;
  double psi0_;                    // psi at theta = 0
  std::vector<double> psi_;        // unwrapped, strictly increasing, psi_[0] = 0
  int grid_;
};

Phase phase_from_geometric(const GeometricPhaseMap& map, Phase psi);

// ---- slow-fast singular analysis ----

// Two-branch slow-fast oscillator in the scaling mu*dv/dt = f, dw/dt = g.
struct SlowFastModel {
  std::function<double(double v, double w)> f, g;
  std::function<double(double v, double w)> fv;  // df/dv
  std::function<double(double v, double w)> fw;  // df/dw
  // stable branches in cycle traversal order: entered at the drop point,
  // left at the fold
  struct Branch {
    double v_drop;
    double v_fold;
    std::string label;
  };
  std::vector<Branch> cycle_branches;
  // w on the critical manifold near branch point v (Newton on f(v, .) = 0)
  double manifold_w(double v, double w_seed) const;
};

struct BranchReport {
  struct Entry {
    std::string label;
    double fraction;   // singular residence fraction, sums to 1 over entries
    double duration;   // slow-time duration on the branch
    Arc phase_arc;     // singular phase arc occupied by the branch
  };
  std::vector<Entry> branches;
  double singular_period = 0.0;
};

// Singular (mu -> 0) residence times from the slow-flow quadrature
// integral dw / g along each stable branch. Throws FoldNotFound / SlowFlowZero.
BranchReport singular_residence(const SlowFastModel& model);

// Fraction of the finite-mu cycle spent within `v_tol` (in v) of each branch
// of `model`, in cycle_branches order. Fractions need not sum to 1: the fast
// jumps belong to no branch.
std::vector<double> measured_branch_fractions(const LimitCycle& lc,
                                              const SlowFastModel& model,
                                              double v_tol = 0.2);

}  // namespace phasekit

#endif
