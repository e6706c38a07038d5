#ifndef PHASEKIT_ODE_HPP
#define PHASEKIT_ODE_HPP

#include <functional>
#include <vector>

#include "phasekit/errors.hpp"

namespace phasekit {

// Right-hand side (and optionally its Jacobian) of an autonomous or
// time-dependent vector field on R^d.
struct VectorFieldSpec {
  int dim = 0;
  // dxdt[0..dim) from (t, x[0..dim))
  std::function<void(double t, const double* x, double* dxdt)> rhs;
  // row-major dim x dim Jacobian; empty means finite differences
  std::function<void(double t, const double* x, double* jac)> jacobian;
};

// Central finite-difference Jacobian, step 1e-6 scaled by 1+|x_j|.
void numerical_jacobian(const VectorFieldSpec& vf, double t,
                        const std::vector<double>& x, std::vector<double>& jac);

struct Tolerances {
  double rel = 1e-10;
  double abs = 1e-12;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
};

// Quartic dense-output interpolant of one accepted Dormand-Prince step.
struct DenseSegment {
  double t0 = 0.0, h = 0.0;
  std::vector<double> c;  // 5 coefficient blocks of length dim
};

class DenseOutput {
 public:
  DenseOutput() = default;
  DenseOutput(int dim, std::vector<DenseSegment> segments);
  int dim() const { return dim_; }
  double t_begin() const;
  double t_end() const;
  void eval(double t, double* out) const;
  std::vector<double> eval(double t) const;

 private:
  int dim_ = 0;
  std::vector<DenseSegment> segs_;
};

struct IntegrateOptions {
  Tolerances tol;
  double max_step = 0.1;
  double first_step = 0.0;  // 0 = automatic
  bool keep_dense = false;
  bool record_steps = true;              // store every accepted step
  const std::vector<double>* sample_times = nullptr;  // dense-resampled output
};

struct IntegrationResult {
  Trajectory trajectory;
  DenseOutput dense;  // empty unless keep_dense
  long steps_accepted = 0;
  long steps_rejected = 0;
};

// Dormand-Prince 5(4) with PI step-size control and quartic dense output.
// Local error per step <= abs + rel*|state| componentwise.
// Throws StepSizeUnderflow when the step falls below 1e-14 * |t1 - t0|.
IntegrationResult integrate(const VectorFieldSpec& vf,
                            const std::vector<double>& x0, double t0, double t1,
                            const IntegrateOptions& opts = {});

struct EventSpec {
  std::function<double(const double* x)> value;
  int direction = +1;  // +1 upward, -1 downward, 0 both
};

struct EventResult {
  double t = 0.0;
  std::vector<double> state;
};

struct EventOptions {
  Tolerances tol;
  double max_step = 0.1;
  double t_min = 0.0;        // ignore crossings before t0 + t_min
  double refine_abs = 1e-12; // bisection target on |e|
  int refine_max_iter = 50;
};

// First time in (t0 + t_min, t_max] where e(x(t)) crosses zero in the given
// direction, refined by bisection on the dense output. Throws NoEvent.
EventResult integrate_to_event(const VectorFieldSpec& vf,
                               const std::vector<double>& x0, double t0,
                               double t_max, const EventSpec& event,
                               const EventOptions& opts = {});

}  // namespace phasekit

#endif
