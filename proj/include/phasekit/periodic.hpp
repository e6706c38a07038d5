#ifndef PHASEKIT_PERIODIC_HPP
#define PHASEKIT_PERIODIC_HPP

#include <functional>
#include <vector>

#include "phasekit/torus.hpp"

namespace phasekit {

// Scalar or vector function on the circle, stored on the uniform grid
// theta_i = 2*pi*i/N.  Evaluation between grid points is piecewise linear,
// which keeps exact zero plateaus exactly zero.
class PeriodicSample {
 public:
  PeriodicSample() = default;
  PeriodicSample(int grid_size, int dim);
  static PeriodicSample from_values(std::vector<double> values);
  static PeriodicSample from_function(int grid_size,
                                      const std::function<double(double)>& f);

  int grid_size() const { return grid_; }
  int dim() const { return dim_; }
  double cell() const { return two_pi / grid_; }
  double phase_at(int i) const { return two_pi * i / grid_; }

  double value(int i, int c = 0) const { return v_[index(i) * dim_ + c]; }
  double& value(int i, int c = 0) { return v_[index(i) * dim_ + c]; }
  const std::vector<double>& raw() const { return v_; }

  // linear interpolation; exact at grid points
  double eval(double theta, int c = 0) const;
  std::vector<double> eval_vec(double theta) const;

  double max_abs(int c = 0) const;
  // extracts one component as a scalar sample
  PeriodicSample component(int c) const;

 private:
  int index(int i) const {
    int j = i % grid_;
    return j < 0 ? j + grid_ : j;
  }
  int grid_ = 0;
  int dim_ = 1;
  std::vector<double> v_;
};

// (1/2pi) * integral of f over the circle = mean of the grid values; exact
// for constants and spectrally accurate for smooth periodic integrands.
double circular_mean(const PeriodicSample& f, int c = 0);

// g(theta) = f(theta + delta); exact cyclic rotation when delta is a whole
// number of grid cells.
PeriodicSample shift(const PeriodicSample& f, double delta);

// Maximal arcs on which max_c |f_c| <= eta pointwise on the grid, merged
// across the 0/2pi seam.  Runs of a single grid point are discarded (an
// isolated zero is not an arc); an all-quiet grid gives one full-circle arc.
std::vector<Arc> maximal_zero_arcs(const PeriodicSample& f, double eta);

}  // namespace phasekit

#endif
