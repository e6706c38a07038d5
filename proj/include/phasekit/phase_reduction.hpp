#ifndef PHASEKIT_PHASE_REDUCTION_HPP
#define PHASEKIT_PHASE_REDUCTION_HPP

#include <functional>
#include <string>
#include <vector>

#include "phasekit/limit_cycle.hpp"
#include "phasekit/models.hpp"
#include "phasekit/prc.hpp"

namespace phasekit {

// Description of a state-space coupling g(x_j, x_k) -> R^d; x_j is the source
// and x_k the receiving oscillator.
struct CouplingSpec {
  enum class Kind { general, separable, fixed_direction, pulsatile };
  Kind kind = Kind::general;
  int dim = 0;

  // general
  std::function<void(const double* xj, const double* xk, double* out)> g;
  // separable: g = g_in(x_j) ⊙ g_res(x_k) (Hadamard product)
  std::function<void(const double* x, double* out)> g_in, g_res;
  // fixed_direction: g = g_tilde(x_j, x_k) * direction
  std::function<double(const double* xj, const double* xk)> g_tilde;
  std::vector<double> direction;
  // pulsatile: pulse of the source times a constant response vector
  PulseSpec pulse;
  PulseVariant pulse_variant = PulseVariant::phase;
  int pulse_source_component = 0;  // state component fed to a state pulse
  std::vector<double> response;    // constant response vector
  // phase of a source state, needed to evaluate a phase pulse on states
  std::function<double(const double* x)> source_phase;

  void evaluate(const double* xj, const double* xk, double* out) const;
  // consistency self-test for separable couplings (product == combined)
  bool separable_consistent(int n_random_pairs = 100, unsigned seed = 1) const;
};

// the paper's branch-localized product coupling for the FHN pair, d = 2
CouplingSpec fhn_product_coupling();
// pulsatile coupling with constant unit response in the first component
CouplingSpec pulsatile_coupling(const PulseSpec& pulse, PulseVariant variant);

// Doubly periodic scalar function on the (theta_j, theta_k) grid.
class TorusSample {
 public:
  TorusSample() = default;
  explicit TorusSample(int grid_size);
  int grid_size() const { return grid_; }
  double at(int j, int k) const { return v_[static_cast<size_t>(wrap(j)) * grid_ + wrap(k)]; }
  double& at(int j, int k) { return v_[static_cast<size_t>(wrap(j)) * grid_ + wrap(k)]; }
  double max_abs() const;

 private:
  int wrap(int i) const {
    int j = i % grid_;
    return j < 0 ? j + grid_ : j;
  }
  int grid_ = 0;
  std::vector<double> v_;
};

// Induced phase interaction g^PR(theta_j, theta_k) = <Z(theta_k), g-hat>,
// with g-hat the coupling composed with the cycle parametrization.
// Throws GridMismatch when lc and prc grids differ.
TorusSample build_gpr(const LimitCycle& lc, const PhaseResponseCurve& prc,
                      const CouplingSpec& c);

// Averaged interaction h and its antisymmetrization. eps-free: the first-order
// reduction factors the coupling strength out.
struct InteractionFunction {
  PeriodicSample h;
  PeriodicSample h_odd;  // h(x) - h(-x); exactly 0 at 0 and pi on an even grid
  int grid = 0;
};

// h(offset) = mean over s of gpr(s, offset + s): grid-aligned diagonal sums,
// no interpolation, so exact zeros stay exact.
InteractionFunction average_h(const TorusSample& gpr);

// Separable route: h = sum_l circular cross-correlation of Zhat_l = Z_l*g_res_l
// with g_in_l, i.e. h[r] = (1/N) sum_s Zhat[(r+s)%N] * gin[s], summed over
// components. Cross-checked against average_h(build_gpr(...)) in tests.
InteractionFunction interaction_from_separable(
    const std::vector<PeriodicSample>& Zhat,
    const std::vector<PeriodicSample>& gin);

PeriodicSample make_h_odd(const PeriodicSample& h);

// order-K Fourier partial sum resampled on the grid (pre: K < N/2)
PeriodicSample fourier_truncate(const PeriodicSample& f, int K);

}  // namespace phasekit

#endif
