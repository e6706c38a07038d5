#ifndef PHASEKIT_MODELS_HPP
#define PHASEKIT_MODELS_HPP

#include "phasekit/limit_cycle.hpp"
#include "phasekit/ode.hpp"

namespace phasekit {

struct FHNParams {
  double a = 0.7;
  double b = 0.8;
  double i = 0.33;
  double mu = 0.05;
};

// FitzHugh-Nagumo oscillator in the slow-fast scaling used throughout the
// pipeline: dv/dt = (v - v^3/3 - w + i)/mu, dw/dt = v + a - b*w.
// Time units are such that the period stays O(1) as mu -> 0 (tau ~ 3.36 at
// the default parameters).
VectorFieldSpec fhn_single(const FHNParams& p);

// Same orbit in the textbook scaling dv/dt = v - v^3/3 - w + i,
// dw/dt = mu*(v + a - b*w); equals fhn_single * mu, period tau/mu.
VectorFieldSpec fhn_single_fast_time(const FHNParams& p);

// Section event for the phase-zero anchor: upward crossing of v = 0 (the
// cycle's only upward crossing has w < 0).
EventSpec fhn_anchor_section();

// Coupled pair with the branch-localized product coupling
//   I(v1, v2) = v1*v2 if v1 > 0 and v2 > 0, else 0,
// entering both dv/dt equations with strength eps. State (v1, w1, v2, w2).
VectorFieldSpec fhn_pair_product(const FHNParams& p, double eps);

// Normalized compactly supported pulse P(phi) = a * Pbump((phi - c)/b) with
// support [c - b, c + b] and circular mean 1.
struct PulseSpec {
  double center = 1.0;
  double half_width = 0.5;
  double amplitude = 0.0;  // computed by bump_pulse
  double eval(double phi) const;
};

// Computes the normalization constant; throws WidthTooLarge when 2b >= 2pi.
PulseSpec bump_pulse(double center, double half_width);

// the unnormalized bump exp(-1/(1-x^2)) on (-1,1), 0 outside
double bump_profile(double x);

enum class PulseVariant { state, phase };

// Pulsatile pair: each dv/dt receives eps * P(arg of the partner).
// variant state: arg = partner's voltage (as the equations are written);
// variant phase: arg = partner's phase on the reference cycle, extracted
// through the geometric-phase map (required for that variant).
VectorFieldSpec fhn_pair_pulsatile(const FHNParams& p, double eps,
                                   const PulseSpec& pulse, PulseVariant variant,
                                   const GeometricPhaseMap* phase_map = nullptr);

// Critical manifold of the FHN fast equation: w = v - v^3/3 + i with folds at
// v = +-1 and drop points at v = -+2.
struct CriticalManifold {
  struct Fold {
    double v;
    double w;
    double v_drop;  // landing branch point of the layer flow past this fold
  };
  std::vector<Fold> folds;
  // stable branch solution of f = 0 (|v| > 1), right = true for v > 1
  std::function<double(double w)> branch_v_right, branch_v_left;
};

CriticalManifold fhn_critical_manifold(const FHNParams& p);

// Slow-fast description for the singular residence computation; the coupled
// (v > 0) branch comes first.
SlowFastModel fhn_slow_fast(const FHNParams& p);

// Hopf normal form in Cartesian coordinates: unit circle cycle, period 2pi.
VectorFieldSpec hopf_normal_form();

}  // namespace phasekit

#endif
