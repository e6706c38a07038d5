#include "phasekit/models.hpp"

#include <cmath>

#include "phasekit/quad.hpp"

namespace phasekit {

VectorFieldSpec fhn_single(const FHNParams& p) {
  VectorFieldSpec vf;
  vf.dim = 2;
  vf.rhs = [p](double, const double* x, double* dx) {
    const double v = x[0], w = x[1];
    dx[0] = (v - v * v * v / 3.0 - w + p.i) / p.mu;
    dx[1] = v + p.a - p.b * w;
  };
  vf.jacobian = [p](double, const double* x, double* J) {
    const double v = x[0];
    J[0] = (1.0 - v * v) / p.mu;
    J[1] = -1.0 / p.mu;
    J[2] = 1.0;
    J[3] = -p.b;
  };
  return vf;
}

VectorFieldSpec fhn_single_fast_time(const FHNParams& p) {
  VectorFieldSpec vf;
  vf.dim = 2;
  vf.rhs = [p](double, const double* x, double* dx) {
    const double v = x[0], w = x[1];
    dx[0] = v - v * v * v / 3.0 - w + p.i;
    dx[1] = p.mu * (v + p.a - p.b * w);
  };
  vf.jacobian = [p](double, const double* x, double* J) {
    const double v = x[0];
    J[0] = 1.0 - v * v;
    J[1] = -1.0;
    J[2] = p.mu;
    J[3] = -p.mu * p.b;
  };
  return vf;
}

EventSpec fhn_anchor_section() {
  EventSpec e;
  e.value = [](const double* x) { return x[0]; };
  e.direction = +1;
  return e;
}

namespace {
inline double product_coupling(double v_own, double v_partner) {
  return (v_own > 0.0 && v_partner > 0.0) ? v_own * v_partner : 0.0;
}
}  // namespace

VectorFieldSpec fhn_pair_product(const FHNParams& p, double eps) {
  VectorFieldSpec vf;
  vf.dim = 4;
  vf.rhs = [p, eps](double, const double* x, double* dx) {
    const double v1 = x[0], w1 = x[1], v2 = x[2], w2 = x[3];
    dx[0] = (v1 - v1 * v1 * v1 / 3.0 - w1 + p.i) / p.mu +
            eps * product_coupling(v1, v2);
    dx[1] = v1 + p.a - p.b * w1;
    dx[2] = (v2 - v2 * v2 * v2 / 3.0 - w2 + p.i) / p.mu +
            eps * product_coupling(v2, v1);
    dx[3] = v2 + p.a - p.b * w2;
  };
  return vf;
}

double bump_profile(double x) {
  if (x <= -1.0 || x >= 1.0) return 0.0;
  double d = 1.0 - x * x;
  if (1.0 / d > 700.0) return 0.0;  // clamp denormal-range tails to zero
  return std::exp(-1.0 / d);
}

double PulseSpec::eval(double phi) const {
  // wrap the argument to the nearest representative of (phi - center)
  double x = angle_diff(phi, center) / half_width;
  return amplitude * bump_profile(x);
}

PulseSpec bump_pulse(double center, double half_width) {
  if (!(half_width > 0.0) || 2.0 * half_width >= two_pi)
    throw WidthTooLarge("bump_pulse: need 0 < half_width < pi");
  PulseSpec s;
  s.center = center;
  s.half_width = half_width;
  // circular mean 1:  (1/2pi) * a * b * I0 = 1  with I0 the bump integral
  double I0 = adaptive_simpson(bump_profile, -1.0, 1.0, 1e-14);
  s.amplitude = two_pi / (half_width * I0);
  return s;
}

VectorFieldSpec fhn_pair_pulsatile(const FHNParams& p, double eps,
                                   const PulseSpec& pulse, PulseVariant variant,
                                   const GeometricPhaseMap* phase_map) {
  if (variant == PulseVariant::phase && phase_map == nullptr)
    throw std::invalid_argument(
        "fhn_pair_pulsatile: the phase variant needs a GeometricPhaseMap");
  VectorFieldSpec vf;
  vf.dim = 4;
  const GeometricPhaseMap* map = phase_map;
  vf.rhs = [p, eps, pulse, variant, map](double, const double* x, double* dx) {
    const double v1 = x[0], w1 = x[1], v2 = x[2], w2 = x[3];
    double p12, p21;  // pulse of the partner felt by 1, by 2
    if (variant == PulseVariant::state) {
      p12 = pulse.eval(v2);
      p21 = pulse.eval(v1);
    } else {
      p12 = pulse.eval(map->theta_of_state(v2, w2).value());
      p21 = pulse.eval(map->theta_of_state(v1, w1).value());
    }
    dx[0] = (v1 - v1 * v1 * v1 / 3.0 - w1 + p.i) / p.mu + eps * p12;
    dx[1] = v1 + p.a - p.b * w1;
    dx[2] = (v2 - v2 * v2 * v2 / 3.0 - w2 + p.i) / p.mu + eps * p21;
    dx[3] = v2 + p.a - p.b * w2;
  };
  return vf;
}

namespace {
// stable-branch root of v - v^3/3 + i = w by Newton from a seed beyond the fold
double cubic_branch(double w, double i, double seed) {
  double v = seed;
  for (int it = 0; it < 80; ++it) {
    double f = v - v * v * v / 3.0 + i - w;
    double fp = 1.0 - v * v;
    double step = f / fp;
    v -= step;
    if (std::abs(step) < 1e-14) break;
  }
  return v;
}
}  // namespace

CriticalManifold fhn_critical_manifold(const FHNParams& p) {
  CriticalManifold cm;
  auto w_of = [p](double v) { return v - v * v * v / 3.0 + p.i; };
  // folds where df/dv = 1 - v^2 = 0; the drop point is the other root of
  // w_of(v) = w_fold:  (v - v_f)^2 (v + 2 v_f) factorization gives -2 v_f
  for (double vf : {1.0, -1.0})
    cm.folds.push_back({vf, w_of(vf), -2.0 * vf});
  double i = p.i;
  cm.branch_v_right = [i](double w) { return cubic_branch(w, i, 2.0); };
  cm.branch_v_left = [i](double w) { return cubic_branch(w, i, -2.0); };
  return cm;
}

SlowFastModel fhn_slow_fast(const FHNParams& p) {
  SlowFastModel m;
  m.f = [p](double v, double w) { return v - v * v * v / 3.0 - w + p.i; };
  m.g = [p](double v, double w) { return v + p.a - p.b * w; };
  m.fv = [](double v, double) { return 1.0 - v * v; };
  m.fw = [](double, double) { return -1.0; };
  // traversal order from the anchor (upward v = 0 crossing): the coupled
  // v > 0 branch first (entered at the drop point v = 2), then the v < 0 one
  m.cycle_branches = {{2.0, 1.0, "v>0"}, {-2.0, -1.0, "v<0"}};
  return m;
}

VectorFieldSpec hopf_normal_form() {
  VectorFieldSpec vf;
  vf.dim = 2;
  vf.rhs = [](double, const double* x, double* dx) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    dx[0] = x[0] * (1.0 - r2) - x[1];
    dx[1] = x[1] * (1.0 - r2) + x[0];
  };
  vf.jacobian = [](double, const double* x, double* J) {
    const double X = x[0], Y = x[1];
    J[0] = 1.0 - 3.0 * X * X - Y * Y;
    J[1] = -2.0 * X * Y - 1.0;
    J[2] = -2.0 * X * Y + 1.0;
    J[3] = 1.0 - X * X - 3.0 * Y * Y;
  };
  return vf;
}

}  // namespace phasekit
