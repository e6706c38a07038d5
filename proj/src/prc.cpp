#include "phasekit/prc.hpp"

#include <cmath>

namespace phasekit {

PhaseResponseCurve compute_prc(const LimitCycle& lc, const PrcOptions& opts) {
  const int d = lc.dim();
  const int n = lc.samples.grid_size();
  const double tau = lc.period;
  const VectorFieldSpec& vf = lc.field;

  // Z(t) solves Zdot = -J^T(gamma(t)) Z. Substituting u(s) = Z(-s) gives the
  // forward system du/ds = J^T(gamma(-s)) u, integrated over K periods.
  std::vector<double> jac(static_cast<size_t>(d) * d);
  std::vector<double> g(d);
  VectorFieldSpec adj;
  adj.dim = d;
  adj.rhs = [&lc, &vf, d, tau](double s, const double* u, double* du) {
    double tm = std::fmod(-s, tau);
    if (tm < 0.0) tm += tau;
    thread_local std::vector<double> gl, jl;
    gl.resize(d);
    jl.resize(static_cast<size_t>(d) * d);
    lc.dense.eval(tm, gl.data());
    if (vf.jacobian) {
      vf.jacobian(tm, gl.data(), jl.data());
    } else {
      thread_local std::vector<double> x;
      x.assign(gl.begin(), gl.end());
      numerical_jacobian(vf, tm, x, jl);
    }
    for (int i = 0; i < d; ++i) {
      double acc = 0.0;
      for (int k = 0; k < d; ++k) acc += jl[k * d + i] * u[k];  // J^T u
      du[i] = acc;
    }
  };

  // gamma_dot at the anchor for the per-period renormalization
  std::vector<double> gdot0(d);
  for (int c = 0; c < d; ++c) gdot0[c] = lc.derivs.value(0, c);

  auto dot = [d](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (int c = 0; c < d; ++c) s += a[c] * b[c];
    return s;
  };

  std::vector<double> u(d, 0.0);
  u[0] = 1.0;
  for (int c = 1; c < d; ++c) u[c] = 0.5;
  double proj = dot(u, gdot0);
  if (std::abs(proj) < 1e-12) u[0] += 1.0, proj = dot(u, gdot0);
  for (int c = 0; c < d; ++c) u[c] /= proj;

  IntegrateOptions io;
  io.tol = opts.ode_tol;
  io.keep_dense = true;
  io.record_steps = false;

  PeriodicSample Z(n, d), Z_prev(n, d);
  int converged_at = -1;
  for (int k = 0; k < opts.max_periods; ++k) {
    auto res = integrate(adj, u, k * tau, (k + 1) * tau, io);
    u = res.trajectory.states.back();
    for (int c = 0; c < d; ++c)
      if (!std::isfinite(u[c]))
        throw AdjointDivergence("compute_prc: adjoint iterate diverged");
    double pr = dot(u, gdot0);
    if (std::abs(pr) < 1e-300)
      throw AdjointDivergence("compute_prc: adjoint iterate collapsed");
    for (int c = 0; c < d; ++c) u[c] /= pr;
    // sample this period: Z(theta_i) = u(s) at s = (k+1)*tau - theta_i*tau/2pi
    std::vector<double> tmp(d);
    for (int i = 0; i < n; ++i) {
      double s = (k + 1) * tau - tau * i / n;
      res.dense.eval(s, tmp.data());
      for (int c = 0; c < d; ++c) Z.value(i, c) = tmp[c];
    }
    // the boundary renormalization applies to the whole period sample
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < d; ++c) Z.value(i, c) /= pr;
    if (k > 0) {
      double diff = 0.0;
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < d; ++c)
          diff = std::max(diff, std::abs(Z.value(i, c) - Z_prev.value(i, c)));
      if (diff < opts.converge_tol) { converged_at = k + 1; break; }
    }
    Z_prev = Z;
  }
  if (converged_at < 0)
    throw AdjointDivergence("compute_prc: no contraction within " +
                            std::to_string(opts.max_periods) + " periods");

  PhaseResponseCurve prc;
  double resid = 0.0;
  for (int i = 0; i < n; ++i) {
    double p = 0.0;
    for (int c = 0; c < d; ++c) p += Z.value(i, c) * lc.derivs.value(i, c);
    resid = std::max(resid, std::abs(p - 1.0));
    for (int c = 0; c < d; ++c) Z.value(i, c) /= p;  // pointwise enforcement
  }
  prc.samples = std::move(Z);
  prc.normalization_residual = resid;
  prc.periods_to_converge = converged_at;
  return prc;
}

PeriodicSample perturbation_prc(const LimitCycle& lc, int n_phases,
                                double delta, int periods, Tolerances tol) {
  const int d = lc.dim();
  const double T = periods * lc.period;
  PeriodicSample out(n_phases, d);
  IntegrateOptions io;
  io.tol = tol;
  io.record_steps = false;
  for (int m = 0; m < n_phases; ++m) {
    Phase theta(two_pi * m / n_phases);
    std::vector<double> base = lc.state_at(theta);
    auto ref = integrate(lc.field, base, 0.0, T, io);
    Phase th_ref = lc.phase_of_point(ref.trajectory.states.back());
    for (int c = 0; c < d; ++c) {
      std::vector<double> kicked = base;
      kicked[c] += delta;
      auto per = integrate(lc.field, kicked, 0.0, T, io);
      Phase th_per = lc.phase_of_point(per.trajectory.states.back());
      double shift = angle_diff(th_per.value(), th_ref.value());
      out.value(m, c) = shift / delta;
    }
  }
  return out;
}

}  // namespace phasekit
