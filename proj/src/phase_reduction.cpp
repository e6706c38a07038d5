#include "phasekit/phase_reduction.hpp"

#include <cmath>
#include <random>

namespace phasekit {

void CouplingSpec::evaluate(const double* xj, const double* xk,
                            double* out) const {
  switch (kind) {
    case Kind::general:
      g(xj, xk, out);
      return;
    case Kind::separable: {
      thread_local std::vector<double> a, b;
      a.resize(dim);
      b.resize(dim);
      g_in(xj, a.data());
      g_res(xk, b.data());
      for (int c = 0; c < dim; ++c) out[c] = a[c] * b[c];
      return;
    }
    case Kind::fixed_direction: {
      double s = g_tilde(xj, xk);
      for (int c = 0; c < dim; ++c) out[c] = s * direction[c];
      return;
    }
    case Kind::pulsatile: {
      double arg = (pulse_variant == PulseVariant::state)
                       ? xj[pulse_source_component]
                       : source_phase(xj);
      double p = pulse.eval(arg);
      for (int c = 0; c < dim; ++c) out[c] = p * response[c];
      return;
    }
  }
}

bool CouplingSpec::separable_consistent(int n_random_pairs,
                                        unsigned seed) const {
  if (kind != Kind::separable) return true;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> xj(dim), xk(dim), a(dim), b(dim), out(dim);
  for (int t = 0; t < n_random_pairs; ++t) {
    for (int c = 0; c < dim; ++c) xj[c] = u(rng), xk[c] = u(rng);
    evaluate(xj.data(), xk.data(), out.data());
    g_in(xj.data(), a.data());
    g_res(xk.data(), b.data());
    for (int c = 0; c < dim; ++c)
      if (out[c] != a[c] * b[c]) return false;
  }
  return true;
}

CouplingSpec fhn_product_coupling() {
  CouplingSpec c;
  c.kind = CouplingSpec::Kind::separable;
  c.dim = 2;
  auto ramp = [](const double* x, double* out) {
    out[0] = x[0] > 0.0 ? x[0] : 0.0;
    out[1] = 0.0;
  };
  c.g_in = ramp;
  c.g_res = ramp;
  return c;
}

CouplingSpec pulsatile_coupling(const PulseSpec& pulse, PulseVariant variant) {
  CouplingSpec c;
  c.kind = CouplingSpec::Kind::pulsatile;
  c.dim = 2;
  c.pulse = pulse;
  c.pulse_variant = variant;
  c.pulse_source_component = 0;
  c.response = {1.0, 0.0};
  return c;
}

TorusSample::TorusSample(int grid_size)
    : grid_(grid_size),
      v_(static_cast<size_t>(grid_size) * grid_size, 0.0) {}

double TorusSample::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

TorusSample build_gpr(const LimitCycle& lc, const PhaseResponseCurve& prc,
                      const CouplingSpec& c) {
  const int n = lc.samples.grid_size();
  const int d = lc.dim();
  if (prc.samples.grid_size() != n || prc.samples.dim() != d)
    throw GridMismatch("build_gpr: cycle and PRC grids differ");
  TorusSample out(n);
  // cycle states as contiguous rows for cheap pointer access
  std::vector<double> states(static_cast<size_t>(n) * d);
  for (int i = 0; i < n; ++i)
    for (int cdim = 0; cdim < d; ++cdim)
      states[static_cast<size_t>(i) * d + cdim] = lc.samples.value(i, cdim);

  const bool phase_pulse = c.kind == CouplingSpec::Kind::pulsatile &&
                           c.pulse_variant == PulseVariant::phase;
  std::vector<double> gval(d);
  for (int j = 0; j < n; ++j) {
    const double* xj = &states[static_cast<size_t>(j) * d];
    double pj = 0.0;
    if (phase_pulse) pj = c.pulse.eval(two_pi * j / n);
    for (int k = 0; k < n; ++k) {
      const double* xk = &states[static_cast<size_t>(k) * d];
      double acc = 0.0;
      if (phase_pulse) {
        for (int cdim = 0; cdim < d; ++cdim)
          acc += prc.samples.value(k, cdim) * pj * c.response[cdim];
      } else {
        c.evaluate(xj, xk, gval.data());
        for (int cdim = 0; cdim < d; ++cdim)
          acc += prc.samples.value(k, cdim) * gval[cdim];
      }
      out.at(j, k) = acc;
    }
  }
  return out;
}

PeriodicSample make_h_odd(const PeriodicSample& h) {
  const int n = h.grid_size();
  PeriodicSample odd(n, 1);
  for (int r = 0; r < n; ++r) odd.value(r) = h.value(r) - h.value((n - r) % n);
  return odd;
}

InteractionFunction average_h(const TorusSample& gpr) {
  const int n = gpr.grid_size();
  InteractionFunction out;
  out.grid = n;
  out.h = PeriodicSample(n, 1);
  for (int r = 0; r < n; ++r) {
    double acc = 0.0;
    for (int s = 0; s < n; ++s) acc += gpr.at(s, s + r);
    out.h.value(r) = acc / n;
  }
  out.h_odd = make_h_odd(out.h);
  return out;
}

InteractionFunction interaction_from_separable(
    const std::vector<PeriodicSample>& Zhat,
    const std::vector<PeriodicSample>& gin) {
  if (Zhat.size() != gin.size() || Zhat.empty())
    throw GridMismatch("interaction_from_separable: component count mismatch");
  const int n = Zhat[0].grid_size();
  for (const auto& s : Zhat)
    if (s.grid_size() != n) throw GridMismatch("interaction_from_separable");
  for (const auto& s : gin)
    if (s.grid_size() != n) throw GridMismatch("interaction_from_separable");
  InteractionFunction out;
  out.grid = n;
  out.h = PeriodicSample(n, 1);
  for (int r = 0; r < n; ++r) {
    double acc = 0.0;
    for (size_t l = 0; l < Zhat.size(); ++l)
      for (int s = 0; s < n; ++s)
        acc += Zhat[l].value(s + r) * gin[l].value(s);
    out.h.value(r) = acc / n;
  }
  out.h_odd = make_h_odd(out.h);
  return out;
}

PeriodicSample fourier_truncate(const PeriodicSample& f, int K) {
  const int n = f.grid_size();
  if (K >= n / 2)
    throw std::invalid_argument("fourier_truncate: K < N/2 required");
  // direct DFT of the low modes, then resynthesis
  std::vector<double> ak(K + 1, 0.0), bk(K + 1, 0.0);
  for (int k = 0; k <= K; ++k) {
    double ca = 0.0, cb = 0.0;
    for (int i = 0; i < n; ++i) {
      double ang = two_pi * k * i / n;
      ca += f.value(i) * std::cos(ang);
      cb += f.value(i) * std::sin(ang);
    }
    ak[k] = 2.0 * ca / n;
    bk[k] = 2.0 * cb / n;
  }
  PeriodicSample out(n, 1);
  for (int i = 0; i < n; ++i) {
    double acc = 0.5 * ak[0];
    for (int k = 1; k <= K; ++k) {
      double ang = two_pi * k * i / n;
      acc += ak[k] * std::cos(ang) + bk[k] * std::sin(ang);
    }
    out.value(i) = acc;
  }
  return out;
}

}  // namespace phasekit
