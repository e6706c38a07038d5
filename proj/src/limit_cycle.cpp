#include "phasekit/limit_cycle.hpp"

#include <algorithm>
#include <cmath>

#include "phasekit/quad.hpp"

namespace phasekit {

std::vector<double> LimitCycle::state_at(Phase theta) const {
  return state_at_time(theta.value() / two_pi * period);
}

std::vector<double> LimitCycle::state_at_time(double t) const {
  double tm = std::fmod(t, period);
  if (tm < 0.0) tm += period;
  return dense.eval(tm);
}

Phase LimitCycle::phase_of_point(const std::vector<double>& x) const {
  const int n = dim();
  // nearest grid sample
  int best = 0;
  double best_d = 1e300;
  for (int i = 0; i < samples.grid_size(); ++i) {
    double d = 0.0;
    for (int c = 0; c < n; ++c) {
      double e = samples.value(i, c) - x[c];
      d += e * e;
    }
    if (d < best_d) { best_d = d; best = i; }
  }
  // Newton on <x - gamma(t), gamma'(t)> = 0
  double t = samples.phase_at(best) / two_pi * period;
  std::vector<double> g(n), gd(n);
  for (int it = 0; it < 60; ++it) {
    double tm = std::fmod(t, period);
    if (tm < 0.0) tm += period;
    dense.eval(tm, g.data());
    field.rhs(0.0, g.data(), gd.data());
    double num = 0.0, den = 0.0;
    for (int c = 0; c < n; ++c) {
      num += (x[c] - g[c]) * gd[c];
      den += gd[c] * gd[c];
    }
    double dt = num / den;
    t += dt;
    if (std::abs(dt) < 1e-14 * period) break;
  }
  return Phase(wrap_angle(t / period * two_pi));
}

LimitCycle find_limit_cycle(const VectorFieldSpec& vf,
                            const std::vector<double>& x0,
                            const EventSpec& section,
                            const FindCycleOptions& opts) {
  IntegrateOptions warm;
  warm.tol = opts.ode_tol;
  warm.record_steps = false;
  std::vector<double> state = x0;
  if (opts.warmup > 0.0) {
    auto res = integrate(vf, state, 0.0, opts.warmup, warm);
    state = res.trajectory.states.back();
  }
  EventOptions ev;
  ev.tol = opts.ode_tol;
  // land on the section once
  EventResult hit;
  try {
    hit = integrate_to_event(vf, state, 0.0, opts.t_return_max, section, ev);
  } catch (const NoEvent&) {
    throw NoCycle("find_limit_cycle: trajectory never reaches the section");
  }
  state = hit.state;
  // successive returns until the map contracts below return_tol
  double period = 0.0;
  bool converged = false;
  ev.t_min = 1e-3;  // skip the departure from the section itself
  for (int k = 0; k < opts.max_returns; ++k) {
    EventResult ret;
    try {
      ret = integrate_to_event(vf, state, 0.0, opts.t_return_max, section, ev);
    } catch (const NoEvent&) {
      throw NoCycle("find_limit_cycle: return to section not found");
    }
    double dist = 0.0;
    for (int c = 0; c < vf.dim; ++c)
      dist = std::max(dist, std::abs(ret.state[c] - state[c]));
    state = ret.state;
    period = ret.t;
    ev.t_min = 0.25 * period;
    if (dist < opts.return_tol) { converged = true; break; }
  }
  if (!converged)
    throw NoCycle("find_limit_cycle: returns did not converge within " +
                  std::to_string(opts.max_returns) + " iterations");

  // transversality: e must change at a healthy rate at the anchor
  {
    std::vector<double> f(vf.dim), xp(state);
    vf.rhs(0.0, state.data(), f.data());
    double e0 = section.value(state.data());
    const double ds = 1e-6;
    for (int c = 0; c < vf.dim; ++c) xp[c] = state[c] + ds * f[c];
    double speed = std::abs(section.value(xp.data()) - e0) / ds;
    if (speed < opts.min_transversal_speed)
      throw NonTransversal("find_limit_cycle: section crossing speed " +
                           std::to_string(speed));
  }

  LimitCycle lc;
  lc.period = period;
  lc.field = vf;
  lc.anchor = "section e(x)=0, de/dt>0 at phase 0";

  IntegrateOptions one;
  one.tol = opts.ode_tol;
  one.keep_dense = true;
  one.record_steps = false;
  auto res = integrate(vf, state, 0.0, period, one);
  // closure check: one period must return to the anchor
  {
    const auto& endpt = res.trajectory.states.back();
    double gap = 0.0;
    for (int c = 0; c < vf.dim; ++c)
      gap = std::max(gap, std::abs(endpt[c] - state[c]));
    if (gap > 1e-6)
      throw NoCycle("find_limit_cycle: period closure gap " +
                    std::to_string(gap));
  }
  lc.dense = std::move(res.dense);

  lc.samples = PeriodicSample(opts.grid, vf.dim);
  lc.derivs = PeriodicSample(opts.grid, vf.dim);
  std::vector<double> y(vf.dim), dy(vf.dim);
  for (int i = 0; i < opts.grid; ++i) {
    double t = period * i / opts.grid;
    lc.dense.eval(t, y.data());
    if (i == 0 && opts.snap_component >= 0) y[opts.snap_component] = 0.0;
    vf.rhs(t, y.data(), dy.data());
    for (int c = 0; c < vf.dim; ++c) {
      lc.samples.value(i, c) = y[c];
      lc.derivs.value(i, c) = dy[c];
    }
  }
  return lc;
}

Phase geometric_phase(double v, double w, double cx, double cy) {
  double dx = v - cx, dy = cy - w;
  if (std::sqrt(dx * dx + dy * dy) < 1e-12)
    throw DegeneratePoint("geometric_phase: state coincides with center");
  return Phase(std::atan2(dx, dy));
}

GeometricPhaseMap::GeometricPhaseMap(const LimitCycle& lc, double cx, double cy)
    : cx_(cx), cy_(cy), grid_(lc.samples.grid_size()) {
  if (lc.dim() != 2)
    throw std::invalid_argument("GeometricPhaseMap: planar cycles only");
  psi_.resize(grid_ + 1);
  double prev_raw =
      geometric_phase(lc.samples.value(0, 0), lc.samples.value(0, 1), cx, cy)
          .value();
  psi0_ = prev_raw;
  psi_[0] = 0.0;
  for (int i = 1; i <= grid_; ++i) {
    int j = i % grid_;
    double raw =
        geometric_phase(lc.samples.value(j, 0), lc.samples.value(j, 1), cx, cy)
            .value();
    double step = wrap_angle(raw - prev_raw);
    if (step <= 0.0 || step > 3.0)
      throw NonMonotone("GeometricPhaseMap: psi not increasing at grid index " +
                        std::to_string(i));
    psi_[i] = psi_[i - 1] + step;
    prev_raw = raw;
  }
  if (std::abs(psi_[grid_] - two_pi) > 1e-6)
    throw NonMonotone("GeometricPhaseMap: psi winding number is not 1");
}

Phase GeometricPhaseMap::psi_from_theta(Phase theta) const {
  double u = theta.value() / two_pi * grid_;
  int i = static_cast<int>(std::floor(u));
  double frac = u - i;
  if (i >= grid_) { i = grid_ - 1; frac = 1.0; }
  return Phase(psi0_ + (1.0 - frac) * psi_[i] + frac * psi_[i + 1]);
}

Phase GeometricPhaseMap::theta_from_psi(Phase psi) const {
  double target = wrap_angle(psi.value() - psi0_);
  // binary search in the strictly increasing table
  int lo = 0, hi = grid_;
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    if (psi_[mid] <= target) lo = mid; else hi = mid;
  }
  double frac = (target - psi_[lo]) / (psi_[lo + 1] - psi_[lo]);
  return Phase((lo + frac) * two_pi / grid_);
}

Phase GeometricPhaseMap::theta_of_state(double v, double w) const {
  return theta_from_psi(geometric_phase(v, w, cx_, cy_));
}

Phase phase_from_geometric(const GeometricPhaseMap& map, Phase psi) {
  return map.theta_from_psi(psi);
}

double SlowFastModel::manifold_w(double v, double w_seed) const {
  double w = w_seed;
  for (int it = 0; it < 80; ++it) {
    double fval = f(v, w);
    double d = fw(v, w);
    double step = fval / d;
    w -= step;
    if (std::abs(step) < 1e-14 * (1.0 + std::abs(w))) break;
  }
  return w;
}

BranchReport singular_residence(const SlowFastModel& model) {
  BranchReport rep;
  double total = 0.0;
  for (const auto& br : model.cycle_branches) {
    // fold check: df/dv must vanish at the fold on the manifold
    double w_fold = model.manifold_w(br.v_fold, 0.0);
    if (std::abs(model.fv(br.v_fold, w_fold)) > 1e-8)
      throw FoldNotFound("singular_residence: df/dv = " +
                         std::to_string(model.fv(br.v_fold, w_fold)) +
                         " at declared fold of branch " + br.label);
    // slow flow must not vanish along the branch interior
    auto w_of_v = [&](double v) { return model.manifold_w(v, 0.0); };
    const int n_check = 256;
    double sign0 = 0.0;
    for (int i = 1; i < n_check; ++i) {
      double v = br.v_drop + (br.v_fold - br.v_drop) * i / n_check;
      double gval = model.g(v, w_of_v(v));
      if (std::abs(gval) < 1e-12)
        throw SlowFlowZero("singular_residence: g vanishes on branch " +
                           br.label);
      if (sign0 == 0.0) sign0 = gval > 0 ? 1.0 : -1.0;
      else if ((gval > 0 ? 1.0 : -1.0) != sign0)
        throw SlowFlowZero("singular_residence: g changes sign on branch " +
                           br.label);
    }
    // slow time: dt = dw / g with dw = (dW/dv) dv and dW/dv = -fv/fw
    auto integrand = [&](double v) {
      double w = w_of_v(v);
      return -model.fv(v, w) / model.fw(v, w) / model.g(v, w);
    };
    double dur = std::abs(
        adaptive_simpson(integrand, br.v_drop, br.v_fold, 1e-13));
    rep.branches.push_back({br.label, 0.0, dur, Arc(Phase(0.0), two_pi)});
    total += dur;
  }
  rep.singular_period = total;
  double start = 0.0;
  for (auto& e : rep.branches) {
    e.fraction = e.duration / total;
    e.phase_arc = Arc(Phase(start), e.fraction * two_pi);
    start += e.fraction * two_pi;
  }
  return rep;
}

std::vector<double> measured_branch_fractions(const LimitCycle& lc,
                                              const SlowFastModel& model,
                                              double v_tol) {
  const int n = lc.samples.grid_size();
  std::vector<double> frac(model.cycle_branches.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    double v = lc.samples.value(i, 0);
    double w = lc.samples.value(i, 1);
    for (size_t q = 0; q < model.cycle_branches.size(); ++q) {
      const auto& br = model.cycle_branches[q];
      double vlo = std::min(br.v_drop, br.v_fold) - v_tol;
      double vhi = std::max(br.v_drop, br.v_fold) + v_tol;
      if (v < vlo || v > vhi) continue;
      // branch point at the sample's w (Newton seeded from the drop point)
      double vb = br.v_drop;
      for (int it = 0; it < 60; ++it) {
        double fval = model.f(vb, w);
        double d = model.fv(vb, w);
        if (std::abs(d) < 1e-10) break;
        double step = fval / d;
        vb -= step;
        if (std::abs(step) < 1e-13) break;
      }
      if (std::abs(model.f(vb, w)) > 1e-8) continue;  // no branch at this w
      if (vb < vlo || vb > vhi) continue;
      if (std::abs(v - vb) < v_tol) {
        frac[q] += 1.0 / n;
        break;
      }
    }
  }
  return frac;
}

}  // namespace phasekit
