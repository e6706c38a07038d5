#include "phasekit/ode.hpp"

#include <algorithm>
#include <cmath>

namespace phasekit {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights
constexpr double d1 = -12715105075.0 / 11282082432.0,
                 d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0,
                 d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0,
                 d7 = 69997945.0 / 29380423.0;

class Dopri5 {
 public:
  Dopri5(const VectorFieldSpec& vf, std::vector<double> x0, double t0,
         double t_end, const Tolerances& tol, double max_step,
         double first_step)
      : vf_(vf),
        n_(vf.dim),
        t_(t0),
        t_begin_(t0),
        t_end_(t_end),
        dir_(t_end >= t0 ? 1.0 : -1.0),
        tol_(tol),
        max_step_(max_step),
        y_(std::move(x0)) {
    k1_.resize(n_); k2_.resize(n_); k3_.resize(n_); k4_.resize(n_);
    k5_.resize(n_); k6_.resize(n_); k7_.resize(n_);
    ytmp_.resize(n_); ynew_.resize(n_);
    vf_.rhs(t_, y_.data(), k1_.data());
    h_ = first_step > 0.0 ? first_step : initial_step();
  }

  double t() const { return t_; }
  double t_prev() const { return t_prev_; }
  bool done() const { return finished_; }
  const std::vector<double>& y() const { return y_; }
  long accepted() const { return n_accept_; }
  long rejected() const { return n_reject_; }

  // advances one accepted step; returns false when t_end is reached exactly
  bool step() {
    if (finished_) return false;
    const double span = std::abs(t_end_ - t_begin_);
    for (;;) {
      double h = std::min(h_, max_step_);
      const double remaining = std::abs(t_end_ - t_);
      if (h >= remaining) {
        h = remaining;
        last_step_ = true;
      } else {
        last_step_ = false;
      }
      if (h < 1e-14 * std::max(span, 1.0) && !last_step_)
        throw StepSizeUnderflow("integrate: step size underflow at t=" +
                                std::to_string(t_));
      const double hd = dir_ * h;
      stages(hd);
      double err = error_norm(hd);
      if (err <= 1.0) {
        accept(hd, err);
        return !finished_;
      }
      ++n_reject_;
      h_ = h * std::max(0.1, 0.9 * std::pow(err, -0.2));
      just_rejected_ = true;
    }
  }

  // dense interpolant of the last accepted step
  DenseSegment dense_segment() const {
    DenseSegment s;
    s.t0 = t_prev_;
    s.h = t_ - t_prev_;
    s.c = dense_c_;
    return s;
  }

 private:
  double initial_step() const {
    // conservative guess from rhs magnitude
    double dy = 0.0, y = 0.0;
    for (int i = 0; i < n_; ++i) {
      dy = std::max(dy, std::abs(k1_[i]));
      y = std::max(y, std::abs(y_[i]));
    }
    double scale = tol_.abs + tol_.rel * y;
    double h = (dy > 0.0) ? 0.01 * std::pow(scale, 0.2) / std::pow(dy, 0.2)
                          : 1e-3;
    return std::min({h, max_step_, std::abs(t_end_ - t_)});
  }

  void stages(double h) {
    auto& f = vf_.rhs;
    for (int i = 0; i < n_; ++i) ytmp_[i] = y_[i] + h * a21 * k1_[i];
    f(t_ + c2 * h, ytmp_.data(), k2_.data());
    for (int i = 0; i < n_; ++i)
      ytmp_[i] = y_[i] + h * (a31 * k1_[i] + a32 * k2_[i]);
    f(t_ + c3 * h, ytmp_.data(), k3_.data());
    for (int i = 0; i < n_; ++i)
      ytmp_[i] = y_[i] + h * (a41 * k1_[i] + a42 * k2_[i] + a43 * k3_[i]);
    f(t_ + c4 * h, ytmp_.data(), k4_.data());
    for (int i = 0; i < n_; ++i)
      ytmp_[i] = y_[i] + h * (a51 * k1_[i] + a52 * k2_[i] + a53 * k3_[i] +
                              a54 * k4_[i]);
    f(t_ + c5 * h, ytmp_.data(), k5_.data());
    for (int i = 0; i < n_; ++i)
      ytmp_[i] = y_[i] + h * (a61 * k1_[i] + a62 * k2_[i] + a63 * k3_[i] +
                              a64 * k4_[i] + a65 * k5_[i]);
    f(t_ + h, ytmp_.data(), k6_.data());
    for (int i = 0; i < n_; ++i)
      ynew_[i] = y_[i] + h * (b1 * k1_[i] + b3 * k3_[i] + b4 * k4_[i] +
                              b5 * k5_[i] + b6 * k6_[i]);
    f(t_ + h, ynew_.data(), k7_.data());
  }

  double error_norm(double h) const {
    double err = 0.0;
    for (int i = 0; i < n_; ++i) {
      double e = h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] +
                      e6 * k6_[i] + e7 * k7_[i]);
      double sc = tol_.abs + tol_.rel * std::max(std::abs(y_[i]), std::abs(ynew_[i]));
      err = std::max(err, std::abs(e) / sc);
    }
    return err;
  }

  void accept(double h, double err) {
    // dense coefficients (Hairer's contd5 form)
    dense_c_.assign(static_cast<size_t>(5) * n_, 0.0);
    for (int i = 0; i < n_; ++i) {
      double ydiff = ynew_[i] - y_[i];
      double bspl = h * k1_[i] - ydiff;
      dense_c_[0 * n_ + i] = y_[i];
      dense_c_[1 * n_ + i] = ydiff;
      dense_c_[2 * n_ + i] = bspl;
      dense_c_[3 * n_ + i] = ydiff - h * k7_[i] - bspl;
      dense_c_[4 * n_ + i] = h * (d1 * k1_[i] + d3 * k3_[i] + d4 * k4_[i] +
                                  d5 * k5_[i] + d6 * k6_[i] + d7 * k7_[i]);
    }
    t_prev_ = t_;
    t_ += h;
    y_.swap(ynew_);
    k1_.swap(k7_);  // FSAL
    ++n_accept_;
    if (last_step_) {
      t_ = t_end_;
      finished_ = true;
    }
    // PI controller
    double e = std::max(err, 1e-10);
    double fac = 0.9 * std::pow(e, -0.7 / 5.0) * std::pow(err_old_, 0.4 / 5.0);
    fac = std::clamp(fac, 0.2, just_rejected_ ? 1.0 : 10.0);
    h_ = std::abs(h) * fac;
    err_old_ = e;
    just_rejected_ = false;
  }

  VectorFieldSpec vf_;
  int n_;
  double t_, t_prev_ = 0.0, t_begin_, t_end_, dir_;
  Tolerances tol_;
  double max_step_;
  double h_ = 0.0;
  double err_old_ = 1e-4;
  bool just_rejected_ = false, last_step_ = false, finished_ = false;
  long n_accept_ = 0, n_reject_ = 0;
  std::vector<double> y_, ynew_, ytmp_;
  std::vector<double> k1_, k2_, k3_, k4_, k5_, k6_, k7_;
  std::vector<double> dense_c_;
};

void eval_segment(const DenseSegment& s, int n, double t, double* out) {
  double sigma = (s.h != 0.0) ? (t - s.t0) / s.h : 0.0;
  double om = 1.0 - sigma;
  for (int i = 0; i < n; ++i) {
    const double* c = s.c.data();
    out[i] = c[i] + sigma * (c[n + i] +
                             om * (c[2 * n + i] +
                                   sigma * (c[3 * n + i] + om * c[4 * n + i])));
  }
}

}  // namespace

void numerical_jacobian(const VectorFieldSpec& vf, double t,
                        const std::vector<double>& x, std::vector<double>& jac) {
  const int n = vf.dim;
  jac.assign(static_cast<size_t>(n) * n, 0.0);
  std::vector<double> xp(x), fp(n), fm(n);
  for (int j = 0; j < n; ++j) {
    double h = 1e-6 * (1.0 + std::abs(x[j]));
    xp[j] = x[j] + h;
    vf.rhs(t, xp.data(), fp.data());
    xp[j] = x[j] - h;
    vf.rhs(t, xp.data(), fm.data());
    xp[j] = x[j];
    for (int i = 0; i < n; ++i) jac[i * n + j] = (fp[i] - fm[i]) / (2.0 * h);
  }
}

DenseOutput::DenseOutput(int dim, std::vector<DenseSegment> segments)
    : dim_(dim), segs_(std::move(segments)) {}

double DenseOutput::t_begin() const { return segs_.empty() ? 0.0 : segs_.front().t0; }

double DenseOutput::t_end() const {
  return segs_.empty() ? 0.0 : segs_.back().t0 + segs_.back().h;
}

void DenseOutput::eval(double t, double* out) const {
  // binary search for the segment containing t (segments are contiguous)
  size_t lo = 0, hi = segs_.size();
  while (hi - lo > 1) {
    size_t mid = (lo + hi) / 2;
    if (t < segs_[mid].t0) hi = mid; else lo = mid;
  }
  eval_segment(segs_[lo], dim_, t, out);
}

std::vector<double> DenseOutput::eval(double t) const {
  std::vector<double> out(dim_);
  eval(t, out.data());
  return out;
}

IntegrationResult integrate(const VectorFieldSpec& vf,
                            const std::vector<double>& x0, double t0, double t1,
                            const IntegrateOptions& opts) {
  if (!(t1 > t0)) throw std::invalid_argument("integrate: t1 > t0 required");
  Dopri5 stepper(vf, x0, t0, t1, opts.tol, opts.max_step, opts.first_step);
  IntegrationResult res;
  std::vector<DenseSegment> segs;
  size_t next_sample = 0;
  const std::vector<double>* samp = opts.sample_times;
  auto record = [&](double t, const double* y) {
    res.trajectory.times.push_back(t);
    res.trajectory.states.emplace_back(y, y + vf.dim);
  };
  if (samp == nullptr && opts.record_steps) record(t0, x0.data());
  if (samp != nullptr) {
    while (next_sample < samp->size() && (*samp)[next_sample] <= t0) {
      record((*samp)[next_sample], x0.data());
      ++next_sample;
    }
  }
  bool more = true;
  std::vector<double> tmp(vf.dim);
  while (more) {
    more = stepper.step();
    DenseSegment seg = stepper.dense_segment();
    if (samp != nullptr) {
      while (next_sample < samp->size() &&
             (*samp)[next_sample] <= stepper.t() + 1e-14) {
        eval_segment(seg, vf.dim, std::min((*samp)[next_sample], stepper.t()),
                     tmp.data());
        record((*samp)[next_sample], tmp.data());
        ++next_sample;
      }
    } else if (opts.record_steps) {
      record(stepper.t(), stepper.y().data());
    }
    if (opts.keep_dense) segs.push_back(std::move(seg));
  }
  if (samp == nullptr && !opts.record_steps)
    record(stepper.t(), stepper.y().data());
  res.steps_accepted = stepper.accepted();
  res.steps_rejected = stepper.rejected();
  if (opts.keep_dense) res.dense = DenseOutput(vf.dim, std::move(segs));
  return res;
}

EventResult integrate_to_event(const VectorFieldSpec& vf,
                               const std::vector<double>& x0, double t0,
                               double t_max, const EventSpec& event,
                               const EventOptions& opts) {
  Dopri5 stepper(vf, x0, t0, t_max, opts.tol, opts.max_step, 0.0);
  std::vector<double> tmp(vf.dim);
  double g_prev = event.value(x0.data());
  double t_prev = t0;
  bool more = true;
  while (more) {
    more = stepper.step();
    DenseSegment seg = stepper.dense_segment();
    double g_now = event.value(stepper.y().data());
    bool crossed = false;
    if (stepper.t() > t0 + opts.t_min) {
      if (event.direction >= 0 && g_prev < 0.0 && g_now >= 0.0) crossed = true;
      if (event.direction <= 0 && g_prev > 0.0 && g_now <= 0.0) crossed = true;
    }
    if (crossed) {
      double lo = t_prev, hi = stepper.t();
      double glo = g_prev;
      double tm = hi;
      for (int it = 0; it < opts.refine_max_iter; ++it) {
        tm = 0.5 * (lo + hi);
        eval_segment(seg, vf.dim, tm, tmp.data());
        double gm = event.value(tmp.data());
        if (std::abs(gm) <= opts.refine_abs) break;
        if ((gm < 0.0) == (glo < 0.0)) {
          lo = tm;
          glo = gm;
        } else {
          hi = tm;
        }
      }
      if (tm > t0 + opts.t_min) {
        eval_segment(seg, vf.dim, tm, tmp.data());
        return EventResult{tm, tmp};
      }
      // crossing inside the excluded window; keep going
    }
    g_prev = g_now;
    t_prev = stepper.t();
  }
  throw NoEvent("integrate_to_event: no qualifying crossing before t_max");
}

}  // namespace phasekit
