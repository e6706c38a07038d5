#include "phasekit/periodic.hpp"

#include <cmath>
#include <stdexcept>

namespace phasekit {

PeriodicSample::PeriodicSample(int grid_size, int dim)
    : grid_(grid_size), dim_(dim), v_(static_cast<size_t>(grid_size) * dim, 0.0) {
  if (grid_size < 2 || dim < 1)
    throw std::invalid_argument("PeriodicSample: grid_size >= 2, dim >= 1");
}

PeriodicSample PeriodicSample::from_values(std::vector<double> values) {
  PeriodicSample s(static_cast<int>(values.size()), 1);
  s.v_ = std::move(values);
  return s;
}

PeriodicSample PeriodicSample::from_function(
    int grid_size, const std::function<double(double)>& f) {
  PeriodicSample s(grid_size, 1);
  for (int i = 0; i < grid_size; ++i) s.v_[i] = f(s.phase_at(i));
  return s;
}

double PeriodicSample::eval(double theta, int c) const {
  double u = wrap_angle(theta) / cell();
  int i = static_cast<int>(std::floor(u));
  double frac = u - i;
  if (i >= grid_) { i = 0; frac = 0.0; }
  if (frac == 0.0) return value(i, c);
  return (1.0 - frac) * value(i, c) + frac * value(i + 1, c);
}

std::vector<double> PeriodicSample::eval_vec(double theta) const {
  std::vector<double> out(dim_);
  for (int c = 0; c < dim_; ++c) out[c] = eval(theta, c);
  return out;
}

double PeriodicSample::max_abs(int c) const {
  double m = 0.0;
  for (int i = 0; i < grid_; ++i) m = std::max(m, std::abs(value(i, c)));
  return m;
}

PeriodicSample PeriodicSample::component(int c) const {
  PeriodicSample out(grid_, 1);
  for (int i = 0; i < grid_; ++i) out.value(i) = value(i, c);
  return out;
}

double circular_mean(const PeriodicSample& f, int c) {
  double s = 0.0;
  for (int i = 0; i < f.grid_size(); ++i) s += f.value(i, c);
  return s / f.grid_size();
}

PeriodicSample shift(const PeriodicSample& f, double delta) {
  const int n = f.grid_size();
  PeriodicSample out(n, f.dim());
  const double cells = wrap_angle(delta) / f.cell();
  const int k = static_cast<int>(std::lround(cells));
  if (std::abs(cells - k) < 1e-9) {
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < f.dim(); ++c) out.value(i, c) = f.value(i + k, c);
  } else {
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < f.dim(); ++c)
        out.value(i, c) = f.eval(f.phase_at(i) + delta, c);
  }
  return out;
}

std::vector<Arc> maximal_zero_arcs(const PeriodicSample& f, double eta) {
  if (eta < 0.0) throw std::invalid_argument("maximal_zero_arcs: eta >= 0");
  const int n = f.grid_size();
  std::vector<char> quiet(n, 1);
  int n_quiet = n;
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < f.dim(); ++c)
      if (std::abs(f.value(i, c)) > eta) {
        quiet[i] = 0;
        --n_quiet;
        break;
      }
  }
  std::vector<Arc> arcs;
  if (n_quiet == n) {
    arcs.emplace_back(Phase(0.0), two_pi);  // full circle
    return arcs;
  }
  if (n_quiet == 0) return arcs;
  // scan circular runs starting just after a loud point
  int start = 0;
  while (quiet[start]) ++start;  // some loud point exists
  int run_begin = -1;
  for (int s = 0; s <= n; ++s) {
    int i = (start + s) % n;
    if (s < n && quiet[i]) {
      if (run_begin < 0) run_begin = s;
    } else if (run_begin >= 0) {
      int len_pts = s - run_begin;  // number of quiet grid points in the run
      if (len_pts >= 2)
        arcs.emplace_back(Phase(f.phase_at((start + run_begin) % n)),
                          (len_pts - 1) * f.cell());
      run_begin = -1;
    }
  }
  return arcs;
}

}  // namespace phasekit
