#include "phasekit/torus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phasekit {

double wrap_angle(double x) {
  double y = std::fmod(x, two_pi);
  if (y < 0.0) y += two_pi;
  if (y >= two_pi) y = 0.0;  // fmod rounding can land exactly on 2pi
  return y;
}

double angle_diff(double a, double b) {
  double d = wrap_angle(a - b);
  if (d > 3.141592653589793238462643383279) d -= two_pi;
  return d;
}

Phase::Phase(double radians) : value_(wrap_angle(radians)) {}

double Phase::forward_from(Phase other) const {
  return wrap_angle(value_ - other.value_);
}

Arc::Arc(Phase first, double length) : first_(first), length_(length) {
  if (!(length > 0.0) || length > two_pi)
    throw std::invalid_argument("Arc: length must be in (0, 2pi]");
}

bool Arc::full_circle() const { return length_ >= two_pi; }

bool Arc::contains(Phase x) const {
  double lift = x.forward_from(first_);
  return lift > 0.0 && lift < length_;
}

std::vector<Arc> arc_intersection(const Arc& c1, const Arc& c2) {
  // lift both to the real line with c1 = (0, L1); c2 candidates shifted by 2pi
  const double L1 = c1.length();
  const double L2 = c2.length();
  const double b = c2.first().forward_from(c1.first());  // in [0, 2pi)
  std::vector<Arc> out;
  for (int k = -1; k <= 1; ++k) {
    double lo = std::max(0.0, b + k * two_pi);
    double hi = std::min(L1, b + k * two_pi + L2);
    if (hi - lo > 0.0) {
      // guard against duplicate components when c2 is the full circle
      bool dup = false;
      for (const Arc& a : out)
        dup = dup || (std::abs(a.first().forward_from(c1.first()) - lo) < 1e-15 ||
                      (lo == 0.0 && a.first().forward_from(c1.first()) == 0.0));
      if (!dup) out.emplace_back(c1.first() + lo, hi - lo);
    }
  }
  return out;
}

std::optional<ArcOverlap> arc_overlap(const Arc& c1, const Arc& c2) {
  std::vector<Arc> comps = arc_intersection(c1, c2);
  if (comps.empty()) return std::nullopt;
  const double L1 = c1.length();
  // component touching the last extremity of c1: its lifted sup equals L1
  for (const Arc& a : comps) {
    double lo = a.first().forward_from(c1.first());
    if (std::abs(lo + a.length() - L1) < 1e-12) return ArcOverlap{a, true};
  }
  const Arc* best = &comps[0];
  for (const Arc& a : comps)
    if (a.length() > best->length()) best = &a;
  return ArcOverlap{*best, false};
}

}  // namespace phasekit
