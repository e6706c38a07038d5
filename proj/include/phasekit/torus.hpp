#ifndef PHASEKIT_TORUS_HPP
#define PHASEKIT_TORUS_HPP

#include <optional>
#include <vector>

namespace phasekit {

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// Canonical representative of x in [0, 2*pi).
double wrap_angle(double x);

/// Signed distance from a to b along the shortest way, in (-pi, pi].
double angle_diff(double a, double b);

// A point on T = R/2piZ; the representative is always in [0, 2pi).
class Phase {
 public:
  Phase() = default;
  explicit Phase(double radians);
  double value() const { return value_; }

  Phase operator+(double delta) const { return Phase(value_ + delta); }
  Phase operator-(double delta) const { return Phase(value_ - delta); }
  // offset of *this relative to other, in [0, 2pi)
  double forward_from(Phase other) const;

 private:
  double value_ = 0.0;
};

// Oriented open arc (first, first+length) on the circle, length in (0, 2pi].
// length == 2pi stands for the full circle minus the point `first`.
class Arc {
 public:
  Arc(Phase first, double length);
  Phase first() const { return first_; }
  Phase last() const { return first_ + length_; }
  double length() const { return length_; }
  bool full_circle() const;
  // open membership, consistent with lifting
  bool contains(Phase x) const;
  bool contains(double x) const { return contains(Phase(x)); }

 private:
  Phase first_;
  double length_;
};

struct ArcOverlap {
  Arc arc;
  bool at_last_extremity_of_c1;
};

// Maximal arc inside c1 ∩ c2. When a component of the intersection reaches the
// last extremity of c1 it is returned with the flag set; otherwise the longest
// component is returned. Empty intersection gives nullopt.
std::optional<ArcOverlap> arc_overlap(const Arc& c1, const Arc& c2);

// All maximal arcs of c1 ∩ c2 (0, 1 or 2 components).
std::vector<Arc> arc_intersection(const Arc& c1, const Arc& c2);

}  // namespace phasekit

#endif
