#ifndef PHASEKIT_DEADZONE_HPP
#define PHASEKIT_DEADZONE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "phasekit/phase_reduction.hpp"

namespace phasekit {

// Detected maximal regions where |f| <= eta. Circle reports carry arcs; torus
// reports carry labeled grid components with their product-structure class.
struct DeadZoneReport {
  double eta = 0.0;
  std::string source;

  // circle
  std::vector<Arc> arcs;
  bool simple = false;  // exactly one arc

  // torus
  enum class RegionKind { output_strip, input_strip, input_output_union, irregular };
  struct TorusRegion {
    long cells = 0;
    RegionKind kind = RegionKind::irregular;
    std::vector<Arc> source_strips;  // U with U x T inside the component
    std::vector<Arc> target_strips;  // U with T x U inside the component
  };
  int grid = 0;
  std::vector<TorusRegion> regions;
  std::vector<int32_t> labels;  // grid*grid cells, -1 = live, else region index

  bool circle_contains(Phase x) const;
  bool torus_contains(Phase theta_j, Phase theta_k) const;
};

// Wraps maximal_zero_arcs and flags `simple` (exactly one arc).
DeadZoneReport detect_circle(const PeriodicSample& f, double eta,
                             const std::string& source = "");

// eta for "exact" (numerical-zero) detection of a sampled function
inline double exact_eta(const PeriodicSample& f) { return 1e-12 * f.max_abs(); }

// Thresholds |g2| <= eta cellwise, labels components with 4-neighbor
// adjacency wrapping at both seams, discards components without a full 2x2
// quiet block (open-set proxy), and classifies the product structure.
// Source strips (component = U x T) are output dead zones: the source sends
// nothing there; target strips (T x U) are input dead zones.
DeadZoneReport detect_torus(const TorusSample& g2, double eta,
                            const std::string& source = "");

struct EffectiveGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // ordered pairs j -> k, j != k
  bool has_edge(int j, int k) const;
};

// Averaged phase network: edge j -> k present iff theta_k - theta_j (the
// offset h is evaluated at) lies outside every reported arc of dz.
EffectiveGraph effective_graph(const std::vector<Phase>& theta,
                               const DeadZoneReport& dz);

// State-space coupling: edge j -> k absent iff the coupling vanishes (up to
// eta) on a small box around the pair, i.e. the pair lies in a dead zone.
EffectiveGraph effective_graph(const std::vector<std::vector<double>>& states,
                               const CouplingSpec& c, double eta = 0.0,
                               double box_halfwidth = 1e-3, int box_points = 3);

// ---- proposition checkers ----

// Zero-arc geometry bound: when the longest zero arcs of Zhat and gin have
// L1 + L2 > 2pi, h (their cross-correlation) has a dead zone of length at
// least L1 + L2 - 2pi.
struct PropGeomResult {
  double L1 = 0.0, L2 = 0.0;
  bool precondition_met = false;
  double predicted_min_length = 0.0;
  double detected_length = 0.0;  // longest detected dead arc of h
  bool bound_holds = false;      // detected >= predicted - 2 grid cells
  std::vector<Arc> detected_arcs;
};
PropGeomResult check_prop_geom(const PeriodicSample& Zhat,
                               const PeriodicSample& gin);

// Componentwise overlap condition: if for every l the zero arcs of
// Zhat_l shifted by alpha cover the circle together with gin_l's zero arcs
// and overlap them at the last extremity, DZ(h) contains an arc [alpha, beta].
struct PropOverlapResult {
  bool hypothesis_holds = false;
  bool covering_at_alpha = false;
  std::vector<double> overlap_lengths;  // per component, 0 when absent
  double predicted_min_beta = 0.0;      // min over components
  bool conclusion_holds = false;
  std::vector<Arc> detected_arcs;
};
PropOverlapResult check_prop_overlap(const std::vector<PeriodicSample>& Zhat,
                                     const std::vector<PeriodicSample>& gin,
                                     Phase alpha);

// Diagonal-band condition: true iff every band point (s, s + offset) with
// offset in A lies in the zero set of every component sample; then A is
// inside the dead zone of the assembled h, which is verified as well.
struct PropRes1Result {
  bool band_in_zero_sets = false;
  bool h_vanishes_on_A = false;
  bool A_in_detected_dz = false;
};
PropRes1Result check_prop_res1(const std::vector<TorusSample>& hhat,
                               const Arc& A, double eta = 0.0);

// length of the symmetric difference of two arcs (by fine sampling)
double arc_symmetric_difference(const Arc& a, const Arc& b, int samples = 200000);

}  // namespace phasekit

#endif
