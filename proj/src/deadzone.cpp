#include "phasekit/deadzone.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace phasekit {

bool DeadZoneReport::circle_contains(Phase x) const {
  for (const Arc& a : arcs)
    if (a.contains(x)) return true;
  return false;
}

bool DeadZoneReport::torus_contains(Phase theta_j, Phase theta_k) const {
  if (grid <= 0) return false;
  int j = static_cast<int>(std::floor(theta_j.value() / two_pi * grid)) % grid;
  int k = static_cast<int>(std::floor(theta_k.value() / two_pi * grid)) % grid;
  return labels[static_cast<size_t>(j) * grid + k] >= 0;
}

DeadZoneReport detect_circle(const PeriodicSample& f, double eta,
                             const std::string& source) {
  DeadZoneReport rep;
  rep.eta = eta;
  rep.source = source;
  rep.arcs = maximal_zero_arcs(f, eta);
  rep.simple = rep.arcs.size() == 1;
  return rep;
}

namespace {

struct UnionFind {
  std::vector<int32_t> parent;
  explicit UnionFind(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int32_t find(int32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int32_t a, int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[b] = a;
  }
};

// arcs of a set of grid indices (merged across the seam)
std::vector<Arc> index_set_arcs(const std::vector<char>& in, int n) {
  PeriodicSample marker(n, 1);
  for (int i = 0; i < n; ++i) marker.value(i) = in[i] ? 0.0 : 1.0;
  return maximal_zero_arcs(marker, 0.0);
}

}  // namespace

DeadZoneReport detect_torus(const TorusSample& g2, double eta,
                            const std::string& source) {
  const int n = g2.grid_size();
  const size_t nn = static_cast<size_t>(n) * n;
  DeadZoneReport rep;
  rep.eta = eta;
  rep.source = source;
  rep.grid = n;
  std::vector<char> quiet(nn, 0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      quiet[static_cast<size_t>(j) * n + k] = std::abs(g2.at(j, k)) <= eta;

  // two-pass union-find, 4-neighbor with wrap at both seams
  UnionFind uf(nn);
  auto id = [n](int j, int k) {
    return static_cast<int32_t>(static_cast<size_t>((j + n) % n) * n +
                                (k + n) % n);
  };
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (!quiet[id(j, k)]) continue;
      if (quiet[id(j - 1, k)]) uf.unite(id(j - 1, k), id(j, k));
      if (quiet[id(j, k - 1)]) uf.unite(id(j, k - 1), id(j, k));
    }

  // open-set proxy: a component must contain a full 2x2 quiet block
  std::vector<char> solid(nn, 0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (quiet[id(j, k)] && quiet[id(j + 1, k)] && quiet[id(j, k + 1)] &&
          quiet[id(j + 1, k + 1)]) {
        int32_t r = uf.find(id(j, k));
        solid[r] = 1;
      }

  // relabel surviving components densely
  std::vector<int32_t> region_of_root(nn, -1);
  rep.labels.assign(nn, -1);
  std::vector<long> counts;
  for (size_t c = 0; c < nn; ++c) {
    if (!quiet[c]) continue;
    int32_t r = uf.find(static_cast<int32_t>(c));
    if (!solid[r]) continue;
    if (region_of_root[r] < 0) {
      region_of_root[r] = static_cast<int32_t>(counts.size());
      counts.push_back(0);
    }
    rep.labels[c] = region_of_root[r];
    ++counts[region_of_root[r]];
  }

  // classification: full source rows and target columns per region
  const int n_regions = static_cast<int>(counts.size());
  std::vector<long> row_count(static_cast<size_t>(n_regions) * n, 0);
  std::vector<long> col_count(static_cast<size_t>(n_regions) * n, 0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      int32_t reg = rep.labels[static_cast<size_t>(j) * n + k];
      if (reg < 0) continue;
      ++row_count[static_cast<size_t>(reg) * n + j];
      ++col_count[static_cast<size_t>(reg) * n + k];
    }
  for (int reg = 0; reg < n_regions; ++reg) {
    DeadZoneReport::TorusRegion region;
    region.cells = counts[reg];
    std::vector<char> full_row(n, 0), full_col(n, 0);
    long rows = 0, cols = 0;
    for (int j = 0; j < n; ++j)
      if (row_count[static_cast<size_t>(reg) * n + j] == n)
        full_row[j] = 1, ++rows;
    for (int k = 0; k < n; ++k)
      if (col_count[static_cast<size_t>(reg) * n + k] == n)
        full_col[k] = 1, ++cols;
    long product_cells = rows * n + cols * n - rows * cols;
    region.source_strips = index_set_arcs(full_row, n);
    region.target_strips = index_set_arcs(full_col, n);
    const long slack = 4L * n;  // grid tolerance on the product structure
    bool matches = std::llabs(region.cells - product_cells) <= slack;
    if (rows > 0 && cols == 0 && matches)
      region.kind = DeadZoneReport::RegionKind::output_strip;
    else if (rows == 0 && cols > 0 && matches)
      region.kind = DeadZoneReport::RegionKind::input_strip;
    else if (rows > 0 && cols > 0 && matches)
      region.kind = DeadZoneReport::RegionKind::input_output_union;
    else
      region.kind = DeadZoneReport::RegionKind::irregular;
    rep.regions.push_back(std::move(region));
  }
  return rep;
}

bool EffectiveGraph::has_edge(int j, int k) const {
  return std::find(edges.begin(), edges.end(), std::make_pair(j, k)) !=
         edges.end();
}

EffectiveGraph effective_graph(const std::vector<Phase>& theta,
                               const DeadZoneReport& dz) {
  EffectiveGraph g;
  g.n = static_cast<int>(theta.size());
  for (int j = 0; j < g.n; ++j)
    for (int k = 0; k < g.n; ++k) {
      if (j == k) continue;
      Phase offset(theta[k].value() - theta[j].value());
      if (!dz.circle_contains(offset)) g.edges.emplace_back(j, k);
    }
  return g;
}

EffectiveGraph effective_graph(const std::vector<std::vector<double>>& states,
                               const CouplingSpec& c, double eta,
                               double box_halfwidth, int box_points) {
  EffectiveGraph g;
  g.n = static_cast<int>(states.size());
  const int d = c.dim;
  std::vector<double> xj(d), xk(d), out(d);
  // offsets of the evaluation box in each coordinate
  std::vector<double> offs;
  for (int q = 0; q < box_points; ++q)
    offs.push_back(box_points == 1
                       ? 0.0
                       : -box_halfwidth + 2.0 * box_halfwidth * q / (box_points - 1));
  for (int j = 0; j < g.n; ++j)
    for (int k = 0; k < g.n; ++k) {
      if (j == k) continue;
      bool dead = true;
      // scan the product box around (x_j, x_k); any live value keeps the edge
      std::vector<int> idx(2 * d, 0);
      for (;;) {
        for (int cdim = 0; cdim < d; ++cdim) {
          xj[cdim] = states[j][cdim] + offs[idx[cdim]];
          xk[cdim] = states[k][cdim] + offs[idx[d + cdim]];
        }
        c.evaluate(xj.data(), xk.data(), out.data());
        for (int cdim = 0; cdim < d; ++cdim)
          if (std::abs(out[cdim]) > eta) dead = false;
        if (!dead) break;
        int p = 0;
        while (p < 2 * d && ++idx[p] == box_points) idx[p++] = 0;
        if (p == 2 * d) break;
      }
      if (!dead) g.edges.emplace_back(j, k);
    }
  return g;
}

namespace {

double longest_zero_arc(const PeriodicSample& f, std::vector<Arc>* arcs_out) {
  auto arcs = maximal_zero_arcs(f, 0.0);
  double L = 0.0;
  for (const Arc& a : arcs) L = std::max(L, a.length());
  if (arcs_out) *arcs_out = std::move(arcs);
  return L;
}

}  // namespace

PropGeomResult check_prop_geom(const PeriodicSample& Zhat,
                               const PeriodicSample& gin) {
  PropGeomResult res;
  res.L1 = longest_zero_arc(Zhat, nullptr);
  res.L2 = longest_zero_arc(gin, nullptr);
  res.precondition_met = res.L1 + res.L2 > two_pi;
  res.predicted_min_length =
      res.precondition_met ? res.L1 + res.L2 - two_pi : 0.0;
  auto inter = interaction_from_separable({Zhat}, {gin});
  auto rep = detect_circle(inter.h, 0.0, "prop_geom h");
  res.detected_arcs = rep.arcs;
  for (const Arc& a : rep.arcs)
    res.detected_length = std::max(res.detected_length, a.length());
  const double slack = 2.0 * Zhat.cell();
  res.bound_holds = !res.precondition_met ||
                    res.detected_length >= res.predicted_min_length - slack;
  return res;
}

PropOverlapResult check_prop_overlap(const std::vector<PeriodicSample>& Zhat,
                                     const std::vector<PeriodicSample>& gin,
                                     Phase alpha) {
  if (Zhat.size() != gin.size() || Zhat.empty())
    throw GridMismatch("check_prop_overlap: component count mismatch");
  PropOverlapResult res;
  const int n = Zhat[0].grid_size();
  res.covering_at_alpha = true;
  bool all_overlap = true;
  double min_olap = two_pi;
  for (size_t l = 0; l < Zhat.size(); ++l) {
    PeriodicSample shifted = shift(Zhat[l], alpha.value());
    // covering at alpha: every grid point quiet in one of the two factors
    for (int s = 0; s < n; ++s)
      if (shifted.value(s) != 0.0 && gin[l].value(s) != 0.0) {
        res.covering_at_alpha = false;
        break;
      }
    auto z_arcs = maximal_zero_arcs(shifted, 0.0);
    auto g_arcs = maximal_zero_arcs(gin[l], 0.0);
    double best = 0.0;
    for (const Arc& a : z_arcs)
      for (const Arc& b : g_arcs) {
        auto ov = arc_overlap(a, b);
        if (ov && ov->at_last_extremity_of_c1)
          best = std::max(best, ov->arc.length());
      }
    res.overlap_lengths.push_back(best);
    if (best <= 0.0) all_overlap = false;
    min_olap = std::min(min_olap, best);
  }
  res.hypothesis_holds = res.covering_at_alpha && all_overlap;
  res.predicted_min_beta = res.hypothesis_holds ? min_olap : 0.0;
  if (!res.hypothesis_holds) return res;

  auto inter = interaction_from_separable(Zhat, gin);
  auto rep = detect_circle(inter.h, 0.0, "prop_overlap h");
  res.detected_arcs = rep.arcs;
  const double cell = Zhat[0].cell();
  // an arc starting at alpha (within a cell) and reaching the predicted depth
  for (const Arc& a : rep.arcs) {
    bool starts_at_alpha = a.contains(alpha + cell);
    bool reaches = a.contains(alpha + std::max(cell, min_olap - 2.0 * cell));
    if (starts_at_alpha && reaches) {
      res.conclusion_holds = true;
      break;
    }
  }
  return res;
}

PropRes1Result check_prop_res1(const std::vector<TorusSample>& hhat,
                               const Arc& A, double eta) {
  PropRes1Result res;
  if (hhat.empty()) return res;
  const int n = hhat[0].grid_size();
  // grid offsets inside A
  std::vector<int> offsets;
  for (int r = 0; r < n; ++r)
    if (A.contains(Phase(two_pi * r / n))) offsets.push_back(r);
  auto band_quiet = [&](int r) {
    for (const auto& comp : hhat)
      for (int s = 0; s < n; ++s)
        if (std::abs(comp.at(s, s + r)) > eta) return false;
    return true;
  };
  res.band_in_zero_sets = true;
  for (int r : offsets)
    if (!band_quiet(r)) {
      res.band_in_zero_sets = false;
      break;
    }
  // assemble h = sum of component diagonal means and verify
  PeriodicSample h(n, 1);
  for (int r = 0; r < n; ++r) {
    double acc = 0.0;
    for (const auto& comp : hhat)
      for (int s = 0; s < n; ++s) acc += comp.at(s, s + r);
    h.value(r) = acc / n;
  }
  res.h_vanishes_on_A = true;
  for (int r : offsets)
    if (std::abs(h.value(r)) > eta) res.h_vanishes_on_A = false;
  auto rep = detect_circle(h, eta, "prop_res1 h");
  res.A_in_detected_dz = false;
  for (const Arc& a : rep.arcs) {
    // A inside a (slightly grown) detected arc
    Arc grown(a.first() - h.cell(), std::min(two_pi, a.length() + 2 * h.cell()));
    if (grown.contains(A.first() + 1e-12) &&
        grown.contains(A.first() + A.length() - 1e-12)) {
      res.A_in_detected_dz = true;
      break;
    }
  }
  return res;
}

double arc_symmetric_difference(const Arc& a, const Arc& b, int samples) {
  long diff = 0;
  for (int i = 0; i < samples; ++i) {
    Phase x(two_pi * (i + 0.5) / samples);
    if (a.contains(x) != b.contains(x)) ++diff;
  }
  return two_pi * diff / samples;
}

}  // namespace phasekit
