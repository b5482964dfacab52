#include "qmaps/metrics.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace qmaps {

std::vector<int> bfs_distances(const CombinatorialMap& m, int source) {
  std::vector<std::vector<int>> adj(m.n_vertices);
  for (int h = 0; h < m.half_edges(); ++h)
    adj[m.vertex_of[h]].push_back(m.vertex_of[m.alpha[h]]);
  std::vector<int> d(m.n_vertices, -1);
  d[source] = 0;
  std::queue<int> q;
  q.push(source);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (d[w] < 0) {
        d[w] = d[v] + 1;
        q.push(w);
      }
  }
  return d;
}

ProfileResult profile_and_radius(const PointedQuadrangulation& pq, BasePoint base) {
  int source = base == BasePoint::pointed ? pq.pointed_vertex
                                          : pq.map.vertex_of[pq.map.root];
  auto d = bfs_distances(pq.map, source);
  ProfileResult r;
  r.radius = *std::max_element(d.begin(), d.end());
  r.histogram.assign(r.radius + 1, 0);
  for (int x : d) ++r.histogram[x];
  return r;
}

GlobalLabelProcess build_global_label_process(const DecompositionQuadruple& quad) {
  GlobalLabelProcess proc;
  proc.values.push_back(0);
  int K = 2 * quad.scheme.tree.n_edges;
  // scheme half-edges are numbered in facial order with the root first, so
  // the concatenation order is simply 0, 1, ..., K-1
  for (int e = 0; e < K; ++e) {
    auto part = shifted_label_process(quad.forests[e], quad.bridges[e]);
    int base = proc.values.back();
    for (size_t t = 1; t < part.size(); ++t) proc.values.push_back(base + part[t]);
  }
  proc.rmin = RangeMin(proc.values);
  return proc;
}

int d_circ(const GlobalLabelProcess& proc, long i, long j) {
  long last = (long)proc.values.size() - 1;  // = 2n
  if (i > j) std::swap(i, j);
  int inside = proc.rmin.query(i, j);
  int outside = std::min(proc.rmin.query(j, last), proc.rmin.query(0, i));
  return proc.values[i] + proc.values[j] - 2 * std::max(inside, outside) + 2;
}

int DistanceProcess::d(long i, long j) const {
  int a = dot_vertex(i), b = dot_vertex(j);
  auto it = bfs_cache.find(a);
  if (it == bfs_cache.end()) {
    auto it2 = bfs_cache.find(b);
    if (it2 != bfs_cache.end()) return it2->second[a];
    it = bfs_cache.emplace(a, bfs_distances(pq.map, a)).first;
  }
  return it->second[b];
}

double DistanceProcess::interpolate(double s, double t) const {
  long fs = (long)std::floor(s), ft = (long)std::floor(t);
  double ls = s - fs, lt = t - ft;
  double r = 0;
  // skip zero-weight terms so the ceilings are never evaluated out of range
  if (ls > 0 && lt > 0) r += ls * lt * d(fs + 1, ft + 1);
  if (ls > 0) r += ls * (1 - lt) * d(fs + 1, ft);
  if (lt > 0) r += (1 - ls) * lt * d(fs, ft + 1);
  r += (1 - ls) * (1 - lt) * d(fs, ft);
  return r;
}

double DistanceProcess::rescaled(double s, double t) const {
  return interpolate(2 * n * s, 2 * n * t) / rescale_factor(n);
}

DistanceProcess build_distance_process(const WellLabeledGTree& wlt) {
  DistanceProcess dp;
  dp.tree = wlt;
  dp.quad = decompose(wlt);
  dp.pq = cms_forward(wlt, -1);
  dp.n = wlt.tree.n_edges;
  dp.u = dp.quad.root_offset;
  dp.lambda = build_global_label_process(dp.quad);
  // stacked-forest contour: forest e's floor sits at the total length of the
  // chains that follow it in facial order
  int K = 2 * dp.quad.scheme.tree.n_edges;
  std::vector<int> base(K + 1, 0);
  for (int e = K - 1; e >= 0; --e) base[e] = base[e + 1] + dp.quad.sigma(e);
  dp.contour.push_back(base[0]);
  for (int e = 0; e < K; ++e) {
    auto pair = encode_contour(dp.quad.forests[e]);
    for (size_t t = 1; t < pair.contour.size(); ++t)
      dp.contour.push_back(pair.contour[t] + base[e + 1]);
  }
  dp.contour_runmin.resize(dp.contour.size());
  int run = dp.contour[0];
  for (size_t k = 0; k < dp.contour.size(); ++k) {
    run = std::min(run, dp.contour[k]);
    dp.contour_runmin[k] = run;
  }
  return dp;
}

int distance_lower_bound(const DistanceProcess& dp, long i, long j) {
  long step = j >= i ? 1 : -1;
  int best = dp.lambda.values[i];
  int run = dp.contour[i];
  for (long k = i; k != j + step; k += step) {
    run = std::min(run, dp.contour[k]);
    if (dp.contour[k] == run && dp.contour_runmin[k] == dp.contour_runmin[i])
      best = std::min(best, dp.lambda.values[k]);
  }
  return dp.lambda.values[i] - best;
}

double TwoPointSummary::quantile(double p) const {
  if (values.empty()) return 0;
  double pos = p * ((double)values.size() - 1);
  size_t lo = (size_t)pos;
  if (lo + 1 >= values.size()) return values.back();
  double frac = pos - (double)lo;
  return values[lo] * (1 - frac) + values[lo + 1] * frac;
}

TwoPointSummary two_point_statistic(std::vector<double> rescaled_values, long n) {
  std::sort(rescaled_values.begin(), rescaled_values.end());
  return {n, std::move(rescaled_values)};
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  size_t ia = 0, ib = 0;
  double best = 0;
  while (ia < a.size() && ib < b.size()) {
    if (a[ia] <= b[ib])
      ++ia;
    else
      ++ib;
    best = std::max(best, std::abs((double)ia / a.size() - (double)ib / b.size()));
  }
  return best;
}

std::vector<int> geometric_radius_grid(double lo, double hi, int points) {
  std::vector<int> grid;
  for (int k = 0; k < points; ++k) {
    double x = points == 1 ? lo : lo * std::pow(hi / lo, (double)k / (points - 1));
    int r = std::max(1, (int)std::lround(x));
    if (grid.empty() || r > grid.back()) grid.push_back(r);
  }
  return grid;
}

DimensionEstimate dimension_estimate(const CombinatorialMap& map, int centers,
                                     std::vector<int> radii, Rng& rng) {
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  if (radii.size() < 2)
    throw DomainError("RadiusGridTooCoarse", "need at least two distinct radii");
  DimensionEstimate est;
  est.radii = radii;
  for (int c = 0; c < centers; ++c) {
    int center = (int)rng.below(map.n_vertices);
    auto d = bfs_distances(map, center);
    std::vector<long> vol(radii.size(), 0);
    for (int x : d)
      for (size_t k = 0; k < radii.size(); ++k)
        if (x <= radii[k]) ++vol[k];
    est.centers.push_back(center);
    est.volumes.push_back(std::move(vol));
  }
  // log-volume curves, pooled across centers before fitting so that the
  // heavy per-center fluctuations of small balls average out
  std::vector<double> meanlog(radii.size(), 0);
  for (auto& vol : est.volumes)
    for (size_t k = 0; k < radii.size(); ++k) meanlog[k] += std::log((double)vol[k]);
  for (auto& x : meanlog) x /= centers;
  // scaling window: balls below 1/200 of the graph are dominated by local
  // lattice effects and balls above 1/8 saturate, both biasing the exponent
  // downward; fall back to the whole grid if the window degenerates
  double lo_cut = std::log(map.n_vertices / 200.0), hi_cut = std::log(map.n_vertices / 8.0);
  std::vector<size_t> fit;
  for (size_t k = 0; k < radii.size(); ++k)
    if (meanlog[k] >= lo_cut && meanlog[k] <= hi_cut) fit.push_back(k);
  if (fit.size() < 2) {
    fit.clear();
    for (size_t k = 0; k < radii.size(); ++k) fit.push_back(k);
  }
  auto ols = [&](const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k : fit) {
      double x = std::log((double)radii[k]);
      sx += x;
      sy += y[k];
      sxx += x * x;
      sxy += x * y[k];
    }
    double m = (double)fit.size();
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
  };
  est.slope = ols(meanlog);
  for (auto& vol : est.volumes) {
    std::vector<double> y(radii.size());
    for (size_t k = 0; k < radii.size(); ++k) y[k] = std::log((double)vol[k]);
    est.per_center.push_back(ols(y));
  }
  return est;
}

std::string profile_csv(const ProfileResult& profile) {
  std::ostringstream out;
  out << "distance,count\n";
  for (size_t d = 0; d < profile.histogram.size(); ++d)
    out << d << "," << profile.histogram[d] << "\n";
  return out.str();
}

std::string two_point_csv(long n, unsigned long long seed,
                          const std::vector<double>& values) {
  std::ostringstream out;
  out << "n,seed,value\n";
  for (double v : values) out << n << "," << seed << "," << v << "\n";
  return out.str();
}

std::string dimension_csv(const DimensionEstimate& est) {
  std::ostringstream out;
  out << "center,radius,volume,slope\n";
  for (size_t c = 0; c < est.centers.size(); ++c)
    for (size_t k = 0; k < est.radii.size(); ++k)
      out << est.centers[c] << "," << est.radii[k] << "," << est.volumes[c][k] << ","
          << est.per_center[c] << "\n";
  return out.str();
}

}  // namespace qmaps
