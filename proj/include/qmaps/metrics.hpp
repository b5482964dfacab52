#pragma once
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "qmaps/cms.hpp"
#include "qmaps/scheme.hpp"

namespace qmaps {

// distances concentrate around gamma * n^{1/4}, gamma = (8/9)^{1/4}
inline double rescale_factor(long n) {
  return std::pow(8.0 / 9.0, 0.25) * std::pow((double)n, 0.25);
}

std::vector<int> bfs_distances(const CombinatorialMap& m, int source);

enum class BasePoint { root, pointed };

struct ProfileResult {
  std::vector<long> histogram;  // histogram[d] = vertices at distance d
  int radius = 0;               // max distance from the base point
};
ProfileResult profile_and_radius(const PointedQuadrangulation& pq, BasePoint base);

// Lambda(i) = label of the re-rooted tour vertex at i, based at i = 0; the
// tour starts at the first edge of the first forest instead of the tree root.
struct GlobalLabelProcess {
  std::vector<int> values;  // Lambda(0..2n)
  RangeMin rmin;
};
GlobalLabelProcess build_global_label_process(const DecompositionQuadruple& quad);

// Lambda(i) + Lambda(j) - 2 max(cyclic interval minima both ways) + 2.
int d_circ(const GlobalLabelProcess& proc, long i, long j);

// Per-sample distance machinery: the tree, its decomposition, its image
// quadrangulation, the global label process and the global contour, plus
// memoized BFS for exact distance queries d(i, j) on re-rooted indices.
struct DistanceProcess {
  WellLabeledGTree tree;
  DecompositionQuadruple quad;
  PointedQuadrangulation pq;
  long n = 0;
  int u = 0;  // root offset of the decomposition
  GlobalLabelProcess lambda;
  std::vector<int> contour;          // stacked-forest contour, contour(2n) = 0
  std::vector<int> contour_runmin;   // running minimum of the contour from 0
  mutable std::map<int, std::vector<int>> bfs_cache;  // per query source vertex

  int dot_corner(long i) const { return (int)(((i - u) % (2 * n) + 2 * n) % (2 * n)); }
  int dot_vertex(long i) const { return pq.correspondence[dot_corner(i)]; }
  int d(long i, long j) const;                // exact graph distance
  double interpolate(double s, double t) const;  // bilinear on [0,2n]^2
  double rescaled(double s, double t) const;     // s,t in [0,1]
};
DistanceProcess build_distance_process(const WellLabeledGTree& wlt);

// Ancestral-lineage bound: Lambda(i) - min Lambda over the times between i
// and j whose contour running minimum matches i's and whose contour value is
// the interval infimum toward i. Always <= d(i, j).
int distance_lower_bound(const DistanceProcess& dp, long i, long j);

struct TwoPointSummary {
  long n = 0;
  std::vector<double> values;  // sorted rescaled d(0, n) samples
  double quantile(double p) const;
};
TwoPointSummary two_point_statistic(std::vector<double> rescaled_values, long n);
// two-sample Kolmogorov-Smirnov statistic (reported, no hard threshold)
double ks_statistic(std::vector<double> a, std::vector<double> b);

struct DimensionEstimate {
  double slope = 0;                        // mean of per-center slopes
  std::vector<double> per_center;          // one OLS slope per center
  std::vector<int> centers;                // sampled center vertices
  std::vector<int> radii;                  // the radius grid used
  std::vector<std::vector<long>> volumes;  // per center, per radius
};
// Geometric grid of >= points distinct integer radii in [lo, hi].
std::vector<int> geometric_radius_grid(double lo, double hi, int points);
// Errors: RadiusGridTooCoarse (fewer than two distinct radii).
DimensionEstimate dimension_estimate(const CombinatorialMap& map, int centers,
                                     std::vector<int> radii, Rng& rng);

// CSV renderings with fixed headers
std::string profile_csv(const ProfileResult& profile);                // distance,count
std::string two_point_csv(long n, unsigned long long seed,
                          const std::vector<double>& values);         // n,seed,value
std::string dimension_csv(const DimensionEstimate& est);              // center,radius,volume,slope

}  // namespace qmaps
