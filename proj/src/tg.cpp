#include "qmaps/tg.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qmaps/sampler.hpp"

namespace qmaps {

namespace {

// positions[v] = rank of vertex v in the ordering; validates that every
// vertex has degree 3 (checked from the map itself, so hand-built cubic maps
// work too) and that the ordering is a bijection
std::vector<int> ordering_positions(const Scheme& s, const Ordering& lambda) {
  const CombinatorialMap& m = s.tree.map;
  int V = m.n_vertices;
  std::vector<int> deg(V, 0);
  for (int h = 0; h < m.half_edges(); ++h) ++deg[m.vertex_of[h]];
  for (int v = 0; v < V; ++v)
    if (deg[v] != 3) throw DomainError("NotDominant", "scheme has a vertex of degree != 3");
  if ((int)lambda.vertices.size() != V)
    throw DomainError("BadArgument", "ordering size does not match the vertex count");
  std::vector<int> pos(V, -1);
  for (int i = 0; i < V; ++i) {
    int v = lambda.vertices[i];
    if (v < 0 || v >= V || pos[v] >= 0)
      throw DomainError("BadArgument", "ordering is not a bijection onto the vertices");
    pos[v] = i;
  }
  return pos;
}

// k runs over the gaps of the ordering: [1, V-1], i.e. [1, 4g-3] for a
// genus-g scheme with its 4g-2 vertices
void check_k(const Scheme& s, int k) {
  if (k < 1 || k >= s.tree.map.n_vertices)
    throw DomainError("BadArgument", "k must lie in [1, 4g-3]");
}

double gauss_normal(Rng& rng) {
  // Box-Muller; uniform() is in [0, 1), so flip to avoid log(0)
  double u = 1.0 - rng.uniform(), v = rng.uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
}

// adaptive Simpson with the classic |S2 - S| <= 15 eps refinement rule
template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double eps, int depth) {
  if (depth <= 0)
    throw DomainError("QuadratureNonconvergence", "adaptive refinement depth exhausted");
  double m = (a + b) / 2;
  double lm = (a + m) / 2, rm = (m + b) / 2;
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6 * (fa + 4 * flm + fm);
  double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (std::abs(left + right - whole) <= 15 * eps)
    return left + right + (left + right - whole) / 15;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, eps / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, eps / 2, depth - 1);
}

template <class F>
double integrate(const F& f, double a, double b, double eps, int panels = 1) {
  // seed the adaptive pass with a fixed partition so that a localized
  // integrand cannot slip between the three initial sample points
  double total = 0, w = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * w, hi = lo + w;
    double fa = f(lo), fb = f(hi), fm = f((lo + hi) / 2);
    double whole = w / 6 * (fa + 4 * fm + fb);
    total += adaptive_simpson(f, lo, hi, fa, fm, fb, whole, eps / panels, 60);
  }
  return total;
}

// Gamma(alpha, 1) variate for alpha < 1: Marsaglia-Tsang at alpha + 1 with
// the standard power-of-uniform boost
double gamma_small(Rng& rng, double alpha) {
  double d = alpha + 1 - 1.0 / 3, c = 1 / std::sqrt(9 * d);
  while (true) {
    double x = gauss_normal(rng), v = 1 + c * x;
    if (v <= 0) continue;
    v = v * v * v;
    double u = 1 - rng.uniform();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v))
      return d * v * std::pow(1 - rng.uniform(), 1.0 / alpha);
  }
}

// Gamma((5g-3)/2) = coeff * sqrt(pi)^{uses_pi}, exactly
struct HalfGamma {
  mpq_class coeff;
  bool uses_pi = false;
};

HalfGamma gamma_half_integer(int j) {  // Gamma(j / 2), j >= 1
  HalfGamma r;
  if (j % 2 == 0) {
    r.coeff = 1;
    for (int i = 2; i < j / 2; ++i) r.coeff *= i;  // (j/2 - 1)!
  } else {
    // Gamma(m + 1/2) = (2m)! / (4^m m!) sqrt(pi)
    int m = (j - 1) / 2;
    mpz_class num = 1, den = 1;
    for (int i = 1; i <= 2 * m; ++i) num *= i;
    for (int i = 1; i <= m; ++i) den *= 4 * i;
    r.coeff = mpq_class(num, den);
    r.coeff.canonicalize();
    r.uses_pi = true;
  }
  return r;
}

std::string mpfr_decimal(const mpq_class& coeff, bool div_sqrt_pi, long bits) {
  mpfr_t v;
  mpfr_init2(v, bits);
  mpfr_set_q(v, coeff.get_mpq_t(), MPFR_RNDN);
  if (div_sqrt_pi) {
    mpfr_t sp;
    mpfr_init2(sp, bits);
    mpfr_const_pi(sp, MPFR_RNDN);
    mpfr_sqrt(sp, sp, MPFR_RNDN);
    mpfr_div(v, v, sp, MPFR_RNDN);
    mpfr_clear(sp);
  }
  long digits = std::max(6L, (long)(bits * 0.30103));
  char* str = nullptr;
  mpfr_asprintf(&str, "%.*Rg", (int)digits, v);
  std::string out = str;
  mpfr_free_str(str);
  mpfr_clear(v);
  return out;
}

}  // namespace

int d_lambda_k(const Scheme& s, const Ordering& lambda, int k) {
  auto pos = ordering_positions(s, lambda);
  check_k(s, k);
  const CombinatorialMap& m = s.tree.map;
  int count = 0;
  for (int h = 0; h < m.half_edges(); ++h)
    if (pos[m.vertex_of[h]] < k && k <= pos[m.vertex_of[m.alpha[h]]]) ++count;
  return count;
}

int d_lambda_k_via_c(const Scheme& s, const Ordering& lambda, int k) {
  auto pos = ordering_positions(s, lambda);
  check_k(s, k);
  const CombinatorialMap& m = s.tree.map;
  int V = m.n_vertices;
  // c(v) = (earlier neighbors) - (later neighbors) over the three incident
  // half-edges; a loop compares v with itself and contributes nothing, which
  // is the loop-free formula 2 #earlier - 3 extended to ties
  std::vector<int> c(V, 0);
  for (int h = 0; h < m.half_edges(); ++h) {
    int a = pos[m.vertex_of[h]], b = pos[m.vertex_of[m.alpha[h]]];
    c[m.vertex_of[h]] += b < a ? 1 : b > a ? -1 : 0;
  }
  int d = 0;
  for (int i = k; i < V; ++i) d += c[lambda.vertices[i]];
  return d;
}

TgResult tg_closed_form(int genus, long precision_bits) {
  if (genus < 1) throw DomainError("BadArgument", "genus must be >= 1");
  TgResult r;
  r.genus = genus;
  r.precision_bits = precision_bits;
  r.rational_part = 0;
  for (const Scheme& s : enumerate_schemes(genus, true)) {
    int V = s.tree.map.n_vertices;  // 4g - 2
    Ordering lambda;
    lambda.vertices.resize(V);
    std::iota(lambda.vertices.begin(), lambda.vertices.end(), 0);
    do {
      mpq_class prod = 1;
      for (int k = 1; k <= 4 * genus - 3; ++k)
        prod /= d_lambda_k(s, lambda, k);
      r.rational_part += prod;
    } while (std::next_permutation(lambda.vertices.begin(), lambda.vertices.end()));
  }
  // prefactor 3^g / (2^{11g-7} (6g-3) Gamma((5g-3)/2))
  HalfGamma gam = gamma_half_integer(5 * genus - 3);
  mpz_class pow3 = 1, pow2 = 1;
  for (int i = 0; i < genus; ++i) pow3 *= 3;
  for (int i = 0; i < 11 * genus - 7; ++i) pow2 *= 2;
  mpq_class pref = mpq_class(pow3, pow2 * (6 * genus - 3)) / gam.coeff;
  pref.canonicalize();
  r.prefactor = mpfr_decimal(pref, gam.uses_pi, precision_bits);
  mpq_class total = pref * r.rational_part;
  total.canonicalize();
  r.value = mpfr_decimal(total, gam.uses_pi, precision_bits);
  r.value_d = total.get_d() / (gam.uses_pi ? std::sqrt(M_PI) : 1.0);
  return r;
}

double gauss_p(double a, double x) {
  return std::exp(-x * x / (2 * a)) / std::sqrt(2 * M_PI * a);
}

double gauss_minus_dp(double a, double x) {
  return x / a * gauss_p(a, x);
}

double lemag_integral(double a, double b, double t, double tol) {
  if (a <= 0 || b <= 0 || t <= 0 || tol <= 0)
    throw DomainError("BadArgument", "arguments must be positive");
  // substitution m = t s^2 (3 - 2s): the Jacobian 6 t s (1 - s) vanishes at
  // both endpoints, flattening the essential singularities of the integrand
  auto f = [&](double s) {
    double m = t * s * s * (3 - 2 * s);
    if (m <= 0 || m >= t) return 0.0;
    return gauss_p(t - m, a) * gauss_minus_dp(m, b) * 6 * t * s * (1 - s);
  };
  double eps = std::max(std::min(tol / 100, 1e-12), 1e-15);
  return integrate(f, 0.0, 1.0, eps);
}

double check_lemag(double a, double b, double t, double tol) {
  return std::abs(lemag_integral(a, b, t, tol) - gauss_p(t, a + b));
}

double p_bracket_zero(int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("BadArgument", "n must be even and >= 2");
  double p = 0.5;
  for (int k = 4; k <= n; k += 2) p /= k - 2;
  return p;
}

double check_p_bracket(int genus) {
  if (genus < 1) throw DomainError("BadArgument", "genus must be >= 1");
  int n = 10 * genus - 4;
  // closed form 1/(2^{5g-2} (5g-3)!)
  double closed = 1.0;
  for (int i = 0; i < 5 * genus - 2; ++i) closed /= 2;
  for (int i = 2; i <= 5 * genus - 3; ++i) closed /= i;
  // moment quadrature E[Y^{n-2} 1{Y>0}] / (n-2)!
  double lfact = std::lgamma(n - 1.0);
  auto f = [&](double y) {
    if (y <= 0) return 0.0;
    return std::exp((n - 2) * std::log(y) - y * y / 2 - lfact) / std::sqrt(2 * M_PI);
  };
  double quad = integrate(f, 0.0, std::sqrt(n - 2.0) + 12.0, 1e-14, 32);
  return std::abs(closed - quad);
}

std::pair<double, double> estimate_upsilon(int genus, long mc_samples, Rng& rng) {
  if (genus < 1) throw DomainError("BadArgument", "genus must be >= 1");
  if (mc_samples < 1) throw DomainError("ZeroSamples", "mc_samples must be >= 1");
  auto schemes = enumerate_schemes(genus, true);
  // static description of each scheme's integration variables
  struct Desc {
    int HE, V, K, root_v;
    std::vector<int> edge_of;                 // half-edge -> edge
    std::vector<std::pair<int, int>> halves;  // edge -> its two half-edges
    std::vector<std::pair<int, int>> ends;    // edge -> (tail vertex, head vertex)
    std::vector<std::vector<int>> incident;   // vertex -> incident edges
  };
  std::vector<Desc> descs;
  for (const Scheme& s : schemes) {
    Desc d;
    d.HE = s.tree.map.half_edges();
    d.V = s.tree.map.n_vertices;
    d.K = s.tree.n_edges;
    d.root_v = s.tree.map.vertex_of[0];
    d.edge_of.assign(d.HE, -1);
    d.incident.resize(d.V);
    for (int h = 0; h < d.HE; ++h) {
      int mate = s.tree.pairing[h];
      if (h > mate) continue;
      int e = (int)d.ends.size();
      d.edge_of[h] = d.edge_of[mate] = e;
      d.halves.emplace_back(h, mate);
      d.ends.emplace_back(s.tree.map.vertex_of[h], s.tree.map.vertex_of[mate]);
      d.incident[d.ends.back().first].push_back(e);
      d.incident[d.ends.back().second].push_back(e);
    }
    descs.push_back(std::move(d));
  }
  double sum = 0, sumsq = 0;
  std::vector<double> m, sigma, l;
  for (long it = 0; it < mc_samples; ++it) {
    double value = 0;  // one joint sample per scheme, summed
    for (const Desc& d : descs) {
      // chain-length fractions m: symmetric Dirichlet(1/4) on the simplex
      // over all half-edges. The concentration at small coordinates is
      // deliberate: the sigma-stage weight below behaves like
      // (m1 + m2)^{-3/2} per edge, which has infinite variance under a
      // uniform simplex proposal but stays bounded against m^{-3/4} factors.
      const double alpha = 0.25;
      m.assign(d.HE, 0);
      double msum = 0;
      for (int h = 0; h < d.HE; ++h) {
        m[h] = gamma_small(rng, alpha);
        msum += m[h];
      }
      double logq = std::lgamma(d.HE * alpha) - d.HE * std::lgamma(alpha);
      for (int h = 0; h < d.HE; ++h) {
        m[h] = std::max(m[h] / msum, 1e-300);
        logq += (alpha - 1) * std::log(m[h]);
      }
      // the u coordinate is integrated analytically: the indicator u < m at
      // the root edge contributes a plain factor m[0]
      double log_u_factor = std::log(m[0]);
      // bridge spreads sigma: Rayleigh matched to the two -p' kernels, whose
      // exponential parts then cancel exactly against the proposal
      sigma.assign(d.K, 0);
      for (int e = 0; e < d.K; ++e) {
        double A = 1.0 / m[d.halves[e].first] + 1.0 / m[d.halves[e].second];
        double s = std::sqrt(-2.0 * std::log(1.0 - rng.uniform()) / A);
        sigma[e] = s;
        logq += std::log(A * s) - A * s * s / 2;
      }
      // vertex labels l: centered Gaussians with variance the incident
      // sigma-sum; the root vertex is pinned at 0
      l.assign(d.V, 0);
      for (int v = 0; v < d.V; ++v) {
        if (v == d.root_v) continue;
        double var = 0;
        for (int e : d.incident[v]) var += sigma[e];
        l[v] = gauss_normal(rng) * std::sqrt(var);
        logq += std::log(gauss_p(var, l[v]));
      }
      double logf = log_u_factor;
      for (int h = 0; h < d.HE; ++h)
        logf += std::log(gauss_minus_dp(m[h], sigma[d.edge_of[h]]));
      for (int e = 0; e < d.K; ++e)
        logf += std::log(gauss_p(sigma[e], l[d.ends[e].second] - l[d.ends[e].first]));
      value += std::exp(logf - logq);
    }
    sum += value;
    sumsq += value * value;
  }
  double mean = sum / mc_samples;
  double var = std::max(0.0, sumsq / mc_samples - mean * mean);
  double se = std::sqrt(var / mc_samples);
  return {mean, se};
}

AsymptoticReport asymptotic_ratio(int genus, const std::vector<long>& n_list) {
  if (n_list.empty()) throw DomainError("CountsUnavailable", "no n values given");
  for (long n : n_list)
    if (n < 2) throw DomainError("CountsUnavailable", "counts require n >= 2");
  AsymptoticReport rep;
  rep.genus = genus;
  rep.n = n_list;
  rep.target = tg_closed_form(genus, 128).value_d / 2;
  for (long n : n_list) {
    double lr = count_gtrees_log(genus, n) - n * std::log(12.0) -
                (5.0 * genus - 3) / 2 * std::log((double)n);
    rep.ratio.push_back(std::exp(lr));
    rep.deviation.push_back(std::abs(rep.ratio.back() / rep.target - 1));
  }
  size_t k = rep.deviation.size();
  rep.tail_decreasing = k >= 3 && rep.deviation[k - 1] < rep.deviation[k - 2] &&
                        rep.deviation[k - 2] < rep.deviation[k - 3];
  return rep;
}

std::string tg_to_json(const TgResult& r) {
  std::string out = "{\"genus\": " + std::to_string(r.genus) + ", \"rational_part\": \"" +
                    r.rational_part.get_str() + "\", \"t_g\": \"" + r.value +
                    "\", \"precision_bits\": " + std::to_string(r.precision_bits) + "}";
  return out;
}

}  // namespace qmaps
