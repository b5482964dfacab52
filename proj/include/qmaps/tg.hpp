#pragma once
#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "qmaps/scheme.hpp"
#include "qmaps/util.hpp"

namespace qmaps {

// Ordering of the 4g-2 vertices of a dominant scheme: vertices[i] is the
// scheme vertex in position i (rank of its label, smallest first).
struct Ordering {
  std::vector<int> vertices;
};

// d(lambda, k) = number of directed scheme edges whose origin sits strictly
// before position k and whose end sits at or after it; loops never qualify.
// Errors: NotDominant, BadArgument (k out of range, ordering not a bijection).
int d_lambda_k(const Scheme& s, const Ordering& lambda, int k);
// Independent second path: suffix sums of the per-vertex coefficients
// c(v) = 2 #{incident half-edges whose far end is earlier than v} - 3.
int d_lambda_k_via_c(const Scheme& s, const Ordering& lambda, int k);

// t_g = 3^g / (2^{11g-7} (6g-3) Gamma((5g-3)/2)) * rational_part, where the
// rational part sums prod_{i=1}^{4g-3} 1/d(lambda, i) over all dominant
// schemes and all (4g-2)! orderings.
struct TgResult {
  int genus = 0;
  mpq_class rational_part;
  std::string prefactor;  // decimal; exact rational divided by sqrt(pi) when
                          // Gamma((5g-3)/2) lands on a half-integer
  std::string value;      // decimal rendering of t_g at the given precision
  double value_d = 0;
  long precision_bits = 0;
};
// Errors: BadArgument (genus < 1).
TgResult tg_closed_form(int genus, long precision_bits = 256);

// Centered Gaussian density with variance a, and its negated derivative.
double gauss_p(double a, double x);
double gauss_minus_dp(double a, double x);

// One-step convolution identity: int_0^t p_{t-m}(a) (-p'_m(b)) dm = p_t(a+b).
// lemag_integral evaluates the left side by adaptive quadrature after an
// endpoint-flattening substitution; check_lemag returns the residual against
// the right side. Errors: BadArgument (non-positive inputs),
// QuadratureNonconvergence.
double lemag_integral(double a, double b, double t, double tol);
double check_lemag(double a, double b, double t, double tol);

// Iterated primitives of the standard Gaussian density at zero:
// p^[2](0) = 1/2 and p^[n](0) = p^[n-2](0) / (n-2).
double p_bracket_zero(int n);
// Closed form p^[10g-4](0) = 1/(2^{5g-2} (5g-3)!) against the moment
// quadrature int_0^inf y^{n-2}/(n-2)! p(y) dy; returns the residual.
// Errors: BadArgument, QuadratureNonconvergence.
double check_p_bracket(int genus);

// Monte Carlo estimate of the normalization constant Upsilon; the closed form
// satisfies 2^{(3g+1)/2} 3^g Upsilon = t_g (factor 12 at genus 1).
// Returns (estimate, standard error). Errors: BadArgument, ZeroSamples.
std::pair<double, double> estimate_upsilon(int genus, long mc_samples, Rng& rng);

// r(n) = |T_n| 12^{-n} n^{-(5g-3)/2} converges to t_g / 2.
struct AsymptoticReport {
  int genus = 0;
  std::vector<long> n;
  std::vector<double> ratio;
  double target = 0;              // t_g / 2
  std::vector<double> deviation;  // |ratio/target - 1|
  bool tail_decreasing = false;   // deviation decreasing over the last 3 n
};
// Errors: CountsUnavailable (empty list or n < 2).
AsymptoticReport asymptotic_ratio(int genus, const std::vector<long>& n_list);

std::string tg_to_json(const TgResult& r);

}  // namespace qmaps
