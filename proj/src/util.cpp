#include "qmaps/util.hpp"

#include <cmath>

namespace qmaps {

mpz_class trinomial_count(long k, long t) {
  if (k < 0) return 0;
  if (t < 0) t = -t;
  if (t > k) return 0;
  // choose a up-steps, b down-steps, k-a-b flat steps, a-b = t
  mpz_class total = 0;
  for (long b = 0; 2 * b + t <= k; ++b) {
    long a = b + t;
    total += binomial((unsigned long)k, (unsigned long)a) *
             binomial((unsigned long)(k - a), (unsigned long)b);
  }
  return total;
}

mpz_class mpz_uniform_below(Rng& rng, const mpz_class& bound) {
  if (bound <= 0) throw DomainError("EmptySupport", "uniform below nonpositive bound");
  if (bound == 1) return 0;
  size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  size_t words = (bits + 63) / 64;
  mpz_class v;
  while (true) {
    v = 0;
    for (size_t w = 0; w < words; ++w) {
      mpz_class chunk = (unsigned long)(rng.next());
      v = (v << 64) | chunk;
    }
    // keep only `bits` low bits
    mpz_class mask = (mpz_class(1) << bits) - 1;
    v &= mask;
    if (v < bound) return v;
  }
}

size_t pick_weighted(Rng& rng, const std::vector<mpz_class>& weights) {
  mpz_class total = 0;
  for (const auto& w : weights) total += w;
  if (total <= 0) throw DomainError("EmptySupport", "all weights zero");
  mpz_class r = mpz_uniform_below(rng, total);
  mpz_class acc = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (r < acc) return i;
  }
  return weights.size() - 1;
}

size_t pick_weighted(Rng& rng, const std::vector<double>& weights) {
  long double total = 0;
  for (double w : weights) total += w;
  if (!(total > 0)) throw DomainError("EmptySupport", "all weights zero");
  long double r = (long double)rng.uniform() * total;
  long double acc = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (r < acc) return i;
  }
  return weights.size() - 1;
}

RangeMin::RangeMin(const std::vector<int>& values) {
  size_t n = values.size();
  log2_.assign(n + 1, 0);
  for (size_t i = 2; i <= n; ++i) log2_[i] = log2_[i / 2] + 1;
  int levels = n ? log2_[n] + 1 : 1;
  table_.assign(levels, {});
  table_[0] = values;
  for (int j = 1; j < levels; ++j) {
    size_t len = n - (size_t(1) << j) + 1;
    table_[j].resize(len);
    for (size_t i = 0; i < len; ++i)
      table_[j][i] = std::min(table_[j - 1][i], table_[j - 1][i + (size_t(1) << (j - 1))]);
  }
}

int RangeMin::query(size_t lo, size_t hi) const {
  int j = log2_[hi - lo + 1];
  return std::min(table_[j][lo], table_[j][hi - (size_t(1) << j) + 1]);
}

// Lentz continued fraction / series split for the regularized incomplete gamma.
static double gamma_p_series(double a, double x) {
  double sum = 1.0 / a, term = sum, ap = a;
  for (int i = 0; i < 500; ++i) {
    ap += 1;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

static double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1 - a, c = 1 / tiny, d = 1 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -i * (i - a);
    b += 2;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double gamma_q(double a, double x) {
  if (x < 0 || a <= 0) throw DomainError("BadArgument", "gamma_q domain");
  if (x == 0) return 1.0;
  if (x < a + 1) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

}  // namespace qmaps
