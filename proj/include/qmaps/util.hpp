#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmaps/rng.hpp"

namespace qmaps {

// Domain errors carry a stable code string so the CLI can map them to exit
// status 1 with a recognizable message.
struct DomainError : std::runtime_error {
  std::string code;
  DomainError(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

inline mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Number of {-1,0,+1}-step paths of length k with total displacement t.
mpz_class trinomial_count(long k, long t);

// Exact uniform integer in [0, bound), bound > 0, arbitrary precision.
mpz_class mpz_uniform_below(Rng& rng, const mpz_class& bound);

// Pick an index with probability weights[i] / sum(weights); weights are
// non-negative, not all zero.
size_t pick_weighted(Rng& rng, const std::vector<mpz_class>& weights);
size_t pick_weighted(Rng& rng, const std::vector<double>& weights);

// Sparse-table range minimum over a fixed integer sequence.
class RangeMin {
 public:
  RangeMin() = default;
  explicit RangeMin(const std::vector<int>& values);
  // min over the closed index interval [lo, hi]
  int query(size_t lo, size_t hi) const;

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> log2_;
};

// Regularized upper incomplete gamma Q(a, x); used for chi-square p-values.
double gamma_q(double a, double x);

}  // namespace qmaps
