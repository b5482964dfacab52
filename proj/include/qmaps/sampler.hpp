#pragma once
#include <string>
#include <vector>

#include "qmaps/scheme.hpp"

namespace qmaps {

enum class Mode { exact, floating };

// Structure of a well-labeled g-tree: everything but the actual bridge paths
// and forest shapes.
struct StructureVector {
  Scheme scheme;
  std::vector<int> m;       // per scheme half-edge
  std::vector<int> sigma;   // per scheme half-edge
  std::vector<int> labels;  // per scheme vertex; root origin 0
  int u = 0;
};

// Precomputed weights for one (genus, n): per scheme and per vertex-label
// assignment, the generating vector over Z = total chain length, plus the
// aggregate weights used for inverse-transform sampling.
struct SchemeTable {
  Scheme scheme;
  std::vector<int> edge_of;               // half-edge -> edge index
  std::vector<std::vector<int>> lambdas;  // per-λ vertex label vectors
  std::vector<std::vector<mpz_class>> pe;   // exact: per-λ P_E(Z)
  std::vector<mpz_class> lw;                // exact: per-λ total weight
  std::vector<std::vector<double>> pe_f;    // float analogues (3^Z-normalized)
  std::vector<double> lw_f;
};

struct WeightTable {
  int genus = 0;
  long n = 0;
  Mode mode = Mode::exact;
  int zmax = 0, lmax = 0;
  std::vector<mpz_class> wz;   // exact 3^{n-Z} C(2n, n-Z)
  std::vector<double> wz_f;    // C(2n, n-Z)/C(2n, n)
  std::vector<SchemeTable> schemes;
  mpz_class total;             // |T_n| in exact mode
  double total_f = 0;          // sum of normalized weights in float mode
  double log_total = 0;        // ln |T_n| (either mode)
};

WeightTable build_weight_table(int genus, long n, Mode mode);

// |T_n|, exact integer.
mpz_class count_gtrees(int genus, long n);
// float-mode estimate (may overflow to inf for large n) and its natural log
double count_gtrees_float(int genus, long n);
double count_gtrees_log(int genus, long n);
// |Q_n| = 2|T_n|/(n+2-2g). Errors: NonIntegerResult.
mpz_class count_quadrangulations(int genus, long n);

// Inverse-transform sampling from the table. Errors: EmptySupport.
StructureVector sample_structure(const WeightTable& table, Rng& rng);
WellLabeledGTree sample_gtree(const WeightTable& table, Rng& rng);

// Convenience one-shot versions (build an exact table internally).
StructureVector sample_structure(int genus, long n, Rng& rng);
WellLabeledGTree sample_gtree(int genus, long n, Rng& rng);

}  // namespace qmaps
