#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ergolab/cells.hpp"
#include "ergolab/measure.hpp"
#include "ergolab/radii.hpp"
#include "ergolab/scan.hpp"

namespace ergolab {

// Constants of the event-mixing inequality
//   mu(A and T^-n B) <= gamma mu(A) mu(B) + phi(n) mu(B),  phi(n) = C tau^n.
// All checked arithmetic uses the rational C and tau; alpha is the
// projection decay exponent they were derived from.
struct MixingBound {
  Rat gamma{1};
  double alpha = 0.0;
  Rat kappa{2};
  Rat C{0};
  Rat tau{0};

  Rat phi(int n) const {
    Rat t(1);
    for (int i = 0; i < n; ++i) t *= tau;
    return C * t;
  }
};

struct ProjectionConstants {
  double alpha = 0.0;        // min over axes of log(1/max weight)/log(base)
  int alpha_axis = 0;
  Rat kappa{2};              // fixed safety factor used by the certificate
  Rat kappa_min_adic{1};     // smallest power-of-two kappa passing the adic sweep
  int verified_generation = 0;
};

// Decay exponent of the marginal measures: max over adic intervals I of
// mu_axis(I) is (max weight)^g at generation g, so alpha is exact; kappa
// is verified exhaustively against all adic intervals up to `generation`.
ProjectionConstants projection_decay_constants(const ExpandingToralSystem& sys,
                                               int generation = 20);

// Bound with the carpet constants: gamma = 1, kappa = 2, tau >= m^-alpha,
// C >= 4 kappa 2^alpha, both exact rationals (exact equality when m = 2
// and the x-axis attains alpha, the carpet acceptance case).
MixingBound derive_mixing_bound(const ExpandingToralSystem& sys);

// Exact mu(A and T^-n(B)) for cell unions. Descends cylinders, pruning
// subtrees inside A at depth <= n via mu(R and T^-n B) = mu(R) mu(B); the
// cost never exceeds |alphabet|^(gen(A) + gen(B)).
Rat exact_correlation(const ExpandingToralSystem& sys, const CellUnion& a, const CellUnion& b,
                      int n);

struct CertificateViolation {
  std::size_t a_index = 0;
  std::size_t b_index = 0;
  int n = 0;
  Rat lhs{0};
  Rat rhs{0};
};

struct CertificateReport {
  MixingBound bound;
  std::size_t a_count = 0;
  std::size_t b_count = 0;
  int k_max = 0;
  std::uint64_t triples = 0;
  std::vector<CertificateViolation> violations;
  Rat min_slack{1};  // min over triples of rhs - lhs
};

struct CertificateParams {
  int max_gen_a = 3;   // approximate squares of word length <= max_gen_a
  int gen_b = 2;       // cylinder unions of this generation
  int k_max = 12;
  std::size_t b_unions = 100;  // sampled B unions (plus all single cylinders)
  std::uint64_t seed = 1;
  std::optional<MixingBound> bound;  // auto-derived when absent
  int jobs = 1;
};

// Exhaustive exact-arithmetic check of the mixing inequality over the
// (A, B, n) grid. Violations are data, not errors.
CertificateReport mixing_certificate(SystemPtr sys, const CertificateParams& params);

// The A family used by the certificate: every approximate square of word
// length 1..max_gen (dim 2) or adic interval (dim 1), plus the whole space.
std::vector<CellUnion> certificate_a_family(SystemPtr sys, int max_gen);

// All generation-g cylinders plus `extra` seeded unions of them.
std::vector<CellUnion> certificate_b_family(SystemPtr sys, int gen, std::size_t extra,
                                            std::uint64_t seed);

// Chung-Erdos lower bound (sum of diagonal)^2 / (sum of all entries) for
// mu(union A_i) from the pairwise intersection matrix.
Rat chung_erdos_lower(const std::vector<std::vector<Rat>>& pairwise);

struct BorelCantelliResult {
  // Bracket on the partial sums sum_{n<=N} mu(B(y, l_n)) at checkpoints.
  std::vector<std::uint64_t> checkpoint_n;
  std::vector<double> partial_sum_lo;
  std::vector<double> partial_sum_hi;
  std::vector<std::uint64_t> hit_counts;     // per sample
  std::vector<std::uint64_t> tail_hits;      // per sample, hits past tail_start
  std::uint64_t tail_start = 0;
  std::uint64_t decade_start = 0;
  double tail_fraction = 0.0;    // fraction of samples with a hit past tail_start
  double decade_fraction = 0.0;  // same for the last decade [horizon/10, horizon]
};

struct BorelCantelliParams {
  std::uint64_t horizon = 1000000;
  int samples = 200;
  std::uint64_t seed = 1;
  // Tail window start as horizon/tail_divisor; the last-decade fraction
  // is always reported alongside.
  std::uint64_t tail_divisor = 100;
  int jobs = 1;
};

// Dynamical Borel-Cantelli experiment: samples x ~ mu, counts orbit hits
// of the shrinking balls B(y, l_n), and reports the divergence proxy
// (partial-sum bracket) plus the tail coverage fractions.
BorelCantelliResult borel_cantelli_experiment(SystemPtr sys, const std::vector<Rat>& y,
                                              const RadiusSequence& radii,
                                              const BorelCantelliParams& params);

}  // namespace ergolab
