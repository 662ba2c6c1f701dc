#include "ergolab/system.hpp"

#include <cmath>
#include <set>

namespace ergolab {

std::shared_ptr<const ExpandingToralSystem> ExpandingToralSystem::make(const SystemConfig& cfg) {
  auto sys = std::shared_ptr<ExpandingToralSystem>(new ExpandingToralSystem());
  if (cfg.dim != 1 && cfg.dim != 2) throw ValidationError("dim must be 1 or 2");
  sys->dim_ = cfg.dim;
  if (static_cast<int>(cfg.bases.size()) != cfg.dim)
    throw ValidationError("bases must list one base per axis");
  for (int b : cfg.bases)
    if (b < 2) throw ValidationError("bases must be integers >= 2");
  sys->bases_[0] = cfg.bases[0];
  sys->bases_[1] = cfg.dim == 2 ? cfg.bases[1] : 1;
  if (cfg.dim == 2 && cfg.bases[0] > cfg.bases[1])
    throw ValidationError("dim-2 systems require m <= n");

  if (cfg.alphabet.empty()) throw ValidationError("alphabet must be nonempty");
  if (cfg.alphabet.size() != cfg.probs.size())
    throw ValidationError("probs must match alphabet length");

  std::set<std::pair<int, int>> seen;
  for (const Symbol& s : cfg.alphabet) {
    if (s.i < 0 || s.i >= cfg.bases[0])
      throw ValidationError("alphabet digit i out of range [0, m)");
    if (cfg.dim == 2) {
      if (s.j < 0 || s.j >= cfg.bases[1])
        throw ValidationError("alphabet digit j out of range [0, n)");
    } else if (s.j != 0) {
      throw ValidationError("dim-1 alphabet entries must be single digits");
    }
    if (!seen.insert({s.i, s.j}).second) throw ValidationError("duplicate alphabet entry");
  }
  sys->alphabet_ = cfg.alphabet;

  Rat total(0);
  for (const std::string& ps : cfg.probs) {
    Rat p = parse_rational(ps);
    if (sgn(p) < 0 || p > 1) throw ValidationError("probs entries must lie in [0,1]");
    sys->probs_.push_back(p);
    total += p;
  }
  if (total != 1) throw ValidationError("probs must sum to exactly 1");

  sys->marginals_[0].assign(sys->bases_[0], Rat(0));
  sys->marginals_[1].assign(std::max(sys->bases_[1], 1), Rat(0));
  for (std::size_t k = 0; k < sys->alphabet_.size(); ++k) {
    sys->marginals_[0][sys->alphabet_[k].i] += sys->probs_[k];
    if (cfg.dim == 2) sys->marginals_[1][sys->alphabet_[k].j] += sys->probs_[k];
  }

  // Cumulative sampling thresholds with exact rational cut points rounded
  // to 64-bit resolution; the final threshold is pinned to 2^64-1 so the
  // draw always resolves and degenerate vectors stay exact.
  Rat cum(0);
  Int two64 = Int(1) << 64;
  for (std::size_t k = 0; k < sys->probs_.size(); ++k) {
    cum += sys->probs_[k];
    if (k + 1 == sys->probs_.size() || cum == 1) {
      sys->thresholds_.push_back(~0ULL);
    } else {
      Int f = floor_scaled(cum, two64);
      std::uint64_t lo = mpz_get_ui(Int(f & 0xffffffffUL).get_mpz_t());
      std::uint64_t hi = mpz_get_ui(Int(f >> 32).get_mpz_t());
      sys->thresholds_.push_back((hi << 32) | lo);
    }
  }

  int n_for_lookup = std::max(sys->bases_[1], 1);
  sys->index_lookup_.assign(static_cast<std::size_t>(sys->bases_[0]) * n_for_lookup, -1);
  for (std::size_t k = 0; k < sys->alphabet_.size(); ++k)
    sys->index_lookup_[static_cast<std::size_t>(sys->alphabet_[k].i) * n_for_lookup +
                       sys->alphabet_[k].j] = static_cast<int>(k);

  sys->seed_ = cfg.seed;
  sys->config_ = cfg;
  return sys;
}

int ExpandingToralSystem::symbol_index(int i, int j) const {
  int n_for_lookup = std::max(bases_[1], 1);
  if (i < 0 || i >= bases_[0] || j < 0 || j >= n_for_lookup) return -1;
  return index_lookup_[static_cast<std::size_t>(i) * n_for_lookup + j];
}

double ExpandingToralSystem::entropy_symbols() const {
  double h = 0.0;
  for (const Rat& p : probs_)
    if (sgn(p) > 0) h -= rat_to_double(p) * log_rat(p);
  return h;
}

double ExpandingToralSystem::entropy_marginal_x() const {
  double h = 0.0;
  for (const Rat& q : marginals_[0])
    if (sgn(q) > 0) h -= rat_to_double(q) * log_rat(q);
  return h;
}

double ExpandingToralSystem::dimension_closed_form() const {
  double logm = std::log(static_cast<double>(bases_[0]));
  if (dim_ == 1) return entropy_symbols() / logm;
  double logn = std::log(static_cast<double>(bases_[1]));
  return entropy_symbols() / logn + entropy_marginal_x() * (1.0 / logm - 1.0 / logn);
}

int ExpandingToralSystem::split_index(int k) const {
  if (dim_ == 1) return k;
  // largest l with n^l <= m^k, decided on exact integer powers
  Int mk = pow_int(static_cast<unsigned>(bases_[0]), static_cast<unsigned>(k));
  Int nl(1);
  int l = 0;
  while (true) {
    Int next = nl * bases_[1];
    if (next > mk) break;
    nl = next;
    ++l;
  }
  return l;
}

Rat cylinder_measure(const ExpandingToralSystem& sys, const Word& word) {
  Rat out(1);
  for (std::uint8_t s : word) {
    if (s >= sys.alphabet_size()) throw ValidationError("word symbol index out of range");
    out *= sys.prob(s);
  }
  return out;
}

}  // namespace ergolab
