#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ergolab/rational.hpp"

namespace ergolab {

// One digit pair of the alphabet. For dim-1 systems only `i` is used.
struct Symbol {
  int i = 0;
  int j = 0;
  bool operator==(const Symbol&) const = default;
};

struct SystemConfig {
  int dim = 1;
  std::vector<int> bases;           // {m} or {m, n}, m <= n
  std::vector<Symbol> alphabet;     // distinct digit tuples
  std::vector<std::string> probs;   // rationals as "a/b"
  std::uint64_t seed = 0;
};

// An expanding toral endomorphism (x,y) -> (m x, n y) mod 1 together with
// the stationary measure of the associated grid IFS: cylinder measures are
// products of symbol probabilities, marginals are Bernoulli digit laws.
class ExpandingToralSystem {
 public:
  static std::shared_ptr<const ExpandingToralSystem> make(const SystemConfig& cfg);

  int dim() const { return dim_; }
  int base(int axis) const { return bases_[axis]; }
  std::size_t alphabet_size() const { return alphabet_.size(); }
  const Symbol& symbol(std::size_t idx) const { return alphabet_[idx]; }
  const Rat& prob(std::size_t idx) const { return probs_[idx]; }
  const std::vector<Rat>& probs() const { return probs_; }

  // Marginal digit weights. Axis 0 is the base-m law q_i, axis 1 the
  // base-n law q^y_j.
  const std::vector<Rat>& marginal(int axis) const { return marginals_[axis]; }

  // Symbol index for a digit tuple; -1 when the tuple is not in the alphabet.
  int symbol_index(int i, int j) const;

  // log(1/side) entropy pieces used by the closed-form dimension.
  double entropy_symbols() const;   // H(p)
  double entropy_marginal_x() const;  // H(q)

  // Closed-form Hausdorff dimension of the measure:
  //   dim 2: H(p)/log n + H(q) (1/log m - 1/log n)
  //   dim 1: H(p)/log m
  double dimension_closed_form() const;

  // Approximate-square split: largest l with n^l <= m^k (dim 2).
  int split_index(int k) const;

  // Digit of a symbol on an axis (axis 0 -> i, axis 1 -> j).
  int digit(std::size_t sym_idx, int axis) const {
    return axis == 0 ? alphabet_[sym_idx].i : alphabet_[sym_idx].j;
  }

  // Cumulative u64 sampling thresholds: symbol k is drawn when the raw
  // draw falls in [threshold[k-1], threshold[k]).
  const std::vector<std::uint64_t>& sampling_thresholds() const { return thresholds_; }

  std::uint64_t default_seed() const { return seed_; }

  const SystemConfig& config() const { return config_; }

 private:
  ExpandingToralSystem() = default;

  int dim_ = 1;
  std::array<int, 2> bases_{2, 2};
  std::vector<Symbol> alphabet_;
  std::vector<Rat> probs_;
  std::array<std::vector<Rat>, 2> marginals_;
  std::vector<std::uint64_t> thresholds_;
  std::vector<int> index_lookup_;  // (i * n + j) -> symbol index
  std::uint64_t seed_ = 0;
  SystemConfig config_;
};

using SystemPtr = std::shared_ptr<const ExpandingToralSystem>;

// A finite word over the alphabet (element of Lambda^k).
using Word = std::vector<std::uint8_t>;

// Exact product of symbol probabilities along the word.
Rat cylinder_measure(const ExpandingToralSystem& sys, const Word& word);

}  // namespace ergolab
