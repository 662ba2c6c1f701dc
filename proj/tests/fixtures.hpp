#pragma once

#include "ergolab/system.hpp"

namespace ergolab::testing {

// Doubling map with Lebesgue measure.
inline SystemPtr doubling() {
  SystemConfig cfg;
  cfg.dim = 1;
  cfg.bases = {2};
  cfg.alphabet = {{0, 0}, {1, 0}};
  cfg.probs = {"1/2", "1/2"};
  return ExpandingToralSystem::make(cfg);
}

inline SystemPtr doubling_biased() {
  SystemConfig cfg;
  cfg.dim = 1;
  cfg.bases = {2};
  cfg.alphabet = {{0, 0}, {1, 0}};
  cfg.probs = {"1/4", "3/4"};
  return ExpandingToralSystem::make(cfg);
}

// T_{2,3} with 2-D Lebesgue: the full grid with uniform weights.
inline SystemPtr grid23() {
  SystemConfig cfg;
  cfg.dim = 2;
  cfg.bases = {2, 3};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) cfg.alphabet.push_back({i, j});
  cfg.probs.assign(6, "1/6");
  return ExpandingToralSystem::make(cfg);
}

// The running 3-map carpet example.
inline SystemPtr s3() {
  SystemConfig cfg;
  cfg.dim = 2;
  cfg.bases = {2, 3};
  cfg.alphabet = {{0, 0}, {1, 1}, {1, 2}};
  cfg.probs = {"1/3", "1/3", "1/3"};
  return ExpandingToralSystem::make(cfg);
}

// Non-uniform carpet for property tests.
inline SystemPtr skew23() {
  SystemConfig cfg;
  cfg.dim = 2;
  cfg.bases = {2, 3};
  cfg.alphabet = {{0, 0}, {0, 2}, {1, 1}};
  cfg.probs = {"1/2", "1/4", "1/4"};
  return ExpandingToralSystem::make(cfg);
}

}  // namespace ergolab::testing
