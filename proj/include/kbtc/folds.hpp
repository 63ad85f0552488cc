#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "kbtc/error.hpp"
#include "kbtc/random.hpp"

namespace kbtc {

struct FoldPlan {
  std::vector<std::vector<std::size_t>> folds;  // each sorted ascending

  std::size_t size() const noexcept { return folds.size(); }

  // Every index not held out in `fold`, ascending.
  std::vector<std::size_t> training_indices(std::size_t fold, std::size_t n) const {
    std::vector<bool> held(n, false);
    for (std::size_t i : folds.at(fold)) held[i] = true;
    std::vector<std::size_t> out;
    out.reserve(n - folds[fold].size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!held[i]) out.push_back(i);
    }
    return out;
  }
};

// Stratified k-fold split. Each class's members are shuffled with the seeded
// generator and dealt round-robin; the dealing position carries over from
// one class to the next so overall fold sizes also differ by at most one.
inline FoldPlan stratified_folds(std::span<const std::size_t> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 folds");
  std::map<std::size_t, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < labels.size(); ++i) members[labels[i]].push_back(i);
  for (const auto& [label, indices] : members) {
    if (indices.size() < k) {
      throw Error(ErrorCode::kClassTooSmall, "class " + std::to_string(label) + " has " +
                                                 std::to_string(indices.size()) + " documents, fewer than " +
                                                 std::to_string(k) + " folds");
    }
  }

  Rng rng(seed);
  FoldPlan plan;
  plan.folds.resize(k);
  std::size_t next = 0;
  for (auto& [label, indices] : members) {
    fisher_yates_shuffle(std::span<std::size_t>(indices), rng);
    for (std::size_t i : indices) {
      plan.folds[next].push_back(i);
      next = (next + 1) % k;
    }
  }
  for (auto& fold : plan.folds) std::sort(fold.begin(), fold.end());
  return plan;
}

}  // namespace kbtc
