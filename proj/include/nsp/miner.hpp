#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nsp/core.hpp"
#include "nsp/matcher.hpp"

namespace nsp {

struct MinerConfig {
  std::size_t minsup = 1;
  std::size_t max_positive_length = 3;
  std::size_t max_itemset_size = 1;
  /// 0 disables negation entirely.
  std::size_t max_negation_size = 1;
  SemanticsConfig semantics = presets::negpspan;
  /// Skip negation candidates that extend a known-infrequent one. Only
  /// honoured under total non-inclusion with weak occurrences, where
  /// growing a negated itemset cannot raise support.
  bool prune_negations = false;
  /// Upper bound on candidates evaluated by brute_force_mine.
  std::size_t brute_force_budget = 5'000'000;
};

/// Throws std::invalid_argument for caps of 0 (other than max_negation_size)
/// or a minsup of 0. A minsup above the dataset size is valid and mines nothing.
void validate(const MinerConfig& cfg, const Dataset& d);

struct MinedPattern {
  NegativePattern pattern;
  std::size_t support = 0;
  std::vector<std::string> ids;

  friend bool operator==(const MinedPattern&, const MinedPattern&) = default;
};

/// Canonical output order: number of positive itemsets, then formatted text.
void sort_canonical(std::vector<MinedPattern>& patterns);

/// Items contained in at least `minsup` sequences, ordered.
std::vector<Item> frequent_items(const Dataset& d, std::size_t minsup);

/// Frequent positive patterns within the caps, by depth-first prefix growth
/// (sequence- and itemset-extensions).
std::vector<MinedPattern> mine_positive(const Dataset& d, const MinerConfig& cfg);

/// Fills one or more negation slots of a positive `p` with non-empty subsets of
/// `frequent` of at most `cfg.max_negation_size` items. Ordered by total
/// negated-item count, then slot-wise subset order.
std::vector<NegativePattern> generate_negation_candidates(const NegativePattern& p,
                                                          const std::vector<Item>& frequent,
                                                          const MinerConfig& cfg);

/// Frequent positive patterns plus every frequent negation candidate of each,
/// with supports counted under `cfg.semantics`.
std::vector<MinedPattern> mine_negative(const Dataset& d, const MinerConfig& cfg);

/// Enumerates every pattern within the caps (positive itemsets over the whole
/// alphabet, negated itemsets over the frequent items) and counts each one.
/// Throws BudgetExceeded when the candidate count passes cfg.brute_force_budget.
std::vector<MinedPattern> brute_force_mine(const Dataset& d, const MinerConfig& cfg);

/// pattern<TAB>support<TAB>id,id,...
std::string to_tsv(const std::vector<MinedPattern>& patterns);
std::string to_json(const std::vector<MinedPattern>& patterns);

}  // namespace nsp
