#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nsp/core.hpp"

namespace nsp {

/// Strictly increasing 1-based positions, one per positive itemset.
struct Embedding {
  std::vector<std::size_t> positions;

  std::size_t first() const { return positions.front(); }
  std::size_t last() const { return positions.back(); }

  friend bool operator==(const Embedding&, const Embedding&) = default;
  friend auto operator<=>(const Embedding&, const Embedding&) = default;
};

/// "(2,3,5)"
std::string format_embedding(const Embedding& e);

struct MatchReport {
  bool contained = false;
  /// Lexicographically smallest embedding justifying `contained`.
  std::optional<Embedding> witness;
  /// Strong / StrongMinimal only: lexicographically smallest embedding that
  /// breaks a negation constraint.
  std::optional<Embedding> violating;
};

struct SupportResult {
  std::size_t count = 0;
  std::vector<std::string> ids;  // dataset order

  friend bool operator==(const SupportResult&, const SupportResult&) = default;
};

/// All occurrences of the positive part of `p` in `s`, lexicographically ordered.
std::vector<Embedding> positive_embeddings(const Sequence& s, const NegativePattern& p);

/// Partial: some item of q is missing from i. Total: q and i are disjoint.
/// An empty q is vacuously satisfied.
bool non_inclusion(const Itemset& q, const Itemset& i, NonInclusion mode);

/// Checks every non-empty negation slot against the itemsets strictly between
/// the neighbouring anchors: each one individually (Soft) or their union
/// (Strict). Throws std::invalid_argument if `e` is not a positive embedding.
bool embedding_satisfies(const Sequence& s, const NegativePattern& p, const Embedding& e,
                         NonInclusion non_incl, EmbeddingMode emb);

/// Embeddings whose extent [first, last] strictly contains no other embedding's extent.
std::vector<Embedding> minimal_embeddings(const Sequence& s, const NegativePattern& p);

MatchReport contains(const Sequence& s, const NegativePattern& p, const SemanticsConfig& c);

/// Same verdict as contains(...).contained without building a report.
bool is_contained(const Sequence& s, const NegativePattern& p, const SemanticsConfig& c);

SupportResult support(const Dataset& d, const NegativePattern& p, const SemanticsConfig& c);

}  // namespace nsp
