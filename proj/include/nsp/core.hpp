#pragma once

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nsp {

/// Raised for malformed sequence, pattern, dataset or response input.
/// `line` is 1-based when the error comes from a file, 0 otherwise.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Raised when an exhaustive enumeration would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Item = std::string;

/// True for a non-empty token made of alphanumerics and `_`.
bool is_valid_item(std::string_view name) noexcept;

/// An unordered, duplicate-free set of items, stored in lexicographic order.
class Itemset {
 public:
  Itemset() = default;
  Itemset(std::initializer_list<Item> items);
  explicit Itemset(std::vector<Item> items);

  const std::vector<Item>& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  bool contains(std::string_view item) const noexcept;

  /// Every item of `this` is in `other`.
  bool subset_of(const Itemset& other) const noexcept;

  Itemset union_with(const Itemset& other) const;
  Itemset with(const Item& item) const;

  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

  friend bool operator==(const Itemset&, const Itemset&) = default;
  friend auto operator<=>(const Itemset&, const Itemset&) = default;

 private:
  std::vector<Item> items_;
};

struct Sequence {
  std::string id;
  std::vector<Itemset> itemsets;

  std::size_t size() const noexcept { return itemsets.size(); }
  /// 1-based access, matching the positions used in reports.
  const Itemset& at(std::size_t position) const { return itemsets.at(position - 1); }

  friend bool operator==(const Sequence&, const Sequence&) = default;
};

class Dataset {
 public:
  Dataset() = default;
  /// Validates id uniqueness and assigns `s<index>` to sequences without an id.
  explicit Dataset(std::vector<Sequence> sequences);

  const std::vector<Sequence>& sequences() const noexcept { return sequences_; }
  std::size_t size() const noexcept { return sequences_.size(); }
  bool empty() const noexcept { return sequences_.empty(); }
  const Itemset& alphabet() const noexcept { return alphabet_; }

 private:
  std::vector<Sequence> sequences_;
  Itemset alphabet_;
};

/// <p1 !q1 p2 ... !q(n-1) pn>. An empty negation slot means "no negation".
class NegativePattern {
 public:
  NegativePattern() = default;
  /// Throws std::invalid_argument unless |negatives| = |positives| - 1 and
  /// every positive itemset is non-empty.
  NegativePattern(std::vector<Itemset> positives, std::vector<Itemset> negatives);
  /// Positive pattern: all negation slots empty.
  explicit NegativePattern(std::vector<Itemset> positives);

  const std::vector<Itemset>& positives() const noexcept { return positives_; }
  const std::vector<Itemset>& negatives() const noexcept { return negatives_; }
  std::size_t length() const noexcept { return positives_.size(); }
  bool is_positive() const noexcept;

  friend bool operator==(const NegativePattern&, const NegativePattern&) = default;

 private:
  std::vector<Itemset> positives_;
  std::vector<Itemset> negatives_;
};

enum class NonInclusion { Partial, Total };
enum class EmbeddingMode { Soft, Strict };
enum class OccurrenceMode { Weak, Strong, StrongMinimal };

struct SemanticsConfig {
  NonInclusion non_inclusion = NonInclusion::Total;
  EmbeddingMode embedding = EmbeddingMode::Soft;
  OccurrenceMode occurrence = OccurrenceMode::Weak;

  friend bool operator==(const SemanticsConfig&, const SemanticsConfig&) = default;
};

namespace presets {
inline constexpr SemanticsConfig ensp{NonInclusion::Total, EmbeddingMode::Soft,
                                      OccurrenceMode::Strong};
inline constexpr SemanticsConfig negpspan{NonInclusion::Total, EmbeddingMode::Soft,
                                          OccurrenceMode::Weak};
}  // namespace presets

/// Resolves "ensp" or "negpspan"; nullopt for anything else.
std::optional<SemanticsConfig> preset(std::string_view name);

/// All 12 combinations, in (non-inclusion, embedding, occurrence) order.
std::vector<SemanticsConfig> all_semantics();

std::string to_string(NonInclusion v);
std::string to_string(EmbeddingMode v);
std::string to_string(OccurrenceMode v);
/// "partial/soft/weak" style label.
std::string to_string(const SemanticsConfig& c);

std::optional<NonInclusion> parse_non_inclusion(std::string_view s);
std::optional<EmbeddingMode> parse_embedding(std::string_view s);
std::optional<OccurrenceMode> parse_occurrence(std::string_view s);

Sequence parse_sequence(std::string_view text);
NegativePattern parse_pattern(std::string_view text);

std::string format_itemset(const Itemset& itemset);
std::string format_sequence(const Sequence& s);
std::string format_pattern(const NegativePattern& p);

NegativePattern positive_part(const NegativePattern& p);

/// Reads one sequence per line: optional `<id>:` prefix, `#` comment lines and
/// blank lines skipped. Errors carry the offending line number.
Dataset load_dataset(const std::filesystem::path& path);
Dataset parse_dataset(std::string_view text);

}  // namespace nsp
