#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nsp/core.hpp"

namespace nsp::survey {

enum class QuestionId { Q1, Q2, Q3, Q4, Q5 };

std::string to_string(QuestionId q);
std::optional<QuestionId> parse_question_id(std::string_view s);
inline constexpr QuestionId kAllQuestions[] = {QuestionId::Q1, QuestionId::Q2, QuestionId::Q3,
                                               QuestionId::Q4, QuestionId::Q5};

using TickSet = std::set<std::string>;

struct Question {
  QuestionId id;
  NegativePattern pattern;
  Dataset table;
};

/// The five questionnaire items with their patterns and sequence tables.
const std::vector<Question>& question_bank();
const Question& question(QuestionId id);

/// Sequences of the question's table that contain its pattern under `interpretation`.
TickSet expected_ticks(const Question& q, const SemanticsConfig& interpretation);

struct KeyEntry {
  std::string label;  // e.g. "partial", "partial-strict", "strong-minimal"
  SemanticsConfig interpretation;
  TickSet ids;
};

/// One entry per value of the dimension(s) the question discriminates; the
/// remaining dimensions are held at partial/soft/weak.
std::vector<KeyEntry> question_keys(const Question& q);

enum class Scope { Conform, ConformExceptS4, Alternative };
std::string to_string(Scope s);

struct Profile {
  int expertise = 0;  // 0..2
  bool computer_scientist = false;
  bool researcher = false;
  bool logician = false;

  friend bool operator==(const Profile&, const Profile&) = default;
};

struct Response {
  std::string participant;
  std::map<QuestionId, TickSet> ticks;
  std::optional<Profile> profile;
};

struct NonInclusionVerdict {
  std::optional<NonInclusion> mode;  // nullopt = other
  bool order_sensitive = false;      // i4 ticked
};

bool passes_gate(const TickSet& q1);
Scope classify_scope(const TickSet& q2);
NonInclusionVerdict classify_non_inclusion(const TickSet& q3);
/// Decided by e1 alone; e0 is checked separately by e0_consistent().
std::optional<EmbeddingMode> classify_embedding(const TickSet& q4);
std::optional<OccurrenceMode> classify_occurrence(const TickSet& q5);
/// e0 must be ticked exactly when the non-inclusion verdict is partial.
bool e0_consistent(const NonInclusionVerdict& q3, const TickSet& q4);

struct Attribution {
  std::string participant;
  bool gate_passed = false;
  bool order_sensitive = false;
  Scope scope = Scope::Alternative;
  std::optional<NonInclusion> non_inclusion;
  std::optional<EmbeddingMode> embedding;
  std::optional<OccurrenceMode> occurrence;
  /// Present iff every dimension is identified and the scope is not Alternative.
  std::optional<SemanticsConfig> combined;
  /// Under total non-inclusion the embedding question cannot tell soft from strict.
  bool embedding_ambiguous = false;
  bool e0_inconsistent = false;

  std::vector<std::string> flags() const;
};

/// Throws std::invalid_argument when a question is missing from the response.
Attribution attribute_semantics(const Response& r);

/// Counts of combined semantics labels; respondents without one are counted under "none".
std::map<std::string, std::size_t> tally(const std::vector<Attribution>& as);

/// CSV: participant,question,ticks,expertise,cs,researcher,logician (ticks `;`-separated).
std::vector<Response> parse_responses(std::string_view text);
std::vector<Response> load_responses(const std::filesystem::path& path);

std::string attributions_csv(const std::vector<Attribution>& as);
std::string attributions_json(const std::vector<Attribution>& as);

}  // namespace nsp::survey
