#include "nsp/core.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace nsp {

ParseError::ParseError(const std::string& what, std::size_t line)
    : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
      line_(line) {}

namespace {

bool is_item_char(char c) noexcept {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool is_space(char c) noexcept { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::vector<Item> normalize(std::vector<Item> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  for (const auto& item : items) {
    if (!is_valid_item(item)) throw std::invalid_argument("invalid item '" + item + "'");
  }
  return items;
}

struct Token {
  bool negated = false;
  Itemset itemset;
};

// Splits a line into (optionally negated) itemsets. A bare token is a
// singleton, `( ... )` a multi-item group.
std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();

  auto read_item = [&]() {
    const std::size_t start = i;
    while (i < n && is_item_char(text[i])) ++i;
    return std::string(text.substr(start, i - start));
  };

  while (i < n) {
    const char c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    Token token;
    if (c == '!') {
      token.negated = true;
      ++i;
      if (i >= n || (text[i] != '(' && !is_item_char(text[i]))) {
        throw ParseError("'!' must be followed by an item or a group");
      }
    }
    if (text[i] == '(') {
      ++i;
      std::vector<Item> items;
      bool closed = false;
      while (i < n) {
        const char g = text[i];
        if (is_space(g)) {
          ++i;
        } else if (g == ')') {
          ++i;
          closed = true;
          break;
        } else if (g == '(') {
          throw ParseError("nested parentheses");
        } else if (is_item_char(g)) {
          items.push_back(read_item());
        } else {
          throw ParseError(std::string("unexpected character '") + g + "' in group");
        }
      }
      if (!closed) throw ParseError("unbalanced parentheses: missing ')'");
      if (items.empty()) throw ParseError("empty group '()'");
      token.itemset = Itemset(std::move(items));
    } else if (text[i] == ')') {
      throw ParseError("unbalanced parentheses: unexpected ')'");
    } else if (is_item_char(text[i])) {
      token.itemset = Itemset{read_item()};
    } else {
      throw ParseError(std::string("unexpected character '") + text[i] + "'");
    }
    tokens.push_back(std::move(token));
  }
  return tokens;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

bool is_valid_item(std::string_view name) noexcept {
  return !name.empty() && std::all_of(name.begin(), name.end(), is_item_char);
}

Itemset::Itemset(std::initializer_list<Item> items) : items_(normalize(items)) {}
Itemset::Itemset(std::vector<Item> items) : items_(normalize(std::move(items))) {}

bool Itemset::contains(std::string_view item) const noexcept {
  return std::binary_search(items_.begin(), items_.end(), item);
}

bool Itemset::subset_of(const Itemset& other) const noexcept {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

Itemset Itemset::union_with(const Itemset& other) const {
  Itemset result;
  result.items_.reserve(items_.size() + other.items_.size());
  std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                 std::back_inserter(result.items_));
  return result;
}

Itemset Itemset::with(const Item& item) const {
  return union_with(Itemset{item});
}

Dataset::Dataset(std::vector<Sequence> sequences) : sequences_(std::move(sequences)) {
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < sequences_.size(); ++i) {
    auto& s = sequences_[i];
    if (s.id.empty()) s.id = "s" + std::to_string(i);
    if (!seen.insert(s.id).second) throw ParseError("duplicate sequence id '" + s.id + "'");
    for (const auto& itemset : s.itemsets) {
      if (itemset.empty()) throw std::invalid_argument("sequence '" + s.id + "' has an empty itemset");
      alphabet_ = alphabet_.union_with(itemset);
    }
  }
}

NegativePattern::NegativePattern(std::vector<Itemset> positives, std::vector<Itemset> negatives)
    : positives_(std::move(positives)), negatives_(std::move(negatives)) {
  if (positives_.empty()) throw std::invalid_argument("pattern needs at least one positive itemset");
  if (negatives_.size() + 1 != positives_.size()) {
    throw std::invalid_argument("pattern needs exactly one negation slot between consecutive positives");
  }
  for (const auto& p : positives_) {
    if (p.empty()) throw std::invalid_argument("positive itemsets must be non-empty");
  }
}

NegativePattern::NegativePattern(std::vector<Itemset> positives)
    : NegativePattern(positives,
                      std::vector<Itemset>(positives.empty() ? 0 : positives.size() - 1)) {}

bool NegativePattern::is_positive() const noexcept {
  return std::all_of(negatives_.begin(), negatives_.end(), [](const Itemset& q) { return q.empty(); });
}

std::optional<SemanticsConfig> preset(std::string_view name) {
  if (name == "ensp") return presets::ensp;
  if (name == "negpspan") return presets::negpspan;
  return std::nullopt;
}

std::vector<SemanticsConfig> all_semantics() {
  std::vector<SemanticsConfig> out;
  for (auto n : {NonInclusion::Partial, NonInclusion::Total}) {
    for (auto e : {EmbeddingMode::Soft, EmbeddingMode::Strict}) {
      for (auto o : {OccurrenceMode::Weak, OccurrenceMode::Strong, OccurrenceMode::StrongMinimal}) {
        out.push_back({n, e, o});
      }
    }
  }
  return out;
}

std::string to_string(NonInclusion v) { return v == NonInclusion::Partial ? "partial" : "total"; }
std::string to_string(EmbeddingMode v) { return v == EmbeddingMode::Soft ? "soft" : "strict"; }
std::string to_string(OccurrenceMode v) {
  switch (v) {
    case OccurrenceMode::Weak: return "weak";
    case OccurrenceMode::Strong: return "strong";
    case OccurrenceMode::StrongMinimal: return "strong-minimal";
  }
  return "?";
}
std::string to_string(const SemanticsConfig& c) {
  return to_string(c.non_inclusion) + "/" + to_string(c.embedding) + "/" + to_string(c.occurrence);
}

std::optional<NonInclusion> parse_non_inclusion(std::string_view s) {
  if (s == "partial") return NonInclusion::Partial;
  if (s == "total") return NonInclusion::Total;
  return std::nullopt;
}
std::optional<EmbeddingMode> parse_embedding(std::string_view s) {
  if (s == "soft") return EmbeddingMode::Soft;
  if (s == "strict") return EmbeddingMode::Strict;
  return std::nullopt;
}
std::optional<OccurrenceMode> parse_occurrence(std::string_view s) {
  if (s == "weak") return OccurrenceMode::Weak;
  if (s == "strong") return OccurrenceMode::Strong;
  if (s == "strong-minimal") return OccurrenceMode::StrongMinimal;
  return std::nullopt;
}

Sequence parse_sequence(std::string_view text) {
  auto tokens = tokenize(text);
  if (tokens.empty()) throw ParseError("empty sequence");
  Sequence s;
  for (auto& t : tokens) {
    if (t.negated) throw ParseError("negation is not allowed in a sequence");
    s.itemsets.push_back(std::move(t.itemset));
  }
  return s;
}

NegativePattern parse_pattern(std::string_view text) {
  auto tokens = tokenize(text);
  if (tokens.empty()) throw ParseError("empty pattern");
  if (tokens.front().negated) throw ParseError("a pattern cannot start with a negation");
  if (tokens.back().negated) throw ParseError("a pattern cannot end with a negation");

  std::vector<Itemset> positives;
  std::vector<Itemset> negatives;
  bool pending_negation = false;
  for (auto& t : tokens) {
    if (t.negated) {
      if (pending_negation) throw ParseError("two consecutive negations");
      negatives.push_back(std::move(t.itemset));
      pending_negation = true;
    } else {
      if (!positives.empty() && !pending_negation) negatives.emplace_back();
      positives.push_back(std::move(t.itemset));
      pending_negation = false;
    }
  }
  return NegativePattern(std::move(positives), std::move(negatives));
}

std::string format_itemset(const Itemset& itemset) {
  if (itemset.size() == 1) return itemset.items().front();
  std::string out = "(";
  for (std::size_t i = 0; i < itemset.size(); ++i) {
    if (i > 0) out += ' ';
    out += itemset.items()[i];
  }
  out += ')';
  return out;
}

std::string format_sequence(const Sequence& s) {
  std::string out;
  for (const auto& itemset : s.itemsets) {
    if (!out.empty()) out += ' ';
    out += format_itemset(itemset);
  }
  return out;
}

std::string format_pattern(const NegativePattern& p) {
  std::string out;
  for (std::size_t i = 0; i < p.length(); ++i) {
    if (i > 0) {
      out += ' ';
      const auto& q = p.negatives()[i - 1];
      if (!q.empty()) out += '!' + format_itemset(q) + ' ';
    }
    out += format_itemset(p.positives()[i]);
  }
  return out;
}

NegativePattern positive_part(const NegativePattern& p) {
  return NegativePattern(p.positives());
}

Dataset parse_dataset(std::string_view text) {
  std::vector<Sequence> sequences;
  std::set<std::string> ids;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(start, end - start));
    ++line_no;
    start = end + 1;
    if (line.empty() || line.front() == '#') continue;

    Sequence s;
    if (auto colon = line.find(':'); colon != std::string_view::npos) {
      auto id = trim(line.substr(0, colon));
      if (!is_valid_item(id)) throw ParseError("invalid sequence id '" + std::string(id) + "'", line_no);
      s.id = std::string(id);
      line = line.substr(colon + 1);
      if (!ids.insert(s.id).second) throw ParseError("duplicate sequence id '" + s.id + "'", line_no);
    }
    try {
      s.itemsets = parse_sequence(line).itemsets;
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
    sequences.push_back(std::move(s));
  }
  if (sequences.empty()) throw ParseError("empty dataset");
  try {
    return Dataset(std::move(sequences));
  } catch (const ParseError& e) {
    // an auto-assigned id collided with an explicit one
    throw ParseError(e.what());
  }
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error("error reading '" + path.string() + "'");
  return parse_dataset(buf.str());
}

}  // namespace nsp
