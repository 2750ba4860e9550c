#include "nsp/matcher.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace nsp {

namespace {

enum class Goal {
  Any,           // any positive embedding
  AllSatisfy,    // every negation slot satisfied
  AnyViolate,    // at least one slot violated
};

// Gap-constraint tables and memoized lexicographic search over the positions
// of one sequence for one pattern. Positions are 0-based internally.
class Evaluator {
 public:
  Evaluator(const Sequence& s, const NegativePattern& p, NonInclusion non_incl, EmbeddingMode emb)
      : s_(s), p_(p), non_incl_(non_incl), emb_(emb), m_(p.length()), n_(s.size()),
        anchors_(m_ * n_), gap_rows_(m_ > 0 ? (m_ - 1) * n_ : 0) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        anchors_[i * n_ + j] = p.positives()[i].subset_of(s.itemsets[j]);
      }
    }
  }

  bool anchor(std::size_t i, std::size_t j) const { return anchors_[i * n_ + j] != 0; }

  // Slot `k` lies between anchors at positions a < b.
  bool gap_ok(std::size_t k, std::size_t a, std::size_t b) {
    if (p_.negatives()[k].empty()) return true;
    auto& row = gap_rows_[k * n_ + a];
    if (row.empty()) fill_gap_row(k, a, row);
    return row[b] != 0;
  }

  std::optional<std::vector<std::size_t>> search(Goal goal, std::size_t first_lo, std::size_t first_hi,
                                                 std::optional<std::size_t> last = std::nullopt) {
    if (m_ == 0 || n_ == 0) return std::nullopt;
    goal_ = goal;
    last_ = last;
    dead_.assign(m_ * n_ * 2, 0);
    path_.assign(m_, 0);
    for (std::size_t j = first_lo; j <= first_hi && j < n_; ++j) {
      if (!anchor(0, j)) continue;
      path_[0] = j;
      if (dfs(0, j, false)) return path_;
    }
    return std::nullopt;
  }

  // Earliest last position of an embedding starting at `a`, by greedy leftmost matching.
  std::optional<std::size_t> earliest_end(std::size_t a) const {
    if (!anchor(0, a)) return std::nullopt;
    std::size_t pos = a;
    for (std::size_t i = 1; i < m_; ++i) {
      std::size_t j = pos + 1;
      while (j < n_ && !anchor(i, j)) ++j;
      if (j >= n_) return std::nullopt;
      pos = j;
    }
    return pos;
  }

  // Extents [a, b] of minimal occurrences, increasing in both a and b.
  std::vector<std::pair<std::size_t, std::size_t>> minimal_windows() const {
    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    for (std::size_t a = 0; a < n_; ++a) {
      if (auto b = earliest_end(a)) candidates.emplace_back(a, *b);
    }
    // earliest_end is non-decreasing in a; a window is minimal unless the
    // next start reaches the same end.
    std::vector<std::pair<std::size_t, std::size_t>> windows;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (i + 1 < candidates.size() && candidates[i + 1].second == candidates[i].second) continue;
      windows.push_back(candidates[i]);
    }
    return windows;
  }

  void enumerate(std::size_t first_lo, std::size_t first_hi, std::optional<std::size_t> last,
                 const std::function<void(const std::vector<std::size_t>&)>& visit) {
    if (m_ == 0 || n_ == 0) return;
    goal_ = Goal::Any;
    last_ = last;
    dead_.assign(m_ * n_ * 2, 0);
    path_.assign(m_, 0);
    for (std::size_t j = first_lo; j <= first_hi && j < n_; ++j) {
      if (!anchor(0, j)) continue;
      path_[0] = j;
      enumerate_from(0, j, visit);
    }
  }

  std::size_t length() const { return m_; }
  std::size_t size() const { return n_; }

 private:
  void fill_gap_row(std::size_t k, std::size_t a, std::vector<char>& row) const {
    const Itemset& q = p_.negatives()[k];
    row.assign(n_, 0);
    bool broken = false;
    std::vector<char> seen(q.size(), 0);
    std::size_t seen_count = 0;
    for (std::size_t b = a + 1; b < n_; ++b) {
      // gap so far is the itemsets at a+1 .. b-1
      row[b] = broken ? 0 : 1;
      if (broken) continue;
      const Itemset& gap_itemset = s_.itemsets[b];
      if (non_incl_ == NonInclusion::Total) {
        broken = !non_inclusion(q, gap_itemset, NonInclusion::Total);
      } else if (emb_ == EmbeddingMode::Soft) {
        broken = !non_inclusion(q, gap_itemset, NonInclusion::Partial);
      } else {
        for (std::size_t x = 0; x < q.size(); ++x) {
          if (!seen[x] && gap_itemset.contains(q.items()[x])) {
            seen[x] = 1;
            ++seen_count;
          }
        }
        broken = seen_count == q.size();
      }
    }
  }

  bool dfs(std::size_t i, std::size_t pos, bool violated) {
    if (i + 1 == m_) {
      if (last_ && pos != *last_) return false;
      return goal_ != Goal::AnyViolate || violated;
    }
    char& dead = dead_[(i * n_ + pos) * 2 + (violated ? 1 : 0)];
    if (dead) return false;
    const std::size_t hi = last_ ? *last_ : n_ - 1;
    for (std::size_t j = pos + 1; j <= hi; ++j) {
      if (!anchor(i + 1, j)) continue;
      const bool ok = gap_ok(i, pos, j);
      if (goal_ == Goal::AllSatisfy && !ok) continue;
      const bool next_violated = goal_ == Goal::AnyViolate && (violated || !ok);
      path_[i + 1] = j;
      if (dfs(i + 1, j, next_violated)) return true;
    }
    dead = 1;
    return false;
  }

  // Returns whether any completion exists; dead states are memoized so that
  // enumeration cost is proportional to the output.
  bool enumerate_from(std::size_t i, std::size_t pos,
                      const std::function<void(const std::vector<std::size_t>&)>& visit) {
    if (i + 1 == m_) {
      if (last_ && pos != *last_) return false;
      visit(path_);
      return true;
    }
    char& dead = dead_[i * n_ + pos];
    if (dead) return false;
    const std::size_t hi = last_ ? *last_ : n_ - 1;
    bool any = false;
    for (std::size_t j = pos + 1; j <= hi; ++j) {
      if (!anchor(i + 1, j)) continue;
      path_[i + 1] = j;
      any = enumerate_from(i + 1, j, visit) || any;
    }
    if (!any) dead = 1;
    return any;
  }

  const Sequence& s_;
  const NegativePattern& p_;
  NonInclusion non_incl_;
  EmbeddingMode emb_;
  std::size_t m_;
  std::size_t n_;
  std::vector<char> anchors_;
  std::vector<std::vector<char>> gap_rows_;

  Goal goal_ = Goal::Any;
  std::optional<std::size_t> last_;
  std::vector<char> dead_;
  std::vector<std::size_t> path_;
};

Embedding to_embedding(const std::vector<std::size_t>& zero_based) {
  Embedding e;
  e.positions.reserve(zero_based.size());
  for (auto pos : zero_based) e.positions.push_back(pos + 1);
  return e;
}

std::optional<Embedding> to_embedding(const std::optional<std::vector<std::size_t>>& path) {
  if (!path) return std::nullopt;
  return to_embedding(*path);
}

}  // namespace

std::string format_embedding(const Embedding& e) {
  std::string out = "(";
  for (std::size_t i = 0; i < e.positions.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(e.positions[i]);
  }
  return out + ")";
}

std::vector<Embedding> positive_embeddings(const Sequence& s, const NegativePattern& p) {
  std::vector<Embedding> out;
  Evaluator ev(s, p, NonInclusion::Total, EmbeddingMode::Soft);
  ev.enumerate(0, s.size(), std::nullopt,
               [&](const std::vector<std::size_t>& path) { out.push_back(to_embedding(path)); });
  return out;
}

bool non_inclusion(const Itemset& q, const Itemset& i, NonInclusion mode) {
  if (q.empty()) return true;
  if (mode == NonInclusion::Partial) return !q.subset_of(i);
  return std::none_of(q.begin(), q.end(), [&](const Item& x) { return i.contains(x); });
}

bool embedding_satisfies(const Sequence& s, const NegativePattern& p, const Embedding& e,
                         NonInclusion non_incl, EmbeddingMode emb) {
  const auto& pos = e.positions;
  if (pos.size() != p.length()) throw std::invalid_argument("embedding length does not match pattern");
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (pos[i] < 1 || pos[i] > s.size()) throw std::invalid_argument("embedding position out of range");
    if (i > 0 && pos[i] <= pos[i - 1]) throw std::invalid_argument("embedding positions not increasing");
    if (!p.positives()[i].subset_of(s.at(pos[i]))) {
      throw std::invalid_argument("embedding does not match positive itemset " + std::to_string(i + 1));
    }
  }
  for (std::size_t k = 0; k + 1 < pos.size(); ++k) {
    const Itemset& q = p.negatives()[k];
    if (q.empty()) continue;
    if (emb == EmbeddingMode::Soft) {
      for (std::size_t j = pos[k] + 1; j < pos[k + 1]; ++j) {
        if (!non_inclusion(q, s.at(j), non_incl)) return false;
      }
    } else {
      Itemset gap;
      for (std::size_t j = pos[k] + 1; j < pos[k + 1]; ++j) gap = gap.union_with(s.at(j));
      if (!non_inclusion(q, gap, non_incl)) return false;
    }
  }
  return true;
}

std::vector<Embedding> minimal_embeddings(const Sequence& s, const NegativePattern& p) {
  std::vector<Embedding> out;
  Evaluator ev(s, p, NonInclusion::Total, EmbeddingMode::Soft);
  for (auto [a, b] : ev.minimal_windows()) {
    ev.enumerate(a, a, b,
                 [&](const std::vector<std::size_t>& path) { out.push_back(to_embedding(path)); });
  }
  return out;
}

MatchReport contains(const Sequence& s, const NegativePattern& p, const SemanticsConfig& c) {
  MatchReport report;
  Evaluator ev(s, p, c.non_inclusion, c.embedding);
  const std::size_t last = s.size() == 0 ? 0 : s.size() - 1;
  switch (c.occurrence) {
    case OccurrenceMode::Weak: {
      report.witness = to_embedding(ev.search(Goal::AllSatisfy, 0, last));
      report.contained = report.witness.has_value();
      break;
    }
    case OccurrenceMode::Strong: {
      auto any = ev.search(Goal::Any, 0, last);
      if (!any) break;
      report.violating = to_embedding(ev.search(Goal::AnyViolate, 0, last));
      report.contained = !report.violating;
      if (report.contained) report.witness = to_embedding(*any);
      break;
    }
    case OccurrenceMode::StrongMinimal: {
      const auto windows = ev.minimal_windows();
      if (windows.empty()) break;
      for (auto [a, b] : windows) {
        if (auto v = ev.search(Goal::AnyViolate, a, a, b)) {
          report.violating = to_embedding(*v);
          return report;
        }
      }
      report.contained = true;
      report.witness = to_embedding(ev.search(Goal::Any, windows.front().first,
                                              windows.front().first, windows.front().second));
      break;
    }
  }
  return report;
}

bool is_contained(const Sequence& s, const NegativePattern& p, const SemanticsConfig& c) {
  return contains(s, p, c).contained;
}

SupportResult support(const Dataset& d, const NegativePattern& p, const SemanticsConfig& c) {
  SupportResult result;
  for (const auto& s : d.sequences()) {
    if (is_contained(s, p, c)) {
      ++result.count;
      result.ids.push_back(s.id);
    }
  }
  return result;
}

}  // namespace nsp
