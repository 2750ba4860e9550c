#pragma once

// Reference implementations used only by tests. They work directly from the
// definitions on plain std::set values and share no code with the library's
// matcher or miner.

#include <algorithm>
#include <cstddef>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nsp/core.hpp"

namespace oracle {

using Set = std::set<std::string>;
using Positions = std::vector<std::size_t>;  // 1-based

inline Set to_set(const nsp::Itemset& i) { return Set(i.begin(), i.end()); }

inline bool subset(const Set& a, const Set& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Every strictly increasing m-tuple of positions in [1, n], lexicographic.
inline std::vector<Positions> all_tuples(std::size_t m, std::size_t n) {
  std::vector<Positions> out;
  Positions cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (cur.size() == m) {
      out.push_back(cur);
      return;
    }
    for (std::size_t j = from; j <= n; ++j) {
      cur.push_back(j);
      self(self, j + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

inline std::vector<Positions> embeddings(const nsp::Sequence& s, const nsp::NegativePattern& p) {
  std::vector<Positions> out;
  for (auto& t : all_tuples(p.length(), s.size())) {
    bool ok = true;
    for (std::size_t i = 0; i < t.size() && ok; ++i) {
      ok = subset(to_set(p.positives()[i]), to_set(s.itemsets[t[i] - 1]));
    }
    if (ok) out.push_back(t);
  }
  return out;
}

inline bool non_incl(const Set& q, const Set& i, bool total) {
  if (q.empty()) return true;
  if (total) {
    for (const auto& x : q) {
      if (i.count(x)) return false;
    }
    return true;
  }
  for (const auto& x : q) {
    if (!i.count(x)) return true;
  }
  return false;
}

inline bool satisfies(const nsp::Sequence& s, const nsp::NegativePattern& p, const Positions& e,
                      nsp::NonInclusion ni, nsp::EmbeddingMode em) {
  const bool total = ni == nsp::NonInclusion::Total;
  for (std::size_t k = 0; k + 1 < e.size(); ++k) {
    const Set q = to_set(p.negatives()[k]);
    if (q.empty()) continue;
    if (em == nsp::EmbeddingMode::Soft) {
      for (std::size_t j = e[k] + 1; j < e[k + 1]; ++j) {
        if (!non_incl(q, to_set(s.itemsets[j - 1]), total)) return false;
      }
    } else {
      Set gap;
      for (std::size_t j = e[k] + 1; j < e[k + 1]; ++j) {
        for (const auto& x : s.itemsets[j - 1]) gap.insert(x);
      }
      if (!non_incl(q, gap, total)) return false;
    }
  }
  return true;
}

inline std::vector<Positions> minimal(const std::vector<Positions>& all) {
  std::vector<Positions> out;
  for (const auto& e : all) {
    bool is_min = true;
    for (const auto& f : all) {
      const bool inside = e.front() <= f.front() && f.back() <= e.back();
      const bool same = e.front() == f.front() && e.back() == f.back();
      if (inside && !same) {
        is_min = false;
        break;
      }
    }
    if (is_min) out.push_back(e);
  }
  return out;
}

inline bool contains(const nsp::Sequence& s, const nsp::NegativePattern& p, const nsp::SemanticsConfig& c) {
  const auto all = embeddings(s, p);
  auto sat = [&](const Positions& e) { return satisfies(s, p, e, c.non_inclusion, c.embedding); };
  switch (c.occurrence) {
    case nsp::OccurrenceMode::Weak: return std::any_of(all.begin(), all.end(), sat);
    case nsp::OccurrenceMode::Strong: return !all.empty() && std::all_of(all.begin(), all.end(), sat);
    case nsp::OccurrenceMode::StrongMinimal: {
      const auto mins = minimal(all);
      return !mins.empty() && std::all_of(mins.begin(), mins.end(), sat);
    }
  }
  return false;
}

inline std::size_t support(const nsp::Dataset& d, const nsp::NegativePattern& p, const nsp::SemanticsConfig& c) {
  std::size_t n = 0;
  for (const auto& s : d.sequences()) n += oracle::contains(s, p, c) ? 1 : 0;
  return n;
}

// Random data over the first `alphabet` letters of a..z.
struct Generator {
  std::mt19937 rng;
  explicit Generator(unsigned seed) : rng(seed) {}

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }

  nsp::Itemset itemset(std::size_t alphabet, std::size_t max_size) {
    std::vector<std::string> items;
    const std::size_t size = uniform(1, max_size);
    while (items.size() < size) {
      std::string x(1, static_cast<char>('a' + uniform(0, alphabet - 1)));
      if (std::find(items.begin(), items.end(), x) == items.end()) items.push_back(x);
    }
    return nsp::Itemset(items);
  }

  nsp::Sequence sequence(std::size_t alphabet, std::size_t max_len, std::size_t max_itemset) {
    nsp::Sequence s;
    const std::size_t len = uniform(1, max_len);
    for (std::size_t i = 0; i < len; ++i) s.itemsets.push_back(itemset(alphabet, max_itemset));
    return s;
  }

  nsp::Dataset dataset(std::size_t max_sequences, std::size_t alphabet, std::size_t max_len,
                       std::size_t max_itemset) {
    std::vector<nsp::Sequence> seqs;
    const std::size_t n = uniform(2, max_sequences);
    for (std::size_t i = 0; i < n; ++i) seqs.push_back(sequence(alphabet, max_len, max_itemset));
    return nsp::Dataset(std::move(seqs));
  }

  nsp::NegativePattern pattern(std::size_t alphabet, std::size_t max_len, std::size_t max_itemset,
                               std::size_t max_negation) {
    const std::size_t len = uniform(1, max_len);
    std::vector<nsp::Itemset> pos;
    std::vector<nsp::Itemset> neg;
    for (std::size_t i = 0; i < len; ++i) {
      pos.push_back(itemset(alphabet, max_itemset));
      if (i + 1 < len) neg.push_back(uniform(0, 2) == 0 ? nsp::Itemset{} : itemset(alphabet, max_negation));
    }
    return nsp::NegativePattern(std::move(pos), std::move(neg));
  }
};

}  // namespace oracle
