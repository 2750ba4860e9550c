#include "nsp/miner.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_set>

#include "json.hpp"

namespace nsp {

namespace {

// Positions (0-based) where the last positive itemset of the current prefix
// can be matched, per sequence.
struct Projection {
  std::vector<std::vector<std::size_t>> ends;

  std::size_t support() const {
    return static_cast<std::size_t>(
        std::count_if(ends.begin(), ends.end(), [](const auto& e) { return !e.empty(); }));
  }
};

std::vector<std::string> supporting_ids(const Dataset& d, const Projection& proj) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < proj.ends.size(); ++i) {
    if (!proj.ends[i].empty()) ids.push_back(d.sequences()[i].id);
  }
  return ids;
}

class PrefixGrowth {
 public:
  PrefixGrowth(const Dataset& d, const MinerConfig& cfg)
      : d_(d), cfg_(cfg), items_(frequent_items(d, cfg.minsup)) {}

  std::vector<MinedPattern> run() {
    for (const auto& x : items_) {
      Projection proj;
      proj.ends.resize(d_.size());
      for (std::size_t i = 0; i < d_.size(); ++i) {
        const auto& s = d_.sequences()[i];
        for (std::size_t j = 0; j < s.size(); ++j) {
          if (s.itemsets[j].contains(x)) proj.ends[i].push_back(j);
        }
      }
      std::vector<Itemset> prefix{Itemset{x}};
      grow(prefix, proj);
    }
    sort_canonical(out_);
    return std::move(out_);
  }

 private:
  void grow(std::vector<Itemset>& prefix, const Projection& proj) {
    const std::size_t sup = proj.support();
    if (sup < cfg_.minsup) return;
    out_.push_back({NegativePattern(prefix), sup, supporting_ids(d_, proj)});

    // itemset-extension: add an item greater than every item of the last itemset
    const Itemset last = prefix.back();
    if (last.size() < cfg_.max_itemset_size) {
      for (const auto& y : items_) {
        if (y <= last.items().back()) continue;
        Projection next;
        next.ends.resize(proj.ends.size());
        for (std::size_t i = 0; i < proj.ends.size(); ++i) {
          const auto& s = d_.sequences()[i];
          for (auto j : proj.ends[i]) {
            if (s.itemsets[j].contains(y)) next.ends[i].push_back(j);
          }
        }
        prefix.back() = last.with(y);
        grow(prefix, next);
      }
      prefix.back() = last;
    }

    // sequence-extension: a new singleton after the earliest end
    if (prefix.size() < cfg_.max_positive_length) {
      for (const auto& x : items_) {
        Projection next;
        next.ends.resize(proj.ends.size());
        for (std::size_t i = 0; i < proj.ends.size(); ++i) {
          if (proj.ends[i].empty()) continue;
          const auto& s = d_.sequences()[i];
          for (std::size_t j = proj.ends[i].front() + 1; j < s.size(); ++j) {
            if (s.itemsets[j].contains(x)) next.ends[i].push_back(j);
          }
        }
        prefix.push_back(Itemset{x});
        grow(prefix, next);
        prefix.pop_back();
      }
    }
  }

  const Dataset& d_;
  const MinerConfig& cfg_;
  std::vector<Item> items_;
  std::vector<MinedPattern> out_;
};

// Non-empty subsets of `items` with at most `k` elements: by size, then lexicographic.
std::vector<Itemset> bounded_subsets(const std::vector<Item>& items, std::size_t k) {
  std::vector<Itemset> out;
  std::vector<Item> current;
  std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t from, std::size_t size) {
    if (current.size() == size) {
      out.emplace_back(current);
      return;
    }
    for (std::size_t i = from; i < items.size(); ++i) {
      current.push_back(items[i]);
      pick(i + 1, size);
      current.pop_back();
    }
  };
  for (std::size_t size = 1; size <= std::min(k, items.size()); ++size) pick(0, size);
  return out;
}

std::size_t negated_item_count(const NegativePattern& p) {
  std::size_t n = 0;
  for (const auto& q : p.negatives()) n += q.size();
  return n;
}

// Support restricted to the sequences already known to contain the positive part.
MinedPattern count_over(const Dataset& d, const std::vector<std::size_t>& candidates,
                        const NegativePattern& p, const SemanticsConfig& c) {
  MinedPattern mp{p, 0, {}};
  for (auto i : candidates) {
    const auto& s = d.sequences()[i];
    if (is_contained(s, p, c)) {
      ++mp.support;
      mp.ids.push_back(s.id);
    }
  }
  return mp;
}

std::vector<std::size_t> indices_of(const Dataset& d, const std::vector<std::string>& ids) {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t i = 0; i < d.size() && k < ids.size(); ++i) {
    if (d.sequences()[i].id == ids[k]) {
      out.push_back(i);
      ++k;
    }
  }
  return out;
}

}  // namespace

void validate(const MinerConfig& cfg, const Dataset& /*d*/) {
  if (cfg.minsup == 0) throw std::invalid_argument("minsup must be at least 1");
  if (cfg.max_positive_length == 0) throw std::invalid_argument("max positive length must be at least 1");
  if (cfg.max_itemset_size == 0) throw std::invalid_argument("max itemset size must be at least 1");
}

void sort_canonical(std::vector<MinedPattern>& patterns) {
  std::vector<std::pair<std::string, std::size_t>> keys;
  keys.reserve(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) keys.emplace_back(format_pattern(patterns[i].pattern), i);
  std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
    const auto la = patterns[a.second].pattern.length();
    const auto lb = patterns[b.second].pattern.length();
    if (la != lb) return la < lb;
    return a.first < b.first;
  });
  std::vector<MinedPattern> sorted;
  sorted.reserve(patterns.size());
  for (const auto& [key, i] : keys) sorted.push_back(std::move(patterns[i]));
  patterns = std::move(sorted);
}

std::vector<Item> frequent_items(const Dataset& d, std::size_t minsup) {
  std::map<Item, std::size_t> counts;
  for (const auto& s : d.sequences()) {
    Itemset seen;
    for (const auto& itemset : s.itemsets) seen = seen.union_with(itemset);
    for (const auto& x : seen) ++counts[x];
  }
  std::vector<Item> out;
  for (const auto& [x, n] : counts) {
    if (n >= minsup) out.push_back(x);
  }
  return out;
}

std::vector<MinedPattern> mine_positive(const Dataset& d, const MinerConfig& cfg) {
  validate(cfg, d);
  return PrefixGrowth(d, cfg).run();
}

std::vector<NegativePattern> generate_negation_candidates(const NegativePattern& p,
                                                          const std::vector<Item>& frequent,
                                                          const MinerConfig& cfg) {
  std::vector<NegativePattern> out;
  const std::size_t slots = p.length() - 1;
  if (slots == 0 || cfg.max_negation_size == 0 || frequent.empty()) return out;

  std::vector<Itemset> options{Itemset{}};
  for (auto& q : bounded_subsets(frequent, cfg.max_negation_size)) options.push_back(std::move(q));

  std::vector<Itemset> negatives(slots);
  std::function<void(std::size_t, bool)> fill = [&](std::size_t k, bool any) {
    if (k == slots) {
      if (any) out.emplace_back(p.positives(), negatives);
      return;
    }
    for (std::size_t c = 0; c < options.size(); ++c) {
      negatives[k] = options[c];
      fill(k + 1, any || c > 0);
    }
  };
  fill(0, false);
  std::stable_sort(out.begin(), out.end(), [](const NegativePattern& a, const NegativePattern& b) {
    return negated_item_count(a) < negated_item_count(b);
  });
  return out;
}

std::vector<MinedPattern> mine_negative(const Dataset& d, const MinerConfig& cfg) {
  auto positives = mine_positive(d, cfg);
  const auto items = frequent_items(d, cfg.minsup);
  const bool prune = cfg.prune_negations && cfg.semantics.non_inclusion == NonInclusion::Total &&
                     cfg.semantics.occurrence == OccurrenceMode::Weak;

  std::vector<MinedPattern> out;
  for (auto& base : positives) {
    const auto rows = indices_of(d, base.ids);
    std::unordered_set<std::string> infrequent;
    for (auto& candidate : generate_negation_candidates(base.pattern, items, cfg)) {
      if (prune) {
        bool pruned = false;
        for (std::size_t k = 0; k < candidate.negatives().size() && !pruned; ++k) {
          for (const auto& x : candidate.negatives()[k]) {
            auto negatives = candidate.negatives();
            std::vector<Item> rest;
            for (const auto& y : negatives[k]) {
              if (y != x) rest.push_back(y);
            }
            negatives[k] = Itemset(std::move(rest));
            NegativePattern sub(candidate.positives(), std::move(negatives));
            if (!sub.is_positive() && infrequent.count(format_pattern(sub)) > 0) {
              pruned = true;
              break;
            }
          }
        }
        if (pruned) {
          infrequent.insert(format_pattern(candidate));
          continue;
        }
      }
      auto mined = count_over(d, rows, candidate, cfg.semantics);
      if (mined.support >= cfg.minsup) {
        out.push_back(std::move(mined));
      } else if (prune) {
        infrequent.insert(format_pattern(candidate));
      }
    }
    out.push_back(std::move(base));
  }
  sort_canonical(out);
  return out;
}

std::vector<MinedPattern> brute_force_mine(const Dataset& d, const MinerConfig& cfg) {
  validate(cfg, d);
  if (cfg.minsup > d.size()) return {};
  // Item frequencies counted directly, independent of frequent_items().
  std::vector<Item> negatable;
  for (const auto& x : d.alphabet()) {
    std::size_t n = 0;
    for (const auto& s : d.sequences()) {
      if (std::any_of(s.itemsets.begin(), s.itemsets.end(), [&](const Itemset& i) { return i.contains(x); })) ++n;
    }
    if (n >= cfg.minsup) negatable.push_back(x);
  }

  // every non-empty subset of the alphabet up to the size cap, via bitmasks
  auto subsets = [](const std::vector<Item>& items, std::size_t cap) {
    std::vector<Itemset> out;
    if (items.size() >= 20) throw BudgetExceeded("alphabet too large for brute-force enumeration");
    for (unsigned mask = 1; mask < (1u << items.size()); ++mask) {
      std::vector<Item> chosen;
      for (std::size_t b = 0; b < items.size(); ++b) {
        if (mask & (1u << b)) chosen.push_back(items[b]);
      }
      if (chosen.size() <= cap) out.emplace_back(std::move(chosen));
    }
    return out;
  };
  const auto itemsets = subsets(d.alphabet().items(), cfg.max_itemset_size);
  std::vector<Itemset> slot_options{Itemset{}};
  if (cfg.max_negation_size > 0) {
    for (auto& q : subsets(negatable, cfg.max_negation_size)) slot_options.push_back(std::move(q));
  }

  std::size_t evaluated = 0;
  auto charge = [&](std::size_t n) {
    evaluated += n;
    if (evaluated > cfg.brute_force_budget) {
      throw BudgetExceeded("brute-force enumeration exceeded budget of " +
                           std::to_string(cfg.brute_force_budget) + " candidates");
    }
  };

  std::vector<MinedPattern> out;
  std::vector<Itemset> positives;
  // A sequence containing p also contains p's positive part, so negation
  // slots are only enumerated below frequent positive parts.
  std::function<void()> extend = [&]() {
    if (!positives.empty()) {
      charge(1);
      NegativePattern base(positives);
      auto sup = support(d, base, cfg.semantics);
      if (sup.count >= cfg.minsup) out.push_back({base, sup.count, sup.ids});

      const std::size_t slots = positives.size() - 1;
      std::vector<std::size_t> choice(slots, 0);
      std::function<void(std::size_t)> fill = [&](std::size_t k) {
        if (k == slots) {
          if (std::all_of(choice.begin(), choice.end(), [](std::size_t c) { return c == 0; })) return;
          charge(1);
          std::vector<Itemset> negatives;
          for (auto c : choice) negatives.push_back(slot_options[c]);
          NegativePattern p(positives, std::move(negatives));
          auto s = support(d, p, cfg.semantics);
          if (s.count >= cfg.minsup) out.push_back({p, s.count, s.ids});
          return;
        }
        for (std::size_t c = 0; c < slot_options.size(); ++c) {
          choice[k] = c;
          fill(k + 1);
        }
        choice[k] = 0;
      };
      if (sup.count >= cfg.minsup) fill(0);
    }
    if (positives.size() == cfg.max_positive_length) return;
    for (const auto& itemset : itemsets) {
      positives.push_back(itemset);
      extend();
      positives.pop_back();
    }
  };
  extend();
  sort_canonical(out);
  return out;
}

std::string to_tsv(const std::vector<MinedPattern>& patterns) {
  std::string out;
  for (const auto& mp : patterns) {
    out += format_pattern(mp.pattern);
    out += '\t';
    out += std::to_string(mp.support);
    out += '\t';
    for (std::size_t i = 0; i < mp.ids.size(); ++i) {
      if (i > 0) out += ',';
      out += mp.ids[i];
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const std::vector<MinedPattern>& patterns) {
  auto arr = nlohmann::json::array();
  for (const auto& mp : patterns) {
    arr.push_back({{"pattern", format_pattern(mp.pattern)}, {"support", mp.support}, {"ids", mp.ids}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace nsp
