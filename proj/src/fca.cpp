#include "nsp/fca.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace nsp::fca {

namespace {

// Fixed-width bit rows for the closure computations.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n, bool value = false)
      : n_(n), words_((n + 63) / 64, value ? ~std::uint64_t{0} : 0) {
    trim();
  }

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }

  Bits& operator&=(const Bits& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }

  // Equal on the bits below `i`.
  bool same_prefix(const Bits& o, std::size_t i) const {
    const std::size_t full = i / 64;
    for (std::size_t w = 0; w < full; ++w) {
      if (words_[w] != o.words_[w]) return false;
    }
    if (i % 64 == 0) return true;
    const std::uint64_t mask = (std::uint64_t{1} << (i % 64)) - 1;
    return (words_[full] & mask) == (o.words_[full] & mask);
  }

  // Keeps only bits below `i`.
  void truncate(std::size_t i) {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (w * 64 >= i) {
        words_[w] = 0;
      } else if (w * 64 + 64 > i) {
        words_[w] &= (std::uint64_t{1} << (i - w * 64)) - 1;
      }
    }
  }

  IndexSet indices() const {
    IndexSet out;
    for (std::size_t i = 0; i < n_; ++i) {
      if (test(i)) out.push_back(i);
    }
    return out;
  }

 private:
  void trim() {
    if (n_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitContext {
  std::size_t n_objects;
  std::size_t n_attributes;
  std::vector<Bits> rows;  // per object, over attributes
  std::vector<Bits> cols;  // per attribute, over objects

  explicit BitContext(const BinaryContext& ctx)
      : n_objects(ctx.objects().size()), n_attributes(ctx.attributes().size()),
        rows(n_objects, Bits(n_attributes)), cols(n_attributes, Bits(n_objects)) {
    for (std::size_t o = 0; o < n_objects; ++o) {
      for (std::size_t a = 0; a < n_attributes; ++a) {
        if (ctx.has(o, a)) {
          rows[o].set(a);
          cols[a].set(o);
        }
      }
    }
  }

  Bits extent(const Bits& attrs) const {
    Bits ext(n_objects, true);
    for (std::size_t a = 0; a < n_attributes; ++a) {
      if (attrs.test(a)) ext &= cols[a];
    }
    return ext;
  }

  Bits intent(const Bits& objs) const {
    Bits in(n_attributes, true);
    for (std::size_t o = 0; o < n_objects; ++o) {
      if (objs.test(o)) in &= rows[o];
    }
    return in;
  }
};

bool strict_subset(const IndexSet& a, const IndexSet& b) {
  return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::vector<std::string> names(const IndexSet& idx, const std::vector<std::string>& all) {
  std::vector<std::string> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(all[i]);
  return out;
}

}  // namespace

BinaryContext::BinaryContext(std::vector<std::string> objects, std::vector<std::string> attributes,
                             std::vector<std::vector<bool>> incidence)
    : objects_(std::move(objects)), attributes_(std::move(attributes)), incidence_(std::move(incidence)) {
  if (incidence_.size() != objects_.size()) throw std::invalid_argument("incidence rows do not match objects");
  for (const auto& row : incidence_) {
    if (row.size() != attributes_.size()) throw std::invalid_argument("incidence columns do not match attributes");
  }
  auto unique = [](const std::vector<std::string>& ids) {
    return std::set<std::string>(ids.begin(), ids.end()).size() == ids.size();
  };
  if (!unique(objects_)) throw std::invalid_argument("duplicate object id");
  if (!unique(attributes_)) throw std::invalid_argument("duplicate attribute id");
}

IndexSet BinaryContext::extent_of(const IndexSet& attrs) const {
  IndexSet out;
  for (std::size_t o = 0; o < objects_.size(); ++o) {
    if (std::all_of(attrs.begin(), attrs.end(), [&](std::size_t a) { return incidence_[o][a]; })) out.push_back(o);
  }
  return out;
}

IndexSet BinaryContext::intent_of(const IndexSet& objs) const {
  IndexSet out;
  for (std::size_t a = 0; a < attributes_.size(); ++a) {
    if (std::all_of(objs.begin(), objs.end(), [&](std::size_t o) { return incidence_[o][a]; })) out.push_back(a);
  }
  return out;
}

IndexSet closure(const IndexSet& attrs, const BinaryContext& ctx) {
  return ctx.intent_of(ctx.extent_of(attrs));
}

std::vector<Concept> enumerate_concepts(const BinaryContext& ctx, std::size_t budget) {
  const BitContext bits(ctx);
  const std::size_t m = bits.n_attributes;
  std::vector<Concept> out;

  auto emit = [&](const Bits& intent, const Bits& extent) {
    if (out.size() >= budget) {
      throw BudgetExceeded("concept enumeration exceeded budget of " + std::to_string(budget));
    }
    out.push_back({extent.indices(), intent.indices()});
  };

  Bits extent = bits.extent(Bits(m));
  Bits intent = bits.intent(extent);
  emit(intent, extent);

  // NextClosure: the lectically next closed set after `intent`.
  while (true) {
    bool advanced = false;
    for (std::size_t i = m; i-- > 0;) {
      if (intent.test(i)) continue;
      Bits candidate = intent;
      candidate.truncate(i);
      candidate.set(i);
      Bits next_extent = bits.extent(candidate);
      Bits next_intent = bits.intent(next_extent);
      if (next_intent.same_prefix(intent, i)) {
        intent = std::move(next_intent);
        extent = std::move(next_extent);
        emit(intent, extent);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return out;
}

Lattice lattice(std::vector<Concept> concepts) {
  Lattice l;
  l.concepts = std::move(concepts);
  const std::size_t n = l.concepts.size();
  for (std::size_t child = 0; child < n; ++child) {
    for (std::size_t parent = 0; parent < n; ++parent) {
      const auto& lo = l.concepts[child].extent;
      const auto& hi = l.concepts[parent].extent;
      if (!strict_subset(lo, hi)) continue;
      bool covered = true;
      for (std::size_t k = 0; k < n && covered; ++k) {
        const auto& mid = l.concepts[k].extent;
        if (strict_subset(lo, mid) && strict_subset(mid, hi)) covered = false;
      }
      if (covered) l.edges.emplace_back(parent, child);
    }
  }
  std::sort(l.edges.begin(), l.edges.end());
  return l;
}

std::string to_dot(const Lattice& l, const BinaryContext& ctx) {
  std::ostringstream out;
  out << "digraph lattice {\n  node [shape=box];\n";
  for (std::size_t i = 0; i < l.concepts.size(); ++i) {
    const auto& c = l.concepts[i];
    std::string intent;
    for (auto a : c.intent) {
      if (!intent.empty()) intent += ", ";
      intent += ctx.attributes()[a];
    }
    out << "  c" << i << " [label=\"{" << dot_escape(intent) << "}\\n#" << c.extent.size() << "\"];\n";
  }
  for (auto [parent, child] : l.edges) out << "  c" << parent << " -> c" << child << ";\n";
  out << "}\n";
  return out.str();
}

std::string to_json(const Lattice& l, const BinaryContext& ctx) {
  nlohmann::json j;
  j["concepts"] = nlohmann::json::array();
  for (std::size_t i = 0; i < l.concepts.size(); ++i) {
    const auto& c = l.concepts[i];
    j["concepts"].push_back({{"id", i},
                             {"intent", names(c.intent, ctx.attributes())},
                             {"extent", names(c.extent, ctx.objects())},
                             {"size", c.extent.size()}});
  }
  j["edges"] = nlohmann::json::array();
  for (auto [parent, child] : l.edges) j["edges"].push_back({{"parent", parent}, {"child", child}});
  return j.dump(2) + "\n";
}

BinaryContext context_from_responses(const std::vector<survey::Response>& rs, survey::QuestionId q) {
  const auto& table = survey::question(q).table.sequences();
  std::vector<std::string> attributes;
  for (const auto& s : table) attributes.push_back(s.id);
  for (const auto& s : table) attributes.push_back("n" + s.id);

  std::vector<std::string> objects;
  std::vector<std::vector<bool>> incidence;
  for (const auto& r : rs) {
    auto it = r.ticks.find(q);
    if (it == r.ticks.end()) {
      throw std::invalid_argument("response of '" + r.participant + "' has no answer to " + survey::to_string(q));
    }
    std::vector<bool> row(attributes.size(), false);
    for (std::size_t k = 0; k < table.size(); ++k) {
      const bool ticked = it->second.count(table[k].id) > 0;
      row[ticked ? k : table.size() + k] = true;
    }
    objects.push_back(r.participant);
    incidence.push_back(std::move(row));
  }
  return BinaryContext(std::move(objects), std::move(attributes), std::move(incidence));
}

BinaryContext parse_context_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> attributes;
  std::vector<std::string> objects;
  std::vector<std::vector<bool>> incidence;
  bool header = false;

  auto cells = [](const std::string& l) {
    std::vector<std::string> out;
    std::stringstream ss(l);
    for (std::string cell; std::getline(ss, cell, ',');) {
      cell.erase(0, cell.find_first_not_of(" \t\r"));
      cell.erase(cell.find_last_not_of(" \t\r") + 1);
      out.push_back(cell);
    }
    if (!l.empty() && l.back() == ',') out.emplace_back();
    return out;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto row = cells(line);
    if (!header) {
      if (row.empty() || row.front() != "object") throw ParseError("header must start with 'object'", line_no);
      attributes.assign(row.begin() + 1, row.end());
      header = true;
      continue;
    }
    if (row.size() != attributes.size() + 1) {
      throw ParseError("expected " + std::to_string(attributes.size() + 1) + " cells", line_no);
    }
    std::vector<bool> bits;
    for (std::size_t k = 1; k < row.size(); ++k) {
      if (row[k] == "1") bits.push_back(true);
      else if (row[k] == "0") bits.push_back(false);
      else throw ParseError("cells must be 0 or 1, got '" + row[k] + "'", line_no);
    }
    objects.push_back(row.front());
    incidence.push_back(std::move(bits));
  }
  if (!header) throw ParseError("empty context file");
  try {
    return BinaryContext(std::move(objects), std::move(attributes), std::move(incidence));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

BinaryContext load_context(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_context_csv(buf.str());
}

}  // namespace nsp::fca
