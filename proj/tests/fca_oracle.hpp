#pragma once

// Brute-force concept enumeration over bitmasks, for small contexts only
// (at most 32 objects and 20 attributes).

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "nsp/fca.hpp"

namespace oracle {

using Mask = std::uint32_t;

struct MaskContext {
  std::size_t objects = 0;
  std::size_t attributes = 0;
  std::vector<Mask> rows;  // attribute mask per object

  Mask extent(Mask attrs) const {
    Mask out = 0;
    for (std::size_t o = 0; o < objects; ++o) {
      if ((rows[o] & attrs) == attrs) out |= Mask{1} << o;
    }
    return out;
  }
  Mask intent(Mask objs) const {
    Mask out = attributes == 32 ? ~Mask{0} : (Mask{1} << attributes) - 1;
    for (std::size_t o = 0; o < objects; ++o) {
      if (objs >> o & 1) out &= rows[o];
    }
    return out;
  }

  nsp::fca::BinaryContext to_context() const {
    std::vector<std::string> objs, attrs;
    for (std::size_t o = 0; o < objects; ++o) objs.push_back("o" + std::to_string(o));
    for (std::size_t a = 0; a < attributes; ++a) attrs.push_back("a" + std::to_string(a));
    std::vector<std::vector<bool>> inc(objects, std::vector<bool>(attributes));
    for (std::size_t o = 0; o < objects; ++o) {
      for (std::size_t a = 0; a < attributes; ++a) inc[o][a] = rows[o] >> a & 1;
    }
    return nsp::fca::BinaryContext(objs, attrs, inc);
  }
};

// (extent, intent) of every concept: every attribute set whose double
// derivation returns it.
inline std::set<std::pair<Mask, Mask>> all_concepts(const MaskContext& c) {
  std::set<std::pair<Mask, Mask>> out;
  for (Mask s = 0; s < (Mask{1} << c.attributes); ++s) {
    const Mask e = c.extent(s);
    if (c.intent(e) == s) out.insert({e, s});
  }
  return out;
}

inline Mask to_mask(const nsp::fca::IndexSet& xs) {
  Mask m = 0;
  for (auto x : xs) m |= Mask{1} << x;
  return m;
}

inline bool strict_subset(Mask a, Mask b) { return a != b && (a & b) == a; }

// Transitive reduction of strict extent inclusion, as (larger, smaller) extent pairs.
inline std::set<std::pair<Mask, Mask>> covering(const std::set<std::pair<Mask, Mask>>& concepts) {
  std::vector<Mask> extents;
  for (const auto& [e, i] : concepts) extents.push_back(e);
  std::set<std::pair<Mask, Mask>> out;
  for (Mask big : extents) {
    for (Mask small : extents) {
      if (!strict_subset(small, big)) continue;
      bool direct = true;
      for (Mask mid : extents) {
        if (strict_subset(small, mid) && strict_subset(mid, big)) {
          direct = false;
          break;
        }
      }
      if (direct) out.insert({big, small});
    }
  }
  return out;
}

// Compares the library's concepts and lattice edges against the brute force.
inline bool lattice_matches(const MaskContext& c) {
  const auto ctx = c.to_context();
  const auto concepts = nsp::fca::enumerate_concepts(ctx);
  std::set<std::pair<Mask, Mask>> got;
  for (const auto& k : concepts) got.insert({to_mask(k.extent), to_mask(k.intent)});
  const auto expected = all_concepts(c);
  if (got != expected || got.size() != concepts.size()) return false;

  const auto l = nsp::fca::lattice(concepts);
  std::set<std::pair<Mask, Mask>> edges;
  for (auto [p, ch] : l.edges) edges.insert({to_mask(l.concepts[p].extent), to_mask(l.concepts[ch].extent)});
  return edges.size() == l.edges.size() && edges == covering(expected);
}

}  // namespace oracle
