#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nsp/survey.hpp"

namespace nsp::fca {

/// Sorted, duplicate-free indices into a context's objects or attributes.
using IndexSet = std::vector<std::size_t>;

class BinaryContext {
 public:
  BinaryContext() = default;
  /// `incidence[o][a]` tells whether object o has attribute a. Throws
  /// std::invalid_argument on duplicate ids or mismatched dimensions.
  BinaryContext(std::vector<std::string> objects, std::vector<std::string> attributes,
                std::vector<std::vector<bool>> incidence);

  const std::vector<std::string>& objects() const noexcept { return objects_; }
  const std::vector<std::string>& attributes() const noexcept { return attributes_; }
  bool has(std::size_t object, std::size_t attribute) const { return incidence_[object][attribute]; }

  /// Objects having every attribute in `attrs`.
  IndexSet extent_of(const IndexSet& attrs) const;
  /// Attributes shared by every object in `objs`.
  IndexSet intent_of(const IndexSet& objs) const;

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> attributes_;
  std::vector<std::vector<bool>> incidence_;
};

struct Concept {
  IndexSet extent;
  IndexSet intent;

  friend bool operator==(const Concept&, const Concept&) = default;
};

IndexSet closure(const IndexSet& attrs, const BinaryContext& ctx);

/// All formal concepts, in lectic order of their intents (NextClosure).
/// Throws BudgetExceeded past `budget` concepts.
std::vector<Concept> enumerate_concepts(const BinaryContext& ctx, std::size_t budget = 1'000'000);

struct Lattice {
  std::vector<Concept> concepts;
  /// (parent, child) index pairs: the covering relation of extent inclusion,
  /// the parent having the larger extent.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

Lattice lattice(std::vector<Concept> concepts);

std::string to_dot(const Lattice& l, const BinaryContext& ctx);
std::string to_json(const Lattice& l, const BinaryContext& ctx);

/// One object per participant; attributes `x` (ticked) then `nx` (not ticked)
/// for every sequence x of the question's table.
BinaryContext context_from_responses(const std::vector<survey::Response>& rs, survey::QuestionId q);

/// Header `object,<attr>,...`; each row an object id followed by 0/1 cells.
BinaryContext parse_context_csv(std::string_view text);
BinaryContext load_context(const std::filesystem::path& path);

}  // namespace nsp::fca
