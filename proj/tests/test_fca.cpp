#include <doctest.h>

#include <random>

#include "fca_oracle.hpp"
#include "nsp/fca.hpp"

using namespace nsp;
using namespace nsp::fca;

namespace {

BinaryContext toy() {
  return BinaryContext({"o1", "o2", "o3"}, {"a", "b"}, {{true, false}, {false, true}, {true, true}});
}

}  // namespace

TEST_CASE("derivation operators") {
  const auto c = toy();
  CHECK(c.extent_of({0}) == IndexSet{0, 2});
  CHECK(c.extent_of({}) == IndexSet{0, 1, 2});
  CHECK(c.intent_of({2}) == IndexSet{0, 1});
  CHECK(c.intent_of({}) == IndexSet{0, 1});
  CHECK(closure({0}, c) == IndexSet{0});
  CHECK_THROWS_AS(BinaryContext({"x", "x"}, {"a"}, {{true}, {false}}), std::invalid_argument);
  CHECK_THROWS_AS(BinaryContext({"x"}, {"a", "b"}, {{true}}), std::invalid_argument);
}

TEST_CASE("toy lattice is a diamond") {
  const auto c = toy();
  const auto concepts = enumerate_concepts(c);
  std::vector<IndexSet> intents;
  for (const auto& k : concepts) intents.push_back(k.intent);
  CHECK(intents == std::vector<IndexSet>{{}, {1}, {0}, {0, 1}});
  for (const auto& k : concepts) {
    CHECK(c.extent_of(k.intent) == k.extent);
    CHECK(c.intent_of(k.extent) == k.intent);
  }
  const auto l = lattice(concepts);
  CHECK(l.edges.size() == 4);
  CHECK(l.edges == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("degenerate contexts") {
  SUBCASE("chain") {
    BinaryContext c({"o1", "o2", "o3"}, {"a", "b", "c"},
                    {{true, false, false}, {true, true, false}, {true, true, true}});
    const auto l = lattice(enumerate_concepts(c));
    REQUIRE(l.concepts.size() == 3);
    CHECK(l.edges.size() == 2);
  }
  SUBCASE("no objects") {
    BinaryContext c({}, {"a", "b"}, {});
    const auto cs = enumerate_concepts(c);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].intent == IndexSet{0, 1});
    CHECK(cs[0].extent.empty());
  }
  SUBCASE("duplicate rows") {
    BinaryContext c({"o1", "o2"}, {"a", "b"}, {{true, false}, {true, false}});
    const auto cs = enumerate_concepts(c);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].extent == IndexSet{0, 1});
    CHECK(cs[0].intent == IndexSet{0});
  }
  SUBCASE("budget") {
    std::vector<std::vector<bool>> inc(8, std::vector<bool>(8, true));
    for (std::size_t i = 0; i < 8; ++i) inc[i][i] = false;
    std::vector<std::string> objs, attrs;
    for (int i = 0; i < 8; ++i) {
      objs.push_back("o" + std::to_string(i));
      attrs.push_back("a" + std::to_string(i));
    }
    BinaryContext c(objs, attrs, inc);
    CHECK(enumerate_concepts(c).size() == 256);
    CHECK_THROWS_AS(enumerate_concepts(c, 100), BudgetExceeded);
  }
}

TEST_CASE("concepts and edges agree with brute force on random contexts") {
  std::mt19937 rng(3);
  for (int round = 0; round < 300; ++round) {
    oracle::MaskContext c;
    c.objects = rng() % 9;
    c.attributes = 1 + rng() % 9;
    for (std::size_t o = 0; o < c.objects; ++o) c.rows.push_back(rng() & ((1u << c.attributes) - 1));
    CHECK(oracle::lattice_matches(c));
  }
}

TEST_CASE("derivation is antitone and closure is extensive") {
  std::mt19937 rng(8);
  for (int round = 0; round < 200; ++round) {
    oracle::MaskContext m;
    m.objects = 1 + rng() % 7;
    m.attributes = 1 + rng() % 7;
    for (std::size_t o = 0; o < m.objects; ++o) m.rows.push_back(rng() & ((1u << m.attributes) - 1));
    const auto c = m.to_context();
    IndexSet small, big;
    for (std::size_t a = 0; a < m.attributes; ++a) {
      const auto r = rng() % 3;
      if (r == 0) small.push_back(a);
      if (r != 2) big.push_back(a);
    }
    CHECK((oracle::to_mask(c.extent_of(big)) & ~oracle::to_mask(c.extent_of(small))) == 0);
    const auto cl = closure(small, c);
    CHECK((oracle::to_mask(small) & ~oracle::to_mask(cl)) == 0);
    CHECK(closure(cl, c) == cl);
  }
}

TEST_CASE("export formats") {
  const auto c = toy();
  const auto l = lattice(enumerate_concepts(c));
  const auto dot = to_dot(l, c);
  CHECK(dot.rfind("digraph lattice {\n", 0) == 0);
  CHECK(dot.back() == '\n');
  CHECK(dot.find("c0 -> c1;") != std::string::npos);
  CHECK(dot.find("label=\"{a, b}\\n#1\"") != std::string::npos);
  std::size_t open = 0, close = 0;
  for (char ch : dot) {
    open += ch == '{';
    close += ch == '}';
  }
  CHECK(open == close);
  const auto json = to_json(l, c);
  CHECK(json.find("\"edges\"") != std::string::npos);
  CHECK(json.find("\"concepts\"") != std::string::npos);
}

TEST_CASE("contexts from survey responses") {
  using namespace nsp::survey;
  std::vector<Response> rs(3);
  rs[0] = {"u1", {{QuestionId::Q3, {"i0", "i2", "i3"}}}, std::nullopt};
  rs[1] = {"u2", {{QuestionId::Q3, {"i3"}}}, std::nullopt};
  rs[2] = {"u3", {{QuestionId::Q3, {"i0", "i2", "i3"}}}, std::nullopt};
  const auto c = context_from_responses(rs, QuestionId::Q3);
  REQUIRE(c.attributes().size() == 10);
  CHECK(c.attributes()[0] == "i0");
  CHECK(c.attributes()[5] == "ni0");
  CHECK(c.has(1, 3));
  CHECK(c.has(1, 5));
  const auto cs = enumerate_concepts(c);
  // Top (i3 shared by all), the two answer groups, and the empty-extent bottom.
  CHECK(cs.size() == 4);

  CHECK(enumerate_concepts(context_from_responses({}, QuestionId::Q3)).size() == 1);
  rs[1].ticks.clear();
  CHECK_THROWS_AS(context_from_responses(rs, QuestionId::Q3), std::invalid_argument);
}

TEST_CASE("context CSV") {
  const auto c = parse_context_csv("object,a,b\no1,1,0\no2,0,1\no3,1,1\n");
  CHECK(c.objects().size() == 3);
  CHECK(c.has(2, 1));
  CHECK_FALSE(c.has(0, 1));
  CHECK(enumerate_concepts(c) == enumerate_concepts(toy()));
  CHECK_THROWS_AS(parse_context_csv("obj,a\n"), ParseError);
  CHECK_THROWS_AS(parse_context_csv("object,a\no1,2\n"), ParseError);
  CHECK_THROWS_AS(parse_context_csv("object,a\no1,1,0\n"), ParseError);
  CHECK_THROWS_AS(parse_context_csv("object,a\no1,1\no1,0\n"), ParseError);
  CHECK_THROWS_AS(parse_context_csv(""), ParseError);
}
