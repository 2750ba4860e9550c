#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "nsp/core.hpp"
#include "oracles.hpp"

using namespace nsp;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("nsp_test_" + name);
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

const char* kTable1 =
    "# Table of five sequences\n"
    "p0: e (c a f) d b e d\n"
    "p1: c a d b e d\n"
    "p2: e (c a) d\n"
    "p3: d e (c a) b d b e f\n"
    "p4: c e b (f a c) d e c\n";

}  // namespace

TEST_CASE("parse_sequence splits groups and singletons") {
  auto s = parse_sequence("e (c a f) d b e d");
  REQUIRE(s.size() == 6);
  CHECK(s.at(2) == Itemset{"a", "c", "f"});
  CHECK(s.at(1) == Itemset{"e"});

  auto single = parse_sequence("a");
  REQUIRE(single.size() == 1);
  CHECK(single.at(1).size() == 1);

  CHECK(parse_sequence("d (f a) b e") == parse_sequence("d (a f) b e"));
  CHECK(parse_sequence("(a a b)").at(1) == Itemset{"a", "b"});
  CHECK(parse_sequence("item_1 (x2 Y)").at(2) == Itemset{"Y", "x2"});
}

TEST_CASE("parse_sequence rejects malformed input") {
  CHECK_THROWS_AS(parse_sequence(""), ParseError);
  CHECK_THROWS_AS(parse_sequence("   "), ParseError);
  CHECK_THROWS_AS(parse_sequence("a (b c"), ParseError);
  CHECK_THROWS_AS(parse_sequence("a b)"), ParseError);
  CHECK_THROWS_AS(parse_sequence("a () b"), ParseError);
  CHECK_THROWS_AS(parse_sequence("a ((b)) c"), ParseError);
  CHECK_THROWS_AS(parse_sequence("a !b c"), ParseError);
  CHECK_THROWS_AS(parse_sequence("a, b"), ParseError);
}

TEST_CASE("parse_pattern aligns negation slots") {
  auto p = parse_pattern("d !(a f) b");
  CHECK(p.positives() == std::vector<Itemset>{{"d"}, {"b"}});
  CHECK(p.negatives() == std::vector<Itemset>{{"a", "f"}});

  auto q = parse_pattern("e (c a) d");
  CHECK(q.positives() == std::vector<Itemset>{{"e"}, {"a", "c"}, {"d"}});
  CHECK(q.negatives() == std::vector<Itemset>{{}, {}});
  CHECK(q.is_positive());

  auto r = parse_pattern("a !b c d !(e f) g");
  CHECK(r.negatives() == std::vector<Itemset>{{"b"}, {}, {"e", "f"}});
}

TEST_CASE("parse_pattern rejects edge and consecutive negations") {
  CHECK_THROWS_AS(parse_pattern("!a b"), ParseError);
  CHECK_THROWS_AS(parse_pattern("a b !c"), ParseError);
  CHECK_THROWS_AS(parse_pattern("a !b !c d"), ParseError);
  CHECK_THROWS_AS(parse_pattern("a !() b"), ParseError);
  CHECK_THROWS_AS(parse_pattern("a ! b"), ParseError);
  CHECK_THROWS_AS(parse_pattern("a !!b c"), ParseError);
  CHECK_THROWS_AS(parse_pattern("a (b"), ParseError);
  CHECK_THROWS_AS(parse_pattern(""), ParseError);
}

TEST_CASE("NegativePattern enforces its shape") {
  CHECK_THROWS_AS(NegativePattern({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(NegativePattern({{"a"}, {"b"}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(NegativePattern({{"a"}, Itemset{}}, {{}}), std::invalid_argument);
  CHECK_NOTHROW(NegativePattern({{"a"}}, {}));
}

TEST_CASE("format is canonical") {
  CHECK(format_pattern(NegativePattern({{"d"}, {"b"}}, {{"f", "a"}})) == "d !(a f) b");
  CHECK(format_pattern(parse_pattern("b !e f")) == "b !e f");
  CHECK(format_sequence(parse_sequence("(c a f) d")) == "(a c f) d");
  CHECK(format_sequence(parse_sequence("(a) b")) == "a b");

  auto d = parse_dataset(kTable1);
  for (const auto& s : d.sequences()) {
    auto again = parse_sequence(format_sequence(s));
    CHECK(again.itemsets == s.itemsets);
  }
}

TEST_CASE("format/parse round-trip on random patterns") {
  oracle::Generator gen(7);
  for (int i = 0; i < 500; ++i) {
    auto p = gen.pattern(6, 4, 3, 3);
    CHECK(parse_pattern(format_pattern(p)) == p);
    auto s = gen.sequence(6, 8, 3);
    CHECK(parse_sequence(format_sequence(s)).itemsets == s.itemsets);
  }
}

TEST_CASE("every accepted pattern is well formed") {
  oracle::Generator gen(11);
  const std::vector<std::string> atoms{"a", "b", "(a b)", "!a", "!(a b)", "c"};
  for (int i = 0; i < 2000; ++i) {
    std::string text;
    const auto n = gen.uniform(1, 6);
    for (std::size_t k = 0; k < n; ++k) text += atoms[gen.uniform(0, atoms.size() - 1)] + " ";
    try {
      auto p = parse_pattern(text);
      CHECK(p.negatives().size() + 1 == p.positives().size());
      for (const auto& x : p.positives()) CHECK_FALSE(x.empty());
    } catch (const ParseError&) {
    }
  }
}

TEST_CASE("positive_part drops negations") {
  CHECK(format_pattern(positive_part(parse_pattern("b !e f"))) == "b f");
  CHECK(format_pattern(positive_part(parse_pattern("f !(e a) d"))) == "f d");
  auto p = parse_pattern("a (b c) d");
  CHECK(positive_part(p) == p);
}

TEST_CASE("semantics presets and labels") {
  CHECK(preset("ensp") == SemanticsConfig{NonInclusion::Total, EmbeddingMode::Soft, OccurrenceMode::Strong});
  CHECK(preset("negpspan") == SemanticsConfig{NonInclusion::Total, EmbeddingMode::Soft, OccurrenceMode::Weak});
  CHECK_FALSE(preset("spade"));
  CHECK(all_semantics().size() == 12);
  CHECK(to_string(presets::ensp) == "total/soft/strong");
  CHECK(parse_occurrence("strong-minimal") == OccurrenceMode::StrongMinimal);
}

TEST_CASE("load_dataset") {
  SUBCASE("table file") {
    auto d = load_dataset(write_temp("table1.txt", kTable1));
    REQUIRE(d.size() == 5);
    CHECK(d.alphabet() == Itemset{"a", "b", "c", "d", "e", "f"});
    CHECK(d.sequences()[3].id == "p3");
    CHECK(format_sequence(d.sequences()[0]) == "e (a c f) d b e d");
  }
  SUBCASE("auto ids") {
    auto d = parse_dataset("a b\n\nc\n");
    REQUIRE(d.size() == 2);
    CHECK(d.sequences()[0].id == "s0");
    CHECK(d.sequences()[1].id == "s1");
  }
  SUBCASE("degenerate files") {
    CHECK_THROWS_AS(load_dataset(write_temp("empty.txt", "")), ParseError);
    CHECK_THROWS_AS(load_dataset(write_temp("comments.txt", "# one\n# two\n")), ParseError);
    CHECK_THROWS_AS(load_dataset("/nonexistent/nsp/file.txt"), std::runtime_error);
  }
  SUBCASE("line numbers in errors") {
    try {
      parse_dataset("a b\n# c\nx (y\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("duplicate ids") {
    CHECK_THROWS_AS(parse_dataset("x: a\nx: b\n"), ParseError);
    CHECK_THROWS_AS(parse_dataset("s1: a\nb\n"), ParseError);
  }
}
