#include "nsp/survey.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nsp/matcher.hpp"

namespace nsp::survey {

namespace {

Dataset table(std::initializer_list<std::pair<const char*, const char*>> rows) {
  std::vector<Sequence> seqs;
  for (auto [id, text] : rows) {
    Sequence s = parse_sequence(text);
    s.id = id;
    seqs.push_back(std::move(s));
  }
  return Dataset(std::move(seqs));
}

std::vector<Question> build_bank() {
  std::vector<Question> bank;
  bank.push_back({QuestionId::Q1, parse_pattern("(c a) d e"),
                  table({{"p0", "e (c a f) d b e d"},
                         {"p1", "c a d b e d"},
                         {"p2", "e (c a) d"},
                         {"p3", "d e (c a) b d b e f"},
                         {"p4", "c e b (f a c) d e c"}})});
  bank.push_back({QuestionId::Q2, parse_pattern("c !d e"),
                  table({{"s0", "f f c b d a e"},
                         {"s1", "f c b f a e"},
                         {"s2", "b f c b a"},
                         {"s3", "b c b e d"},
                         {"s4", "f a c e b"}})});
  bank.push_back({QuestionId::Q3, parse_pattern("d !(a f) b"),
                  table({{"i0", "e e d a b e"},
                         {"i1", "d (a f) b c"},
                         {"i2", "e d (f c) b"},
                         {"i3", "e c d (e c) b"},
                         {"i4", "d (f a) b e"}})});
  bank.push_back({QuestionId::Q4, parse_pattern("f !(e a) d"),
                  table({{"e0", "b b f c e d b"},
                         {"e1", "b f e a c b d"},
                         {"e2", "f c (e a) b c d c"},
                         {"e3", "b c f b c c d"}})});
  bank.push_back({QuestionId::Q5, parse_pattern("b !e f"),
                  table({{"o0", "b a f d b d f"},
                         {"o1", "b a f d e b d f"},
                         {"o2", "d b e c a d f b d e f"},
                         {"o3", "b a f b a e f"}})});
  return bank;
}

const TickSet& ticks_for(const Response& r, QuestionId q) {
  auto it = r.ticks.find(q);
  if (it == r.ticks.end()) {
    throw std::invalid_argument("response of '" + r.participant + "' has no answer to " + to_string(q));
  }
  return it->second;
}

std::vector<std::string> split(std::string_view s, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(delim, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string strip(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::string join(const std::vector<std::string>& parts, char delim) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += delim;
    out += parts[i];
  }
  return out;
}

std::string label(const std::optional<NonInclusion>& v) { return v ? nsp::to_string(*v) : "other"; }
std::string label(const std::optional<EmbeddingMode>& v) { return v ? nsp::to_string(*v) : "other"; }
std::string label(const std::optional<OccurrenceMode>& v) { return v ? nsp::to_string(*v) : "other"; }

}  // namespace

std::string to_string(QuestionId q) {
  return "Q" + std::to_string(static_cast<int>(q) + 1);
}

std::optional<QuestionId> parse_question_id(std::string_view s) {
  for (auto q : kAllQuestions) {
    if (s == to_string(q)) return q;
  }
  return std::nullopt;
}

const std::vector<Question>& question_bank() {
  static const std::vector<Question> bank = build_bank();
  return bank;
}

const Question& question(QuestionId id) { return question_bank()[static_cast<std::size_t>(id)]; }

TickSet expected_ticks(const Question& q, const SemanticsConfig& interpretation) {
  TickSet out;
  for (const auto& s : q.table.sequences()) {
    if (is_contained(s, q.pattern, interpretation)) out.insert(s.id);
  }
  return out;
}

std::vector<KeyEntry> question_keys(const Question& q) {
  const SemanticsConfig base{NonInclusion::Partial, EmbeddingMode::Soft, OccurrenceMode::Weak};
  std::vector<std::pair<std::string, SemanticsConfig>> views;
  switch (q.id) {
    case QuestionId::Q1: views = {{"positive", base}}; break;
    case QuestionId::Q2: views = {{"conform", base}}; break;
    case QuestionId::Q3:
      for (auto n : {NonInclusion::Partial, NonInclusion::Total}) {
        views.emplace_back(nsp::to_string(n), SemanticsConfig{n, base.embedding, base.occurrence});
      }
      break;
    case QuestionId::Q4:
      for (auto n : {NonInclusion::Partial, NonInclusion::Total}) {
        for (auto e : {EmbeddingMode::Soft, EmbeddingMode::Strict}) {
          views.emplace_back(nsp::to_string(n) + "-" + nsp::to_string(e), SemanticsConfig{n, e, base.occurrence});
        }
      }
      break;
    case QuestionId::Q5:
      for (auto o : {OccurrenceMode::Weak, OccurrenceMode::Strong, OccurrenceMode::StrongMinimal}) {
        views.emplace_back(nsp::to_string(o), SemanticsConfig{base.non_inclusion, base.embedding, o});
      }
      break;
  }
  std::vector<KeyEntry> out;
  for (auto& [name, config] : views) out.push_back({name, config, expected_ticks(q, config)});
  return out;
}

std::string to_string(Scope s) {
  switch (s) {
    case Scope::Conform: return "conform";
    case Scope::ConformExceptS4: return "conform-except-s4";
    case Scope::Alternative: return "alternative";
  }
  return "?";
}

bool passes_gate(const TickSet& q1) {
  return q1 == TickSet{"p0", "p3", "p4"} || q1 == TickSet{"p0", "p3"};
}

Scope classify_scope(const TickSet& q2) {
  if (q2 == TickSet{"s1", "s3", "s4"}) return Scope::Conform;
  if (q2 == TickSet{"s1", "s3"}) return Scope::ConformExceptS4;
  return Scope::Alternative;
}

NonInclusionVerdict classify_non_inclusion(const TickSet& q3) {
  NonInclusionVerdict v;
  TickSet rest = q3;
  v.order_sensitive = rest.erase("i4") > 0;
  if (rest == TickSet{"i0", "i2", "i3"}) v.mode = NonInclusion::Partial;
  else if (rest == TickSet{"i3"}) v.mode = NonInclusion::Total;
  return v;
}

std::optional<EmbeddingMode> classify_embedding(const TickSet& q4) {
  if (q4 == TickSet{"e0", "e1", "e3"} || q4 == TickSet{"e1", "e3"}) return EmbeddingMode::Soft;
  if (q4 == TickSet{"e0", "e3"} || q4 == TickSet{"e3"}) return EmbeddingMode::Strict;
  return std::nullopt;
}

std::optional<OccurrenceMode> classify_occurrence(const TickSet& q5) {
  if (q5 == TickSet{"o0", "o1", "o3"}) return OccurrenceMode::Weak;
  if (q5 == TickSet{"o0"}) return OccurrenceMode::Strong;
  if (q5 == TickSet{"o0", "o1"}) return OccurrenceMode::StrongMinimal;
  return std::nullopt;
}

bool e0_consistent(const NonInclusionVerdict& q3, const TickSet& q4) {
  if (!q3.mode) return true;
  return (q4.count("e0") > 0) == (*q3.mode == NonInclusion::Partial);
}

std::vector<std::string> Attribution::flags() const {
  std::vector<std::string> out;
  if (!gate_passed) out.emplace_back("gate-failed");
  if (scope == Scope::Alternative) out.emplace_back("excluded-scope");
  if (order_sensitive) out.emplace_back("order-sensitive");
  if (embedding_ambiguous) out.emplace_back("embedding-ambiguous");
  if (e0_inconsistent) out.emplace_back("e0-inconsistent");
  return out;
}

Attribution attribute_semantics(const Response& r) {
  Attribution a;
  a.participant = r.participant;
  const auto& q1 = ticks_for(r, QuestionId::Q1);
  const auto& q2 = ticks_for(r, QuestionId::Q2);
  const auto& q3 = ticks_for(r, QuestionId::Q3);
  const auto& q4 = ticks_for(r, QuestionId::Q4);
  const auto& q5 = ticks_for(r, QuestionId::Q5);

  a.gate_passed = passes_gate(q1);
  a.scope = classify_scope(q2);
  const auto ni = classify_non_inclusion(q3);
  a.non_inclusion = ni.mode;
  a.order_sensitive = ni.order_sensitive || q1 == TickSet{"p0", "p3"};
  a.embedding = classify_embedding(q4);
  a.occurrence = classify_occurrence(q5);
  a.e0_inconsistent = !e0_consistent(ni, q4);
  a.embedding_ambiguous = a.non_inclusion == NonInclusion::Total && a.embedding == EmbeddingMode::Strict;

  if (a.non_inclusion && a.embedding && a.occurrence && a.scope != Scope::Alternative) {
    a.combined = SemanticsConfig{*a.non_inclusion, *a.embedding, *a.occurrence};
  }
  return a;
}

std::map<std::string, std::size_t> tally(const std::vector<Attribution>& as) {
  std::map<std::string, std::size_t> counts;
  for (const auto& a : as) ++counts[a.combined ? nsp::to_string(*a.combined) : "none"];
  return counts;
}

std::vector<Response> parse_responses(std::string_view text) {
  static const std::string kHeader = "participant,question,ticks,expertise,cs,researcher,logician";
  std::vector<Response> out;
  std::map<std::string, std::size_t> index;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip(line);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kHeader) throw ParseError("expected header '" + kHeader + "'", line_no);
      header_seen = true;
      continue;
    }
    auto fields = split(line, ',');
    if (fields.size() != 7) {
      throw ParseError("expected 7 fields, got " + std::to_string(fields.size()), line_no);
    }
    for (auto& f : fields) f = strip(f);
    const std::string& participant = fields[0];
    if (participant.empty()) throw ParseError("empty participant id", line_no);
    auto qid = parse_question_id(fields[1]);
    if (!qid) throw ParseError("unknown question '" + fields[1] + "'", line_no);

    const Question& q = question(*qid);
    TickSet ticks;
    if (!fields[2].empty()) {
      for (auto& t : split(fields[2], ';')) {
        t = strip(t);
        const auto& seqs = q.table.sequences();
        if (std::none_of(seqs.begin(), seqs.end(), [&](const Sequence& s) { return s.id == t; })) {
          throw ParseError("unknown sequence id '" + t + "' for " + fields[1], line_no);
        }
        ticks.insert(t);
      }
    }

    std::optional<Profile> profile;
    if (!fields[3].empty() || !fields[4].empty() || !fields[5].empty() || !fields[6].empty()) {
      auto flag = [&](const std::string& f) {
        if (f == "1") return true;
        if (f == "0" || f.empty()) return false;
        throw ParseError("profile flags must be 0 or 1, got '" + f + "'", line_no);
      };
      Profile p;
      if (fields[3] == "0" || fields[3] == "1" || fields[3] == "2") p.expertise = fields[3][0] - '0';
      else if (!fields[3].empty()) throw ParseError("expertise must be 0, 1 or 2", line_no);
      p.computer_scientist = flag(fields[4]);
      p.researcher = flag(fields[5]);
      p.logician = flag(fields[6]);
      profile = p;
    }

    auto [it, inserted] = index.try_emplace(participant, out.size());
    if (inserted) out.push_back({participant, {}, std::nullopt});
    Response& r = out[it->second];
    if (!r.ticks.emplace(*qid, std::move(ticks)).second) {
      throw ParseError("duplicate answer of '" + participant + "' to " + fields[1], line_no);
    }
    if (profile) {
      if (r.profile && *r.profile != *profile) {
        throw ParseError("conflicting profile for '" + participant + "'", line_no);
      }
      r.profile = profile;
    }
  }
  if (!header_seen) throw ParseError("empty responses file");
  return out;
}

std::vector<Response> load_responses(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_responses(buf.str());
}

std::string attributions_csv(const std::vector<Attribution>& as) {
  std::string out = "participant,gate,scope,nonincl,embedding,occurrence,combined,flags\n";
  for (const auto& a : as) {
    out += a.participant + ',' + (a.gate_passed ? "true" : "false") + ',' + to_string(a.scope) + ',' +
           label(a.non_inclusion) + ',' + label(a.embedding) + ',' + label(a.occurrence) + ',' +
           (a.combined ? nsp::to_string(*a.combined) : "") + ',' + join(a.flags(), ';') + '\n';
  }
  return out;
}

std::string attributions_json(const std::vector<Attribution>& as) {
  auto arr = nlohmann::json::array();
  for (const auto& a : as) {
    nlohmann::json j{{"participant", a.participant},
                     {"gate", a.gate_passed},
                     {"scope", to_string(a.scope)},
                     {"nonincl", label(a.non_inclusion)},
                     {"embedding", label(a.embedding)},
                     {"occurrence", label(a.occurrence)},
                     {"combined", nullptr},
                     {"flags", a.flags()}};
    if (a.combined) j["combined"] = nsp::to_string(*a.combined);
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace nsp::survey
