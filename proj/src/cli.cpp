#include "nsp/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "nsp/core.hpp"
#include "nsp/fca.hpp"
#include "nsp/matcher.hpp"
#include "nsp/miner.hpp"
#include "nsp/survey.hpp"

namespace nsp::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SemanticsFlags {
  std::string preset;
  std::string non_inclusion;
  std::string embedding;
  std::string occurrence;

  void attach(CLI::App* app) {
    app->add_option("--semantics", preset, "Preset overriding the three modes")
        ->check(CLI::IsMember({"ensp", "negpspan"}));
    app->add_option("--non-inclusion", non_inclusion, "partial|total")->check(CLI::IsMember({"partial", "total"}));
    app->add_option("--embedding", embedding, "soft|strict")->check(CLI::IsMember({"soft", "strict"}));
    app->add_option("--occurrence", occurrence, "weak|strong|strong-minimal")
        ->check(CLI::IsMember({"weak", "strong", "strong-minimal"}));
  }

  SemanticsConfig resolve() const {
    if (!preset.empty()) return *nsp::preset(preset);
    if (non_inclusion.empty() || embedding.empty() || occurrence.empty()) {
      throw UsageError("choose semantics explicitly: --semantics ensp|negpspan, or all of "
                       "--non-inclusion, --embedding and --occurrence");
    }
    return {*parse_non_inclusion(non_inclusion), *parse_embedding(embedding), *parse_occurrence(occurrence)};
  }
};

std::string join(const survey::TickSet& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ',';
    out += id;
  }
  return out;
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  file << text;
}

std::string run_match(const std::string& pattern_text, const std::string& data, const SemanticsConfig& c,
                      bool explain, const std::string& format) {
  const auto pattern = parse_pattern(pattern_text);
  const auto dataset = load_dataset(data);
  if (format == "json") {
    auto arr = nlohmann::json::array();
    for (const auto& s : dataset.sequences()) {
      const auto report = contains(s, pattern, c);
      nlohmann::json j{{"id", s.id}, {"contained", report.contained}};
      j["witness"] = report.witness ? nlohmann::json(report.witness->positions) : nlohmann::json(nullptr);
      j["violating"] = report.violating ? nlohmann::json(report.violating->positions) : nlohmann::json(nullptr);
      arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
  }
  std::string out;
  for (const auto& s : dataset.sequences()) {
    const auto report = contains(s, pattern, c);
    out += s.id + (report.contained ? " true" : " false");
    if (explain) {
      if (report.witness) out += " witness=" + format_embedding(*report.witness);
      if (report.violating) out += " violating=" + format_embedding(*report.violating);
    }
    out += '\n';
  }
  return out;
}

std::string run_keys(const std::string& question_id, const std::string& format) {
  std::vector<survey::QuestionId> ids;
  if (question_id.empty()) {
    ids.assign(std::begin(survey::kAllQuestions), std::end(survey::kAllQuestions));
  } else {
    auto q = survey::parse_question_id(question_id);
    if (!q) throw UsageError("unknown question '" + question_id + "'");
    ids.push_back(*q);
  }
  if (format == "json") {
    nlohmann::json j = nlohmann::json::object();
    for (auto q : ids) {
      nlohmann::json keys = nlohmann::json::object();
      for (const auto& k : survey::question_keys(survey::question(q))) keys[k.label] = k.ids;
      j[survey::to_string(q)] = std::move(keys);
    }
    return j.dump(2) + "\n";
  }
  std::string out;
  for (auto q : ids) {
    for (const auto& k : survey::question_keys(survey::question(q))) {
      if (question_id.empty()) out += survey::to_string(q) + ' ';
      out += k.label + ": " + join(k.ids) + '\n';
    }
  }
  return out;
}

std::string run_classify(const std::string& path, const std::string& format, bool summary) {
  const auto responses = survey::load_responses(path);
  std::vector<survey::Attribution> attributions;
  attributions.reserve(responses.size());
  for (const auto& r : responses) attributions.push_back(survey::attribute_semantics(r));
  if (summary) {
    const auto counts = survey::tally(attributions);
    if (format == "json") return nlohmann::json(counts).dump(2) + "\n";
    std::string out;
    for (const auto& [label, n] : counts) out += label + '\t' + std::to_string(n) + '\n';
    return out;
  }
  if (format == "json") return survey::attributions_json(attributions);
  std::string csv = survey::attributions_csv(attributions);
  if (format == "tsv") std::replace(csv.begin(), csv.end(), ',', '\t');
  return csv;
}

std::string run_lattice(const std::string& responses, const std::string& question_id, const std::string& context,
                        const std::string& format, std::size_t budget) {
  fca::BinaryContext ctx;
  if (!context.empty()) {
    if (!responses.empty()) throw UsageError("use either --context or --responses, not both");
    ctx = fca::load_context(context);
  } else {
    if (responses.empty() || question_id.empty()) {
      throw UsageError("lattice needs --context, or --responses with --question");
    }
    auto q = survey::parse_question_id(question_id);
    if (!q) throw UsageError("unknown question '" + question_id + "'");
    ctx = fca::context_from_responses(survey::load_responses(responses), *q);
  }
  const auto l = fca::lattice(fca::enumerate_concepts(ctx, budget));
  if (format == "json") return fca::to_json(l, ctx);
  if (format == "tsv") {
    std::string out;
    for (std::size_t i = 0; i < l.concepts.size(); ++i) {
      const auto& c = l.concepts[i];
      std::string intent;
      std::string extent;
      for (auto a : c.intent) intent += (intent.empty() ? "" : ",") + ctx.attributes()[a];
      for (auto o : c.extent) extent += (extent.empty() ? "" : ",") + ctx.objects()[o];
      out += std::to_string(i) + '\t' + std::to_string(c.extent.size()) + '\t' + intent + '\t' + extent + '\n';
    }
    return out;
  }
  return fca::to_dot(l, ctx);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Negative sequential pattern toolkit", "nsp"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string output;
  std::string format = "tsv";

  // match
  auto* match = app.add_subcommand("match", "Containment verdict per sequence");
  std::string pattern_text;
  std::string data;
  bool explain = false;
  SemanticsFlags match_sem;
  match->add_option("--pattern", pattern_text, "Pattern, e.g. \"b !e f\"")->required();
  match->add_option("--data", data, "Dataset file")->required();
  match->add_flag("--explain", explain, "Print witness / violating embeddings");
  match->add_option("--format", format)->check(CLI::IsMember({"tsv", "json"}));
  match_sem.attach(match);

  // mine
  auto* mine = app.add_subcommand("mine", "Frequent patterns with negation");
  MinerConfig cfg;
  cfg.max_itemset_size = 2;
  bool brute = false;
  SemanticsFlags mine_sem;
  mine->add_option("--data", data, "Dataset file")->required();
  mine->add_option("--minsup", cfg.minsup, "Absolute support threshold")->required();
  mine->add_option("--max-pos-len", cfg.max_positive_length, "Max positive itemsets")->capture_default_str();
  mine->add_option("--max-itemset-size", cfg.max_itemset_size, "Max items per positive itemset")
      ->capture_default_str();
  mine->add_option("--max-neg-size", cfg.max_negation_size, "Max items per negated itemset (0: none)")
      ->capture_default_str();
  mine->add_flag("--prune", cfg.prune_negations, "Prune negation growth (total/weak only)");
  mine->add_flag("--brute-force", brute, "Use the exhaustive reference miner");
  mine->add_option("--budget", cfg.brute_force_budget, "Brute-force candidate budget")->capture_default_str();
  mine->add_option("--format", format)->check(CLI::IsMember({"tsv", "json"}));
  mine->add_option("-o,--output", output, "Write to file instead of stdout");
  mine_sem.attach(mine);

  // keys
  auto* keys = app.add_subcommand("keys", "Answer keys of the questionnaire");
  std::string question_id;
  keys->add_option("--question", question_id, "Q1..Q5 (default: all)");
  keys->add_option("--format", format)->check(CLI::IsMember({"tsv", "json"}));

  // classify
  auto* classify = app.add_subcommand("classify", "Attribute semantics to questionnaire responses");
  std::string responses;
  bool summary = false;
  std::string classify_format = "csv";
  classify->add_option("--responses", responses, "Responses CSV")->required();
  classify->add_option("--format", classify_format)->check(CLI::IsMember({"csv", "tsv", "json"}));
  classify->add_flag("--summary", summary, "Count respondents per combined semantics");
  classify->add_option("-o,--output", output, "Write to file instead of stdout");

  // lattice
  auto* lat = app.add_subcommand("lattice", "Concept lattice of answers");
  std::string context;
  std::string lattice_format = "dot";
  std::size_t budget = 1'000'000;
  lat->add_option("--responses", responses, "Responses CSV");
  lat->add_option("--question", question_id, "Q1..Q5");
  lat->add_option("--context", context, "Incidence matrix CSV");
  lat->add_option("--format", lattice_format)->check(CLI::IsMember({"dot", "json", "tsv"}));
  lat->add_option("--budget", budget, "Max concepts")->capture_default_str();
  lat->add_option("-o,--output", output, "Write to file instead of stdout");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    std::string text;
    if (match->parsed()) {
      text = run_match(pattern_text, data, match_sem.resolve(), explain, format);
    } else if (mine->parsed()) {
      cfg.semantics = mine_sem.resolve();
      const auto dataset = load_dataset(data);
      try {
        validate(cfg, dataset);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const auto mined = brute ? brute_force_mine(dataset, cfg) : mine_negative(dataset, cfg);
      text = format == "json" ? to_json(mined) : to_tsv(mined);
    } else if (keys->parsed()) {
      text = run_keys(question_id, format);
    } else if (classify->parsed()) {
      text = run_classify(responses, classify_format, summary);
    } else if (lat->parsed()) {
      text = run_lattice(responses, question_id, context, lattice_format, budget);
    }
    write_output(text, output, out);
    return kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
}

}  // namespace nsp::cli
