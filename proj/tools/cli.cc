// Copyright 2026 The sdrgrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sdrgrid/eval.h"
#include "sdrgrid/evolution.h"
#include "sdrgrid/extraction.h"
#include "sdrgrid/grid.h"
#include "sdrgrid/json_codec.h"
#include "sdrgrid/message.h"
#include "sdrgrid/planner.h"
#include "sdrgrid/relation_engine.h"
#include "sdrgrid/topic_spec.h"

namespace sdrgrid::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

// Usage and I/O failures; everything else maps to a domain error.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Context {
 public:
  Context(std::istream& in, std::ostream& out, std::ostream& err)
      : in_(in), out_(out), err_(err) {}

  std::string resolve(const std::string& path) const {
    if (path.empty() || path == "-") return "-";
    if (fs::exists(path)) return path;
    const char* dir = std::getenv(kFixtureDirEnv);
    if (dir && fs::path(path).is_relative()) {
      fs::path alt = fs::path(dir) / path;
      if (fs::exists(alt)) return alt.string();
      alt = fs::path(dir) / fs::path(path).filename();
      if (fs::exists(alt)) return alt.string();
    }
    throw IoError("cannot open " + path);
  }

  std::string read(const std::string& path) {
    std::string resolved = resolve(path);
    if (resolved == "-") {
      if (stdin_used_) throw IoError("standard input requested twice");
      stdin_used_ = true;
      return {std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>()};
    }
    std::ifstream f(resolved, std::ios::binary);
    if (!f) throw IoError("cannot open " + resolved);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
  }

  // Writes to `path` through a temporary file and rename, or to standard
  // output when no path is given.
  void write(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
      out_ << text;
      out_.flush();
      return;
    }
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f) throw IoError("cannot write " + path);
      f << text;
      f.flush();
      if (!f) {
        std::error_code ec;
        fs::remove(tmp, ec);
        throw IoError("cannot write " + path);
      }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
      fs::remove(tmp, ec);
      throw IoError("cannot write " + path);
    }
  }

  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

 private:
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  bool stdin_used_ = false;
};

TopicSpec load_spec(Context& ctx, const std::string& path) {
  std::string text = ctx.read(path);
  try {
    return parse_topic_spec(text);
  } catch (const ParseError& e) {
    Diagnostic d{Severity::kError, e.message(), "", e.location()};
    throw std::runtime_error(format_diagnostic(path, d));
  }
}

std::string with_location(const std::string& path, const ParseError& e) {
  return format_diagnostic(path, {Severity::kError, e.message(), "", e.location()});
}

bool looks_like_grid(const std::string& text) {
  try {
    Json j = Json::parse(text);
    return j.is_object() && j.contains("relations");
  } catch (const Json::exception&) {
    return false;
  }
}

Grid load_grid(Context& ctx, const std::string& path) {
  std::string text = ctx.read(path);
  try {
    return deserialize_grid(text);
  } catch (const ParseError& e) {
    throw std::runtime_error(with_location(path.empty() ? "-" : path, e));
  }
}

std::vector<MessageInstance> load_stream(Context& ctx, const std::string& path,
                                         const TopicSpec& spec) {
  std::string text = ctx.read(path);
  try {
    return parse_message_stream(text, spec);
  } catch (const ParseError& e) {
    throw std::runtime_error(with_location(path.empty() ? "-" : path, e));
  }
}

void apply_overrides(TopicSpec& spec, const std::optional<std::int64_t>& window,
                     const std::string& distance, const std::string& mode) {
  if (window) {
    if (*window < 0) throw IoError("--window must be non-negative");
    spec.config.sync_window_minutes = *window;
  }
  if (!distance.empty()) {
    if (distance == "unbounded") {
      spec.config.diachronic_policy = DiachronicPolicy::unbounded();
    } else if (distance.rfind("exact:", 0) == 0) {
      std::int64_t k = 0;
      try {
        k = std::stoll(distance.substr(6));
      } catch (const std::exception&) {
        throw IoError("--distance expects unbounded or exact:K");
      }
      if (k < 1) throw IoError("--distance exact:K needs K >= 1");
      spec.config.diachronic_policy = DiachronicPolicy::exact(k);
    } else {
      throw IoError("--distance expects unbounded or exact:K");
    }
  }
  if (!mode.empty()) {
    auto m = parse_planner_mode(mode);
    if (!m) throw IoError("--mode expects linear or nonlinear");
    spec.config.planner_mode = *m;
  }
}

Json score_json(const ScoreReport& r) {
  return Json{{"precision", r.precision},    {"recall", r.recall},
              {"f_measure", r.f_measure},    {"true_positives", r.true_positives},
              {"predicted", r.predicted},    {"gold", r.gold}};
}

Json encode_times(const std::vector<Timestamp>& times) {
  Json out = Json::array();
  for (Timestamp t : times) out.push_back(t.str());
  return out;
}

std::vector<Timestamp> decode_times(const Json& j) {
  std::vector<Timestamp> out;
  for (const Json& t : j) out.push_back(json_codec::decode_timestamp(t));
  return out;
}

struct StreamsFile {
  std::optional<ActivityTimeline> timeline;
  std::vector<ReportStream> streams;
};

StreamsFile parse_streams(const std::string& text) {
  StreamsFile file;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      Json j = Json::parse(line);
      if (j.contains("activities")) {
        file.timeline = ActivityTimeline{decode_times(j["activities"])};
      } else {
        file.streams.push_back(
            {json_codec::require_string(j, "source"), decode_times(json_codec::require(j, "pub_times"))});
      }
    } catch (const Json::exception& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return file;
}

std::string write_streams(const GeneratedStreams& g) {
  std::string out = Json{{"activities", encode_times(g.timeline.times)}}.dump() + "\n";
  for (const ReportStream& s : g.streams) {
    out += Json{{"pub_times", encode_times(s.pub_times)}, {"source", s.source}}.dump() + "\n";
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Context ctx(in, out, err);
  CLI::App app{"Builds message/relation grids over multi-source event reports", "sdrgrid"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string spec_path, output, input, templates, base, distance, mode, streams_path;
  std::string gazetteer, lexicon, predicted, gold, match = "type-and-args", regime;
  std::optional<std::int64_t> window, unit;
  std::int64_t tolerance = 0;
  std::vector<std::string> entities, types, sources;
  std::string from, to;
  bool all = false;
  GeneratorParams gen;
  std::uint64_t seed = 42;

  auto* validate = app.add_subcommand("validate", "Check a topic specification");
  validate->add_option("spec", spec_path, "Topic specification")->required();

  auto* extract = app.add_subcommand("extract", "Tokenized documents to a message stream");
  extract->add_option("--spec", spec_path)->required();
  extract->add_option("--gazetteer", gazetteer)->required();
  extract->add_option("--lexicon", lexicon)->required();
  extract->add_option("input", input, "Documents JSONL");
  extract->add_option("-o,--output", output);

  auto* grid = app.add_subcommand("grid", "Message stream to grid");
  grid->add_option("--spec", spec_path)->required();
  grid->add_option("--base", base, "Existing grid to extend");
  grid->add_option("--window", window, "Synchronic window in minutes");
  grid->add_option("--distance", distance, "unbounded or exact:K");
  grid->add_option("--mode", mode, "linear or nonlinear");
  grid->add_option("input", input, "Message stream JSONL");
  grid->add_option("-o,--output", output);

  auto* relations = app.add_subcommand("relations", "List relation instances");
  relations->add_option("--spec", spec_path, "Read a message stream instead of a grid");
  relations->add_option("input", input);
  relations->add_option("-o,--output", output);

  auto* query = app.add_subcommand("query", "Extract a sub-grid");
  // One value per flag; repeat the flag for more.
  for (auto* opt : {query->add_option("--entity", entities), query->add_option("--type", types),
                    query->add_option("--source", sources)}) {
    opt->allow_extra_args(false)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  }
  query->add_option("--from", from);
  query->add_option("--to", to);
  query->add_flag("--all", all, "Universal query");
  query->add_option("input", input);
  query->add_option("-o,--output", output);

  auto* plan = app.add_subcommand("plan", "Grid to document plan");
  plan->add_option("--mode", mode, "linear or nonlinear");
  plan->add_option("input", input);
  plan->add_option("-o,--output", output);

  auto* realize_cmd = app.add_subcommand("realize", "Document plan to text");
  realize_cmd->add_option("--templates", templates)->required();
  realize_cmd->add_option("input", input);
  realize_cmd->add_option("-o,--output", output);

  auto* analyze = app.add_subcommand("analyze", "Linearity and synchronicity of report streams");
  analyze->add_option("--streams", streams_path)->required();
  analyze->add_option("--unit", unit, "Time unit in minutes; inferred when absent");
  analyze->add_option("--tolerance", tolerance, "Allowed publication skew in minutes")
      ->check(CLI::NonNegativeNumber);

  auto* synth = app.add_subcommand("synth", "Generate synthetic report streams");
  synth->add_option("--regime", regime, "linear-sync, linear-sync-skips or nonlinear-async")
      ->required();
  synth->add_option("--sources", gen.sources)->check(CLI::PositiveNumber);
  synth->add_option("--length", gen.length)->check(CLI::PositiveNumber);
  synth->add_option("--unit", gen.unit)->check(CLI::PositiveNumber);
  synth->add_option("--min-reports", gen.min_reports);
  synth->add_option("--max-reports", gen.max_reports);
  synth->add_option("--seed", seed);
  synth->add_option("-o,--output", output);

  auto* eval = app.add_subcommand("eval", "Score predictions against gold annotations");
  eval->add_option("--predicted", predicted)->required();
  eval->add_option("--gold", gold)->required();
  eval->add_option("--spec", spec_path, "Needed for message streams");
  eval->add_option("--match", match, "type-only or type-and-args");
  eval->add_option("-o,--output", output);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (validate->parsed()) {
      std::string text = ctx.read(spec_path);
      std::vector<Diagnostic> warnings;
      TopicSpec spec;
      try {
        spec = parse_topic_spec(text, &warnings);
      } catch (const ParseError& e) {
        err << with_location(spec_path, e) << "\n";
        return kExitDomain;
      }
      for (const Diagnostic& d : warnings) err << format_diagnostic(spec_path, d) << "\n";
      out << spec_path << ": topic " << spec.name << ", " << spec.schemas.size()
          << " message types, " << spec.relations.size() << " relations\n";
      return kExitOk;
    }

    if (extract->parsed()) {
      TopicSpec spec = load_spec(ctx, spec_path);
      Gazetteer gaz;
      TriggerLexicon lex;
      try {
        gaz = Gazetteer::load(ctx.read(gazetteer), spec);
      } catch (const ParseError& e) {
        throw std::runtime_error(with_location(gazetteer, e));
      }
      try {
        lex = TriggerLexicon::load(ctx.read(lexicon), spec);
      } catch (const ParseError& e) {
        throw std::runtime_error(with_location(lexicon, e));
      }
      std::vector<Document> docs;
      try {
        docs = parse_documents(ctx.read(input));
      } catch (const ParseError& e) {
        throw std::runtime_error(with_location(input.empty() ? "-" : input, e));
      }
      std::vector<ExtractionIssue> issues;
      auto msgs = extract_messages(docs, spec, gaz, lex, &issues);
      for (const ExtractionIssue& i : issues) {
        err << "skipped " << i.doc_id << " sentence " << i.sentence << ": " << i.message << "\n";
      }
      ctx.write(output, write_message_stream(msgs));
      return kExitOk;
    }

    if (grid->parsed()) {
      TopicSpec spec = load_spec(ctx, spec_path);
      apply_overrides(spec, window, distance, mode);
      auto msgs = load_stream(ctx, input, spec);
      Grid g = base.empty() ? build_grid(msgs, spec)
                            : extend_grid(load_grid(ctx, base), msgs, spec);
      ctx.write(output, serialize_grid(g));
      return kExitOk;
    }

    if (relations->parsed()) {
      std::vector<RelationInstance> rels;
      if (!spec_path.empty()) {
        TopicSpec spec = load_spec(ctx, spec_path);
        rels = extract_relations(load_stream(ctx, input, spec), spec);
      } else {
        rels = load_grid(ctx, input).relations;
      }
      std::string text;
      for (const RelationInstance& r : rels) {
        text += r.name + "\t" + std::string(relation_type_name(r.type)) + "\t" + r.first +
                "\t" + r.second + "\n";
      }
      ctx.write(output, text);
      return kExitOk;
    }

    if (query->parsed()) {
      GridQuery q;
      q.universal = all;
      if (!entities.empty()) q.entities.emplace(entities.begin(), entities.end());
      if (!types.empty()) q.types.emplace(types.begin(), types.end());
      if (!sources.empty()) q.sources.emplace(sources.begin(), sources.end());
      try {
        if (!from.empty()) q.from = Timestamp::parse(from);
        if (!to.empty()) q.to = Timestamp::parse(to);
      } catch (const std::invalid_argument& e) {
        throw IoError(e.what());
      }
      if (q.empty()) throw IoError("query needs a filter or --all");
      ctx.write(output, serialize_grid(query_subgrid(load_grid(ctx, input), q)));
      return kExitOk;
    }

    if (plan->parsed()) {
      Grid g = load_grid(ctx, input);
      PlannerMode m = g.frame.mode;
      if (!mode.empty()) {
        auto parsed = parse_planner_mode(mode);
        if (!parsed) throw IoError("--mode expects linear or nonlinear");
        m = *parsed;
      }
      ctx.write(output, serialize_plan(build_document_plan(g, m)));
      return kExitOk;
    }

    if (realize_cmd->parsed()) {
      TemplatePack pack;
      try {
        pack = TemplatePack::parse(ctx.read(templates));
      } catch (const ParseError& e) {
        throw std::runtime_error(with_location(templates, e));
      }
      std::string text = ctx.read(input);
      DocumentPlan p;
      try {
        p = deserialize_plan(text);
      } catch (const ParseError& e) {
        throw std::runtime_error(with_location(input.empty() ? "-" : input, e));
      }
      ctx.write(output, realize(p, pack));
      return kExitOk;
    }

    if (analyze->parsed()) {
      StreamsFile file = parse_streams(ctx.read(streams_path));
      ActivityTimeline timeline;
      if (file.timeline) {
        timeline = *file.timeline;
      } else {
        std::set<Timestamp> times;
        for (const ReportStream& s : file.streams) times.insert(s.pub_times.begin(), s.pub_times.end());
        timeline.times.assign(times.begin(), times.end());
      }
      Linearity lin = classify_linearity(timeline, unit);
      Synchronicity sync = classify_synchronicity(file.streams, tolerance);
      Json detail;
      std::string verdict;
      if (const auto* l = std::get_if<Linear>(&lin)) {
        verdict = "Linear";
        detail["t"] = l->t;
        detail["multipliers"] = l->multipliers;
      } else {
        const auto& n = std::get<NonLinear>(lin);
        verdict = "NonLinear";
        detail["t"] = n.t;
        detail["failing_gap"] = n.failing_gap;
      }
      if (const auto* a = std::get_if<Asynchronous>(&sync)) {
        verdict += ", Asynchronous";
        const AsyncWitness& w = a->witness;
        detail["witness"] = {
            {"kind", w.kind == AsyncWitness::Kind::kLength ? "length" : "time"},
            {"sources", {w.first_source, w.second_source}},
            {"index", w.index}};
      } else {
        verdict += ", Synchronous";
      }
      detail["verdict"] = verdict;
      out << verdict << "\n" << detail.dump() << "\n";
      return kExitOk;
    }

    if (synth->parsed()) {
      auto r = parse_regime(regime);
      if (!r) throw IoError("unknown regime " + regime);
      ctx.write(output, write_streams(generate_stream(*r, gen, seed)));
      return kExitOk;
    }

    if (eval->parsed()) {
      auto m = parse_match_mode(match);
      if (!m) throw IoError("--match expects type-only or type-and-args");
      std::string ptext = ctx.read(predicted);
      std::string gtext = ctx.read(gold);
      Json report;
      std::string table;
      if (looks_like_grid(ptext) && looks_like_grid(gtext)) {
        Grid pg = deserialize_grid(ptext);
        Grid gg = deserialize_grid(gtext);
        std::optional<TopicSpec> spec;
        if (!spec_path.empty()) spec = load_spec(ctx, spec_path);
        auto pm = pg.message_list();
        auto gm = gg.message_list();
        ScoreReport ms = score_messages(pm, gm, *m, spec ? &*spec : nullptr);
        ScoreReport rs = score_relations(pg, gg, *m);
        report = {{"match", std::string(match_mode_name(*m))},
                  {"messages", score_json(ms)},
                  {"relations", score_json(rs)}};
        table = format_score_table(ms, "messages") + format_score_table(rs, "relations");
      } else {
        if (spec_path.empty()) throw IoError("message streams need --spec");
        TopicSpec spec = load_spec(ctx, spec_path);
        std::vector<MessageInstance> pm, gm;
        try {
          pm = parse_message_stream(ptext, spec);
        } catch (const ParseError& e) {
          throw SpecMismatch(with_location(predicted, e));
        }
        try {
          gm = parse_message_stream(gtext, spec);
        } catch (const ParseError& e) {
          throw SpecMismatch(with_location(gold, e));
        }
        ScoreReport ms = score_messages(pm, gm, *m, &spec);
        report = {{"match", std::string(match_mode_name(*m))}, {"messages", score_json(ms)}};
        table = format_score_table(ms, "messages");
      }
      err << table;
      ctx.write(output, report.dump(2) + "\n");
      return kExitOk;
    }
  } catch (const IoError& e) {
    err << "sdrgrid: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "sdrgrid: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace sdrgrid::cli
