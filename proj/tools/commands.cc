// Copyright 2026 The mrref Authors.
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

#include "commands.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "mrref/config.h"
#include "mrref/corpus.h"
#include "mrref/errors.h"
#include "mrref/lexicon.h"
#include "mrref/partition.h"
#include "mrref/resolver.h"
#include "mrref/scorer.h"
#include "mrref/tuner.h"
#include "text_util.h"

namespace mrref::cli {

namespace fs = std::filesystem;

namespace {

// Missing or unreadable input files.
class InputError : public Error {
 public:
  using Error::Error;
};

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Options {
  std::string command;
  std::vector<std::string> args;  // as given, for the manifest
  std::string corpus;
  std::string lexicon;
  std::string config;
  std::string out_dir;
  std::string heuristic;
  std::size_t quota = 0;  // 0: not given
  // score
  std::string key;
  std::string response;
  std::string metric = "muc";
  // compare-heuristics
  std::vector<double> h4;
  // sweep-memory
  std::string quotas = "2-60";
  // tune
  std::string spec;
  std::string eval_corpus;
  // rerun
  std::string manifest;
};

class Session {
 public:
  Session(const Options &opt, std::ostream &out) : opt_(opt), out_(out) {}

  void Resolve() {
    auto [doc, key] = LoadCorpus();
    Lexicon lex = LoadLex();
    ResolverConfig cfg = LoadConfig();
    Resolution res = ResolveDocument(doc, cfg, lex);
    std::string partition = FormatKeyRecords(res.response.ToKeyCells("mr"));
    std::string trace = FormatTrace(res.trace);
    out_ << partition;
    Emit("response.key", partition);
    Emit("trace.log", trace);
    WriteManifest(&cfg);
  }

  void Score() {
    Partition key = LoadPartition(opt_.key);
    Partition response = LoadPartition(opt_.response);
    const Metric &metric = FindMetric(opt_.metric);
    std::string csv = ReportCsv({{opt_.metric, metric.score(key, response)}});
    out_ << csv;
    Emit("score.csv", csv);
    WriteManifest(nullptr);
  }

  void CompareHeuristics() {
    auto [doc, key] = LoadCorpus();
    CheckKeyCoverage(doc, key);
    Lexicon lex = LoadLex();
    ResolverConfig base = LoadConfig();
    std::vector<Heuristic> heuristics = {Heuristic::First(), Heuristic::All(),
                                         Heuristic::One()};
    for (double x : opt_.h4) {
      if (!(x >= 0 && x <= 100)) throw ConfigError("h4 threshold must be in [0,100]");
      heuristics.push_back(Heuristic::Ratio(x));
    }
    std::vector<ResolverConfig> configs;
    for (const Heuristic &h : heuristics) {
      ResolverConfig cfg = base;
      cfg.heuristic = h;
      configs.push_back(cfg);
    }
    std::vector<ScoreReport> scores = ScoreAll(doc, key, lex, configs);
    std::vector<std::pair<std::string, ScoreReport>> rows;
    for (std::size_t i = 0; i < heuristics.size(); ++i) {
      rows.emplace_back(heuristics[i].ToString(), scores[i]);
    }
    std::string csv = ReportCsv(rows);
    out_ << csv;
    Emit("heuristics.csv", csv);
    WriteManifest(&base);
  }

  void SweepMemory() {
    auto [doc, key] = LoadCorpus();
    CheckKeyCoverage(doc, key);
    Lexicon lex = LoadLex();
    ResolverConfig base = LoadConfig();
    std::vector<std::size_t> quotas = ParseQuotas(opt_.quotas);
    std::vector<ResolverConfig> configs;
    for (std::size_t q : quotas) {
      ResolverConfig cfg = base;
      cfg.quota = q;
      configs.push_back(cfg);
    }
    std::vector<ScoreReport> scores = ScoreAll(doc, key, lex, configs);
    std::string csv = "quota,recall,precision,f1\n";
    for (std::size_t i = 0; i < quotas.size(); ++i) {
      csv += std::to_string(quotas[i]) + "," + text::FormatFixed2(scores[i].recall) +
             "," + text::FormatFixed2(scores[i].precision) + "," +
             text::FormatFixed2(scores[i].f1) + "\n";
    }
    out_ << csv;
    Emit("memory_sweep.csv", csv);
    WriteManifest(&base);
  }

  void Stats() {
    auto [doc, key] = LoadCorpus();
    CorpusStats s = ComputeCorpusStats(doc, key);
    std::string csv = "field," + doc.doc_id + "\n";
    csv += "Words," + std::to_string(s.words) + "\n";
    csv += "REs," + std::to_string(s.res) + "\n";
    csv += "MRs (key)," + std::to_string(s.mrs_key) + "\n";
    csv += "RE / MR," + s.RatioText() + "\n";
    csv += "Nominal REs," + std::to_string(s.nominal_res) + "\n";
    csv += "Pronoun REs," + std::to_string(s.pronoun_res) + "\n";
    csv += "Not parsed REs," + std::to_string(s.unparsed_res) + "\n";
    out_ << csv;
    Emit("stats.csv", csv);
    WriteManifest(nullptr);
  }

  void Tune() {
    auto [doc, key] = LoadCorpus();
    CheckKeyCoverage(doc, key);
    Lexicon lex = LoadLex();
    ResolverConfig cfg = LoadConfig();
    TuningSpec spec = ParseTuningSpec(ReadFile(opt_.spec));
    TuningResult result = TuneParams(doc, key, cfg, lex, spec);
    ResolverConfig tuned = cfg;
    tuned.salience = result.params;

    const TuningTrace &trace = result.trace;
    std::string summary =
        "initial_objective=" + text::FormatDouble(trace.iterations.front().objective) +
        "\nfinal_objective=" + text::FormatDouble(trace.iterations.back().objective) +
        "\n";
    if (!opt_.eval_corpus.empty()) {
      AnnotatedDocument other = ParseDocument(ReadFile(opt_.eval_corpus));
      CheckKeyCoverage(other.document, other.key);
      summary += "eval_initial_objective=" +
                 text::FormatDouble(Objective(other.document, other.key, cfg, lex)) +
                 "\neval_final_objective=" +
                 text::FormatDouble(Objective(other.document, other.key, tuned, lex)) +
                 "\n";
    }
    out_ << summary;
    Emit("tuned.cfg", SerializeConfig(tuned));
    Emit("tuning_trace.csv", TuningTraceCsv(trace));
    Emit("tuning_summary.txt", summary);
    WriteManifest(&cfg);
  }

 private:
  AnnotatedDocument LoadCorpus() { return ParseDocument(ReadFile(opt_.corpus)); }

  Lexicon LoadLex() {
    return opt_.lexicon.empty() ? Lexicon() : LoadLexicon(ReadFile(opt_.lexicon));
  }

  ResolverConfig LoadConfig() {
    ResolverConfig cfg;
    if (!opt_.config.empty()) cfg = ParseConfig(ReadFile(opt_.config));
    if (!opt_.heuristic.empty()) cfg.heuristic = Heuristic::Parse(opt_.heuristic);
    if (opt_.quota != 0) cfg.quota = opt_.quota;
    cfg.Validate();
    return cfg;
  }

  // An annotated document or a file of KEY records.
  static Partition LoadPartition(const std::string &path) {
    std::string content = ReadFile(path);
    bool annotated = false;
    text::ForEachRecord(content, [&](std::size_t, std::string_view line) {
      if (!annotated && line.substr(0, 4) == "DOC ") annotated = true;
    });
    if (annotated) {
      AnnotatedDocument ad = ParseDocument(content);
      return Partition::FromKey(ad.key, &ad.document);
    }
    return Partition::FromKeyCells(ParseKeyRecords(content));
  }

  static std::vector<std::size_t> ParseQuotas(const std::string &spec) {
    std::vector<std::size_t> quotas;
    for (const std::string &piece : text::Split(spec, ',')) {
      std::size_t dash = piece.find('-');
      auto lo = text::ParseSize(std::string_view(piece).substr(0, dash));
      auto hi = dash == std::string::npos
                    ? lo
                    : text::ParseSize(std::string_view(piece).substr(dash + 1));
      if (!lo || !hi || *lo > *hi) {
        throw ConfigError("bad quota list entry '" + piece + "'");
      }
      for (std::size_t q = *lo; q <= *hi; ++q) quotas.push_back(q);
    }
    if (quotas.empty()) throw ConfigError("empty quota list");
    for (std::size_t q : quotas) {
      if (q < 1) throw ConfigError("quotas must be at least 1");
    }
    return quotas;
  }

  // One resolver run per configuration, concurrently; results keep the
  // configuration order.
  static std::vector<ScoreReport> ScoreAll(const Document &doc,
                                           const KeyPartition &key,
                                           const Lexicon &lex,
                                           const std::vector<ResolverConfig> &configs) {
    Partition gold = Partition::FromKey(key, &doc);
    std::vector<std::future<ScoreReport>> jobs;
    for (const ResolverConfig &cfg : configs) {
      jobs.push_back(std::async(std::launch::async, [&doc, &lex, &gold, cfg] {
        return MucScore(gold, ResolveDocument(doc, cfg, lex).response);
      }));
    }
    std::vector<ScoreReport> out;
    for (auto &job : jobs) out.push_back(job.get());
    return out;
  }

  void Emit(const std::string &name, const std::string &content) {
    if (opt_.out_dir.empty()) return;
    fs::create_directories(opt_.out_dir);
    std::string path = (fs::path(opt_.out_dir) / name).string();
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot write '" + path + "'");
    file << content;
    outputs_.push_back(name);
  }

  void WriteManifest(const ResolverConfig *cfg) {
    if (opt_.out_dir.empty()) return;
    std::string m = "tool=" + std::string(kToolVersion) + "\n";
    m += "command=" + opt_.command + "\n";
    std::string args;
    for (const std::string &a : opt_.args) {
      args += (args.empty() ? "" : " ") + text::Quote(a);
    }
    m += "args=" + args + "\n";
    auto input = [&](const char *name, const std::string &path) {
      if (!path.empty()) m += std::string("input.") + name + "=" + path + "\n";
    };
    input("corpus", opt_.corpus);
    input("lexicon", opt_.lexicon);
    input("config", opt_.config);
    input("key", opt_.key);
    input("response", opt_.response);
    input("spec", opt_.spec);
    input("eval_corpus", opt_.eval_corpus);
    if (cfg != nullptr) {
      std::istringstream lines(SerializeConfig(*cfg));
      for (std::string line; std::getline(lines, line);) m += "config." + line + "\n";
    }
    for (const std::string &name : outputs_) m += "output=" + name + "\n";
    Emit("manifest.txt", m);
  }

  const Options &opt_;
  std::ostream &out_;
  std::vector<std::string> outputs_;
};

// Command-line arguments recorded in a manifest.
std::vector<std::string> ManifestArgs(const std::string &path) {
  std::string content = ReadFile(path);
  std::optional<std::vector<std::string>> args;
  text::ForEachRecord(content, [&](std::size_t line_no, std::string_view line) {
    if (line.substr(0, 5) != "args=") return;
    args = text::SplitFields(line.substr(5));
    if (!args) throw ParseError(line_no, "unterminated quote in args");
  });
  if (!args) throw ParseError(0, "manifest has no args record");
  return *args;
}

int Dispatch(const std::vector<std::string> &args, std::ostream &out,
             std::ostream &err, int depth);

int RunParsed(Options &opt, std::ostream &out, std::ostream &err, int depth) {
  if (opt.command == "rerun") {
    if (depth > 0) throw ConfigError("a manifest cannot rerun another manifest");
    return Dispatch(ManifestArgs(opt.manifest), out, err, depth + 1);
  }
  Session session(opt, out);
  if (opt.command == "resolve") session.Resolve();
  else if (opt.command == "score") session.Score();
  else if (opt.command == "compare-heuristics") session.CompareHeuristics();
  else if (opt.command == "sweep-memory") session.SweepMemory();
  else if (opt.command == "stats") session.Stats();
  else if (opt.command == "tune") session.Tune();
  return kExitOk;
}

int Dispatch(const std::vector<std::string> &args, std::ostream &out,
             std::ostream &err, int depth) {
  CLI::App app{"Reference resolution into mental representations"};
  app.require_subcommand(1);
  Options opt;
  opt.args = args;

  auto common = [&](CLI::App *sub) {
    sub->add_option("--corpus", opt.corpus, "Annotated document")->required();
    sub->add_option("--lexicon", opt.lexicon, "Lexicon file (default: empty)");
    sub->add_option("--config", opt.config, "key=value resolver config");
    sub->add_option("--out", opt.out_dir, "Output directory");
    sub->add_option("--heuristic", opt.heuristic, "h1|h2|h3|h4:<X>");
    sub->add_option("--quota", opt.quota, "Working-memory quota");
  };

  auto *resolve = app.add_subcommand("resolve", "Resolve a document");
  common(resolve);
  auto *score = app.add_subcommand("score", "Score a response against a key");
  score->add_option("--key", opt.key, "Key (annotated document or KEY file)")->required();
  score->add_option("--response", opt.response, "Response KEY file")->required();
  score->add_option("--metric", opt.metric, "Scoring metric");
  score->add_option("--out", opt.out_dir, "Output directory");
  auto *compare = app.add_subcommand("compare-heuristics",
                                     "Score H1, H2, H3 (and H4) on a document");
  common(compare);
  compare->add_option("--h4", opt.h4, "H4 thresholds in percent")->delimiter(',');
  auto *sweep = app.add_subcommand("sweep-memory", "Score across memory quotas");
  common(sweep);
  sweep->add_option("--quotas", opt.quotas, "Quota list, e.g. 2-60 or 2,5,20");
  auto *stats = app.add_subcommand("stats", "Corpus statistics");
  stats->add_option("--corpus", opt.corpus, "Annotated document")->required();
  stats->add_option("--out", opt.out_dir, "Output directory");
  auto *tune = app.add_subcommand("tune", "Tune salience parameters");
  common(tune);
  tune->add_option("--spec", opt.spec, "Tuning spec")->required();
  tune->add_option("--eval-corpus", opt.eval_corpus,
                   "Second document scored before and after tuning");
  auto *rerun = app.add_subcommand("rerun", "Re-execute the command in a manifest");
  rerun->add_option("--manifest", opt.manifest, "manifest.txt")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "mrref: " << e.what() << "\n";
    return kExitInput;
  }
  opt.command = app.get_subcommands().front()->get_name();
  return RunParsed(opt, out, err, depth);
}

}  // namespace

int Run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  try {
    return Dispatch(args, out, err, 0);
  } catch (const InputError &e) {
    err << "mrref: " << e.what() << "\n";
  } catch (const ParseError &e) {
    err << "mrref: parse error: " << e.what() << "\n";
  } catch (const ValidationError &e) {
    err << "mrref: invalid input: " << e.what() << "\n";
  } catch (const ConfigError &e) {
    err << "mrref: configuration error: " << e.what() << "\n";
  } catch (const std::exception &e) {
    err << "mrref: " << e.what() << "\n";
    return kExitLogic;
  }
  return kExitInput;
}

}  // namespace mrref::cli
