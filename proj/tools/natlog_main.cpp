// Copyright 2026 The natlog Authors.
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

// natlog command-line tool.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <set>

#include "natlog/augment.hpp"
#include "natlog/evalharness.hpp"
#include "natlog/tsv.hpp"

namespace {

using namespace natlog;

constexpr int kUsageError = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string lexicon_path, resource_path, rewrites_path, relations_path;
  std::string corpus_path, overlay_path, out_path, traces_path;
  int depth = 2;
  std::size_t max_generated = 10000;
  std::string transforms = "all";
  double fraction = 1.0;
  bool any_fraction = false;
  std::uint64_t seed = 0;
  std::string backoff = "neutral";
  std::string mode = "engine";
  double threshold = 0.95;
  unsigned threads = 0;
};

// Owns whatever was loaded from disk; bundled data otherwise.
struct Loaded {
  std::unique_ptr<Lexicon> lexicon;
  std::unique_ptr<LexicalResource> resource;
  std::unique_ptr<RewriteTable> rewrites;
  Resources resources;
  SearchConfig search;
  TransformConfig transforms;

  explicit Loaded(const RunConfig& c) {
    if (!c.lexicon_path.empty()) {
      lexicon = std::make_unique<Lexicon>(Lexicon::load(c.lexicon_path));
      resources.lexicon = lexicon.get();
    }
    if (!c.resource_path.empty()) {
      resource = std::make_unique<LexicalResource>(LexicalResource::load(c.resource_path));
      resources.resource = resource.get();
    }
    if (!c.rewrites_path.empty()) {
      rewrites = std::make_unique<RewriteTable>(RewriteTable::load(c.rewrites_path));
      resources.rewrites = rewrites.get();
    }
    if (!c.relations_path.empty()) resources.extra = load_relations(c.relations_path, *resources.lexicon);
    if (c.depth < 1) throw UsageError("--depth must be at least 1");
    search.depth = c.depth;
    search.max_generated = c.max_generated;
    transforms = TransformConfig::parse(c.transforms);
  }

  PolarizedSentence polarized(const std::string& sentence) const {
    return polarize_lemmas(lemmas_of(preprocess(sentence, transforms, *resources.lexicon, *resources.rewrites)),
                           *resources.lexicon);
  }
};

std::string joined(const std::vector<std::string>& words) {
  std::string s = join(words);
  if (s.find_first_not_of(" \t") == std::string::npos) throw UsageError("empty sentence");
  return s;
}

// Values from a JSON config file fill in whatever was not given as a flag.
void apply_config_file(const std::string& path, CLI::App& app, RunConfig& c) {
  const auto j = nlohmann::json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw UsageError(path + ": not a JSON object");
  auto given = [&](const char* flag) { return app.get_option(flag)->count() > 0; };
  auto take = [&](const char* key, const char* flag, auto& field) {
    if (!j.contains(key) || given(flag)) return;
    try {
      j.at(key).get_to(field);
    } catch (const nlohmann::json::exception&) {
      throw UsageError(path + ": bad value for '" + key + "'");
    }
  };
  static const std::set<std::string> known{"lexicon",  "resource", "rewrites",  "relations", "depth",
                                           "max_generated", "transforms", "fraction", "seed",
                                           "backoff",  "threshold", "overlay", "threads", "mode"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw UsageError(path + ": unknown key '" + key + "'");
  }
  take("lexicon", "--lexicon", c.lexicon_path);
  take("resource", "--resource", c.resource_path);
  take("rewrites", "--rewrites", c.rewrites_path);
  take("relations", "--relations", c.relations_path);
  take("depth", "--depth", c.depth);
  take("max_generated", "--max-generated", c.max_generated);
  take("transforms", "--transforms", c.transforms);
  take("fraction", "--fraction", c.fraction);
  take("seed", "--seed", c.seed);
  take("backoff", "--backoff", c.backoff);
  take("threshold", "--threshold", c.threshold);
  take("overlay", "--overlay", c.overlay_path);
  take("threads", "--threads", c.threads);
  take("mode", "--mode", c.mode);
}

int cmd_polarize(const RunConfig& c, const std::vector<std::string>& words, const std::string& file) {
  Loaded env(c);
  std::vector<std::string> sentences;
  if (!file.empty()) {
    for (auto line : split_lines(read_file(file))) {
      if (is_data_line(line)) sentences.emplace_back(line);
    }
    if (sentences.empty()) throw UsageError(file + ": no sentences");
  } else {
    sentences.push_back(joined(words));
  }
  for (const auto& s : sentences) std::cout << render_polarized(env.polarized(s)) << '\n';
  return 0;
}

void print_classification(const Classification& r) {
  std::cout << label_name(r.label) << '\n';
  if (r.proof && !r.proof->steps.empty()) std::cout << render_proof(*r.proof, r.premise);
  for (const auto& d : r.diagnostics) std::cerr << "diagnostic: " << d << '\n';
}

int cmd_classify(const RunConfig& c, const std::vector<std::string>& pair) {
  Loaded env(c);
  if (!c.corpus_path.empty()) {
    PipelineConfig pc;
    pc.search = env.search;
    pc.transforms = env.transforms;
    pc.threads = c.threads;
    const auto result = run_pipeline(load_corpus(c.corpus_path), env.resources, pc);
    for (const auto& t : result.traces) std::cout << t.id << '\t' << label_name(t.label) << '\n';
    if (!c.traces_path.empty()) write_file_atomic(c.traces_path, traces_to_jsonl(result.traces));
    return 0;
  }
  if (pair.size() != 2) throw UsageError("classify needs PREMISE and HYPOTHESIS (quoted) or --corpus");
  const auto r = classify({"cli", joined({pair[0]}), joined({pair[1]}), {}}, env.resources, env.search, env.transforms);
  print_classification(r);
  return 0;
}

int cmd_generate(const RunConfig& c, const std::vector<std::string>& words) {
  Loaded env(c);
  const auto premise = env.polarized(joined(words));
  const auto kb = build_kb(premise, premise.lemmas(), *env.resources.resource, env.resources.extra,
                           *env.resources.lexicon);
  const auto base = explore(premise, kb, env.search, *env.resources.lexicon);
  std::cout << "premise\t" << render_polarized(premise) << '\n';
  for (const auto& item : base.entailments) {
    if (item.depth > 0) std::cout << "E\t" << item.depth << '\t' << join(item.sentence) << '\n';
  }
  for (const auto& item : base.contradictions) {
    std::cout << "C\t" << item.depth << '\t' << join(item.sentence) << '\n';
  }
  if (base.cap_exceeded) std::cerr << "diagnostic: sentence base cap of " << c.max_generated << " exceeded\n";
  return 0;
}

int cmd_kb_dump(const RunConfig& c, const std::vector<std::string>& pair) {
  Loaded env(c);
  if (pair.size() != 2) throw UsageError("kb-dump needs PREMISE and HYPOTHESIS (quoted)");
  const auto premise = env.polarized(joined({pair[0]}));
  const auto hypothesis =
      lemmas_of(preprocess(joined({pair[1]}), env.transforms, *env.resources.lexicon, *env.resources.rewrites));
  std::cout << build_kb(premise, hypothesis, *env.resources.resource, env.resources.extra, *env.resources.lexicon)
                   .dump();
  return 0;
}

int cmd_augment(const RunConfig& c) {
  if (c.corpus_path.empty()) throw UsageError("augment needs --corpus");
  if (c.out_path.empty()) throw UsageError("augment needs --out");
  if (!c.any_fraction && c.fraction != 0.25 && c.fraction != 0.5 && c.fraction != 1.0) {
    throw UsageError("--fraction must be 0.25, 0.5 or 1.0 (use --any-fraction to override)");
  }
  if (c.fraction <= 0 || c.fraction > 1) throw UsageError("--fraction must be in (0, 1]");
  Loaded env(c);
  AugmentConfig ac;
  ac.search = env.search;
  ac.transforms = env.transforms;
  ac.threads = c.threads;
  const auto generated = generate_pairs(load_corpus(c.corpus_path), env.resources, ac);
  for (const auto& d : generated.diagnostics) std::cerr << "diagnostic: " << d << '\n';
  const auto filtered = filter_repeated_bigrams(generated.pairs);
  std::vector<GeneratedPair> sampled;
  if (c.fraction == 0.25 || c.fraction == 0.5 || c.fraction == 1.0) {
    sampled = sample_fraction(filtered, c.fraction, c.seed);
  } else {
    // Overridden fraction: same procedure, computed from a full shuffle.
    auto all = sample_fraction(filtered, 1.0, c.seed);
    std::vector<std::size_t> idx(all.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937_64 rng(c.seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(static_cast<std::size_t>(c.fraction * static_cast<double>(all.size())));
    std::sort(idx.begin(), idx.end());
    for (auto i : idx) sampled.push_back(all[i]);
  }
  export_pairs(sampled, c.out_path);
  const auto entail = std::count_if(sampled.begin(), sampled.end(),
                                    [](const GeneratedPair& p) { return p.label == NliLabel::Entail; });
  std::cout << "pairs=" << sampled.size() << " E=" << entail << " C=" << sampled.size() - entail
            << " generated=" << generated.pairs.size() << " filtered=" << filtered.size() << '\n';
  return 0;
}

int cmd_eval(const RunConfig& c) {
  if (c.corpus_path.empty()) throw UsageError("eval needs --corpus");
  if (c.mode != "engine" && c.mode != "hybrid") throw UsageError("--mode must be engine or hybrid");
  Loaded env(c);
  auto problems = load_corpus(c.corpus_path);
  if (!c.overlay_path.empty()) {
    auto corrected = apply_corrections(problems, c.overlay_path);
    std::cout << "corrections applied: " << corrected.changed << '\n';
    problems = std::move(corrected.problems);
  }
  PipelineConfig pc;
  pc.search = env.search;
  pc.transforms = env.transforms;
  pc.threads = c.threads;
  pc.threshold = c.threshold;
  std::unique_ptr<BackoffClassifier> backoff;
  if (c.mode == "hybrid") {
    backoff = make_backoff(c.backoff);
    pc.backoff = backoff.get();
  }
  const auto result = run_pipeline(problems, env.resources, pc);
  if (!c.traces_path.empty()) write_file_atomic(c.traces_path, traces_to_jsonl(result.traces));
  if (!result.report) throw Error("corpus has problems without gold labels");
  const std::string name = c.mode == "hybrid" ? "natlog+" + c.backoff : "natlog";
  std::cout << format_report_table({{name, *result.report}}) << format_report_kv(*result.report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"natlog: natural-logic inference over polarized derivations"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig c;
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with option values (flags take precedence)");
  app.add_option("--lexicon", c.lexicon_path, "lexicon TSV (default: bundled)");
  app.add_option("--resource", c.resource_path, "lexical resource TSV (default: bundled)");
  app.add_option("--rewrites", c.rewrites_path, "rewrite table TSV (default: bundled)");
  app.add_option("--relations", c.relations_path, "extra KB relations TSV");
  app.add_option("--depth", c.depth, "search depth");
  app.add_option("--max-generated", c.max_generated, "sentence base cap");
  app.add_option("--transforms", c.transforms, "all, none, or a comma list of pass2act,existential,rewrites");
  app.add_option("--fraction", c.fraction, "augment sample fraction: 0.25, 0.5 or 1.0");
  app.add_flag("--any-fraction", c.any_fraction, "allow any fraction in (0, 1]");
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--backoff", c.backoff, "hybrid backoff: neutral, overlap or gold");
  app.add_option("--mode", c.mode, "eval mode: engine or hybrid");
  app.add_option("--threshold", c.threshold, "hybrid confidence threshold");
  app.add_option("--overlay", c.overlay_path, "corrected-label overlay TSV");
  app.add_option("--threads", c.threads, "worker threads (0 = all cores)");

  std::vector<std::string> words, pair;
  std::string file;
  auto* polarize_cmd = app.add_subcommand("polarize", "print the polarity of every token");
  polarize_cmd->add_option("sentence", words, "sentence words");
  polarize_cmd->add_option("--file", file, "one sentence per line");
  auto* classify_cmd = app.add_subcommand("classify", "label a premise/hypothesis pair or a corpus");
  classify_cmd->add_option("pair", pair, "PREMISE HYPOTHESIS");
  classify_cmd->add_option("--corpus", c.corpus_path, "corpus TSV");
  classify_cmd->add_option("--traces", c.traces_path, "write per-problem JSON lines here");
  auto* generate_cmd = app.add_subcommand("generate", "print the sentence base of one sentence");
  generate_cmd->add_option("sentence", words, "sentence words");
  auto* augment_cmd = app.add_subcommand("augment", "write generated training pairs");
  augment_cmd->add_option("--corpus", c.corpus_path, "corpus TSV");
  augment_cmd->add_option("--out", c.out_path, "output TSV");
  auto* eval_cmd = app.add_subcommand("eval", "evaluate on a labeled corpus");
  eval_cmd->add_option("--corpus", c.corpus_path, "corpus TSV");
  eval_cmd->add_option("--traces", c.traces_path, "write per-problem JSON lines here");
  auto* kb_cmd = app.add_subcommand("kb-dump", "print the knowledge base built for a pair");
  kb_cmd->add_option("pair", pair, "PREMISE HYPOTHESIS");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    if (!config_path.empty()) apply_config_file(config_path, app, c);
    if (polarize_cmd->parsed()) return cmd_polarize(c, words, file);
    if (classify_cmd->parsed()) return cmd_classify(c, pair);
    if (generate_cmd->parsed()) return cmd_generate(c, words);
    if (augment_cmd->parsed()) return cmd_augment(c);
    if (eval_cmd->parsed()) return cmd_eval(c);
    if (kb_cmd->parsed()) return cmd_kb_dump(c, pair);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
