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

#include "natlog/evalharness.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include "natlog/tsv.hpp"

namespace natlog {

namespace {

std::string at_line(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line) + ": ";
}

std::size_t column(const std::vector<std::string>& header, std::initializer_list<const char*> names,
                   const std::string& source) {
  for (const char* n : names) {
    auto it = std::find(header.begin(), header.end(), n);
    if (it != header.end()) return static_cast<std::size_t>(it - header.begin());
  }
  throw SchemaError(at_line(source, 1) + "missing column '" + *names.begin() + "'");
}

}  // namespace

std::vector<ProblemRecord> parse_corpus(std::string_view text, const std::string& source) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw SchemaError(at_line(source, 1) + "missing header");
  const auto header = split_tabs(lines[0]);
  const std::size_t id = column(header, {"pair_ID"}, source);
  const std::size_t a = column(header, {"sentence_A"}, source);
  const std::size_t b = column(header, {"sentence_B"}, source);
  const std::size_t label = column(header, {"entailment_judgment", "entailment_label"}, source);
  const std::size_t needed = std::max({id, a, b, label}) + 1;
  std::vector<ProblemRecord> out;
  std::set<std::string> ids;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cols = split_tabs(lines[i]);
    if (cols.size() < needed) {
      throw SchemaError(at_line(source, i + 1) + "expected at least " + std::to_string(needed) + " columns");
    }
    auto gold = parse_label(cols[label]);
    if (!gold) throw SchemaError(at_line(source, i + 1) + "unknown label '" + cols[label] + "'");
    if (!ids.insert(cols[id]).second) throw SchemaError(at_line(source, i + 1) + "duplicate id '" + cols[id] + "'");
    out.push_back({cols[id], cols[a], cols[b], gold});
  }
  return out;
}

std::vector<ProblemRecord> load_corpus(const std::string& path) { return parse_corpus(read_file(path), path); }

CorrectionResult apply_corrections_text(const std::vector<ProblemRecord>& problems, std::string_view overlay,
                                        const std::string& source) {
  CorrectionResult out;
  out.problems = problems;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < problems.size(); ++i) index[problems[i].id] = i;
  const auto lines = split_lines(overlay);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!is_data_line(lines[i])) continue;
    const auto cols = split_tabs(lines[i]);
    if (i == 0 && cols[0] == "pair_ID") continue;
    if (cols.size() < 2) throw SchemaError(at_line(source, i + 1) + "expected pair_ID and corrected_label");
    auto label = parse_label(cols[1]);
    if (!label) throw SchemaError(at_line(source, i + 1) + "unknown label '" + cols[1] + "'");
    auto it = index.find(cols[0]);
    if (it == index.end()) throw UnknownId(at_line(source, i + 1) + "no problem with id '" + cols[0] + "'");
    auto& gold = out.problems[it->second].gold;
    if (gold != label) {
      if (gold) ++out.breakdown[{*gold, *label}];
      ++out.changed;
      gold = label;
    }
  }
  return out;
}

CorrectionResult apply_corrections(const std::vector<ProblemRecord>& problems, const std::string& overlay_path) {
  return apply_corrections_text(problems, read_file(overlay_path), overlay_path);
}

std::size_t label_index(NliLabel l) {
  switch (l) {
    case NliLabel::Entail: return 0;
    case NliLabel::Contradict: return 1;
    case NliLabel::Neutral: return 2;
  }
  return 2;
}

EvalReport evaluate(const std::map<std::string, NliLabel>& predictions, const std::vector<ProblemRecord>& gold) {
  EvalReport r;
  for (const auto& p : gold) {
    if (!p.gold) throw Error("problem '" + p.id + "' has no gold label");
    auto it = predictions.find(p.id);
    if (it == predictions.end()) throw MissingPrediction("no prediction for '" + p.id + "'");
    ++r.confusion[label_index(*p.gold)][label_index(it->second)];
    ++r.total;
  }
  int correct = 0;
  for (std::size_t i = 0; i < 3; ++i) correct += r.confusion[i][i];
  r.accuracy = r.total ? 100.0 * correct / r.total : 0;
  for (auto l : kLabels) {
    const std::size_t k = label_index(l);
    int predicted = 0, actual = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      predicted += r.confusion[i][k];
      actual += r.confusion[k][i];
    }
    LabelScores s;
    s.no_predictions = predicted == 0;
    s.no_gold = actual == 0;
    s.precision = predicted ? 100.0 * r.confusion[k][k] / predicted : 0;
    s.recall = actual ? 100.0 * r.confusion[k][k] / actual : 0;
    r.macro_precision += s.precision / 3;
    r.macro_recall += s.recall / 3;
    r.per_label[l] = s;
  }
  return r;
}

namespace {

BackoffOutput certain(NliLabel l) {
  BackoffOutput out;
  out.label = l;
  out.confidence = {0, 0, 0};
  out.confidence[label_index(l)] = 1;
  return out;
}

}  // namespace

BackoffOutput NeutralBackoff::classify(const ProblemRecord&) const { return certain(NliLabel::Neutral); }

BackoffOutput GoldBackoff::classify(const ProblemRecord& problem) const {
  return certain(problem.gold.value_or(NliLabel::Neutral));
}

BackoffOutput OverlapBackoff::classify(const ProblemRecord& problem) const {
  const TransformConfig none = TransformConfig::none();
  Phrase p, h;
  try {
    p = lemmas_of(preprocess(problem.premise, none));
    h = lemmas_of(preprocess(problem.hypothesis, none));
  } catch (const Error&) {
    return certain(NliLabel::Neutral);
  }
  if (h.empty()) return certain(NliLabel::Neutral);
  const std::set<std::string> pw(p.begin(), p.end());
  int shared = 0;
  for (const auto& w : h) shared += pw.count(w) ? 1 : 0;
  const double overlap = static_cast<double>(shared) / static_cast<double>(h.size());
  auto negated = [](const Phrase& s) {
    return std::any_of(s.begin(), s.end(), [](const std::string& w) { return w == "no" || w == "not"; });
  };
  BackoffOutput out;
  const double strength = overlap * overlap;
  if (negated(p) != negated(h)) {
    out.confidence = {0, strength, 1 - strength};
  } else {
    out.confidence = {strength, 0, 1 - strength};
  }
  const auto best = std::max_element(out.confidence.begin(), out.confidence.end()) - out.confidence.begin();
  out.label = kLabels[static_cast<std::size_t>(best)];
  return out;
}

std::unique_ptr<BackoffClassifier> make_backoff(const std::string& name) {
  if (name == "neutral") return std::make_unique<NeutralBackoff>();
  if (name == "overlap") return std::make_unique<OverlapBackoff>();
  if (name == "gold") return std::make_unique<GoldBackoff>();
  throw Error("unknown backoff '" + name + "' (expected neutral, overlap or gold)");
}

NliLabel hybrid_classify(const ProblemRecord& problem, NliLabel engine_label, const BackoffClassifier& backoff,
                         double threshold) {
  if (engine_label != NliLabel::Neutral) return engine_label;
  const BackoffOutput b = backoff.classify(problem);
  if (b.label != NliLabel::Neutral && b.confidence[label_index(b.label)] < threshold) return NliLabel::Neutral;
  return b.label;
}

PipelineResult run_pipeline(const std::vector<ProblemRecord>& problems, const Resources& resources,
                            const PipelineConfig& config) {
  PipelineResult out;
  out.traces.resize(problems.size());
  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(problems.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < problems.size(); i = next++) {
      const auto& p = problems[i];
      ProblemTrace& t = out.traces[i];
      t.id = p.id;
      t.gold = p.gold;
      t.classification = classify(p, resources, config.search, config.transforms);
      t.engine = t.classification.label;
      t.label = config.backoff ? hybrid_classify(p, t.engine, *config.backoff, config.threshold) : t.engine;
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  bool all_gold = true;
  for (const auto& t : out.traces) {
    out.predictions[t.id] = t.label;
    all_gold = all_gold && t.gold.has_value();
  }
  if (all_gold) out.report = evaluate(out.predictions, problems);
  return out;
}

std::string traces_to_jsonl(const std::vector<ProblemTrace>& traces) {
  using nlohmann::json;
  std::string out;
  for (const auto& t : traces) {
    json j;
    j["id"] = t.id;
    j["gold"] = t.gold ? json(std::string(label_name(*t.gold))) : json(nullptr);
    j["engine"] = label_name(t.engine);
    j["label"] = label_name(t.label);
    j["premise"] = join(t.classification.premise);
    j["hypothesis"] = join(t.classification.hypothesis);
    j["diagnostics"] = t.classification.diagnostics;
    if (t.classification.proof) {
      json steps = json::array();
      for (const auto& s : t.classification.proof->steps) {
        steps.push_back({{"rule", s.edit.rule},
                         {"before", join(s.edit.before)},
                         {"after", join(s.edit.after)},
                         {"sentence", join(s.after)}});
      }
      j["proof"] = steps;
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string format_report_table(const std::vector<std::pair<std::string, EvalReport>>& rows) {
  std::size_t width = 6;
  for (const auto& [name, _] : rows) width = std::max(width, name.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width)) << "system" << std::right << std::setw(9) << "P"
      << std::setw(9) << "R" << std::setw(9) << "acc." << '\n';
  out << std::fixed << std::setprecision(2);
  for (const auto& [name, r] : rows) {
    out << std::left << std::setw(static_cast<int>(width)) << name << std::right << std::setw(9)
        << r.macro_precision << std::setw(9) << r.macro_recall << std::setw(9) << r.accuracy << '\n';
  }
  return out.str();
}

std::string format_report_kv(const EvalReport& r) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << "total=" << r.total << '\n' << "accuracy=" << r.accuracy << '\n';
  out << "macro_precision=" << r.macro_precision << '\n' << "macro_recall=" << r.macro_recall << '\n';
  for (auto l : kLabels) {
    const auto& s = r.per_label.at(l);
    const char c = label_letter(l);
    out << "precision_" << c << '=' << s.precision << (s.no_predictions ? " (no predictions)" : "") << '\n';
    out << "recall_" << c << '=' << s.recall << (s.no_gold ? " (no gold)" : "") << '\n';
  }
  for (auto g : kLabels) {
    for (auto p : kLabels) {
      out << "confusion_" << label_letter(g) << label_letter(p) << '=' << r.confusion[label_index(g)][label_index(p)]
          << '\n';
    }
  }
  return out.str();
}

}  // namespace natlog
