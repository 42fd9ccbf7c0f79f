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

// Corpus loading, metrics and the hybrid classification rule.

#ifndef NATLOG_EVALHARNESS_HPP_
#define NATLOG_EVALHARNESS_HPP_

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "natlog/engine.hpp"

namespace natlog {

class UnknownId : public Error {
 public:
  using Error::Error;
};
class MissingPrediction : public Error {
 public:
  using Error::Error;
};

// Tab-separated with a header naming at least pair_ID, sentence_A,
// sentence_B and entailment_judgment (or entailment_label); other columns
// are ignored. Errors name the source and line.
std::vector<ProblemRecord> parse_corpus(std::string_view text, const std::string& source = "<corpus>");
std::vector<ProblemRecord> load_corpus(const std::string& path);

struct CorrectionResult {
  std::vector<ProblemRecord> problems;
  int changed = 0;
  // (old, new) -> count, over labels that actually changed.
  std::map<std::pair<NliLabel, NliLabel>, int> breakdown;
};

// Overlay columns pair_ID, corrected_label. Throws UnknownId for an id not
// in `problems`.
CorrectionResult apply_corrections_text(const std::vector<ProblemRecord>& problems, std::string_view overlay,
                                        const std::string& source = "<overlay>");
CorrectionResult apply_corrections(const std::vector<ProblemRecord>& problems, const std::string& overlay_path);

inline constexpr std::array<NliLabel, 3> kLabels{NliLabel::Entail, NliLabel::Contradict, NliLabel::Neutral};
std::size_t label_index(NliLabel l);

struct LabelScores {
  double precision = 0;  // percent
  double recall = 0;     // percent
  bool no_predictions = false;  // precision reported as 0
  bool no_gold = false;         // recall reported as 0
};

struct EvalReport {
  double accuracy = 0;  // percent
  std::map<NliLabel, LabelScores> per_label;
  double macro_precision = 0;  // unweighted mean over the three labels
  double macro_recall = 0;
  // confusion[gold][predicted], indexed by label_index.
  std::array<std::array<int, 3>, 3> confusion{};
  int total = 0;
};

// Throws MissingPrediction when a gold id has no prediction and Error when
// a problem carries no gold label.
EvalReport evaluate(const std::map<std::string, NliLabel>& predictions, const std::vector<ProblemRecord>& gold);

struct BackoffOutput {
  NliLabel label = NliLabel::Neutral;
  std::array<double, 3> confidence{0, 0, 1};  // by label_index, sums to 1
};

class BackoffClassifier {
 public:
  virtual ~BackoffClassifier() = default;
  virtual std::string name() const = 0;
  virtual BackoffOutput classify(const ProblemRecord& problem) const = 0;
};

// Always N with full confidence.
class NeutralBackoff : public BackoffClassifier {
 public:
  std::string name() const override { return "neutral"; }
  BackoffOutput classify(const ProblemRecord& problem) const override;
};

// Word overlap between lemmatized premise and hypothesis, with a negation
// mismatch read as contradiction.
class OverlapBackoff : public BackoffClassifier {
 public:
  std::string name() const override { return "overlap"; }
  BackoffOutput classify(const ProblemRecord& problem) const override;
};

// Returns the gold label with confidence 1 (for testing the hybrid rule).
class GoldBackoff : public BackoffClassifier {
 public:
  std::string name() const override { return "gold"; }
  BackoffOutput classify(const ProblemRecord& problem) const override;
};

// "neutral", "overlap" or "gold"; throws Error otherwise.
std::unique_ptr<BackoffClassifier> make_backoff(const std::string& name);

// Engine E or C is kept. Otherwise the backoff decides, except that an E or
// C it is less than `threshold` confident about becomes N.
NliLabel hybrid_classify(const ProblemRecord& problem, NliLabel engine_label, const BackoffClassifier& backoff,
                         double threshold = 0.95);

struct PipelineConfig {
  SearchConfig search;
  TransformConfig transforms;
  const BackoffClassifier* backoff = nullptr;  // nullptr: engine alone
  double threshold = 0.95;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct ProblemTrace {
  std::string id;
  std::optional<NliLabel> gold;
  NliLabel engine = NliLabel::Neutral;
  NliLabel label = NliLabel::Neutral;
  Classification classification;
};

struct PipelineResult {
  std::vector<ProblemTrace> traces;  // corpus order
  std::map<std::string, NliLabel> predictions;
  std::optional<EvalReport> report;  // when every problem has a gold label
};

PipelineResult run_pipeline(const std::vector<ProblemRecord>& problems, const Resources& resources = {},
                            const PipelineConfig& config = {});

// One JSON object per line.
std::string traces_to_jsonl(const std::vector<ProblemTrace>& traces);

// Aligned table, one row per system: P, R, acc.
std::string format_report_table(const std::vector<std::pair<std::string, EvalReport>>& rows);
// "key=value" lines.
std::string format_report_kv(const EvalReport& report);

}  // namespace natlog

#endif  // NATLOG_EVALHARNESS_HPP_
