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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "natlog/augment.hpp"
#include "natlog/bundled.hpp"
#include "natlog/evalharness.hpp"
#include "natlog/oracle.hpp"
#include "natlog/tsv.hpp"

using namespace natlog;

namespace {

const char* kHeader = "pair_ID\tsentence_A\tsentence_B\tentailment_judgment\n";

std::vector<ProblemRecord> corpus(std::initializer_list<std::pair<const char*, NliLabel>> golds) {
  std::vector<ProblemRecord> out;
  for (const auto& [id, g] : golds) out.push_back({id, "a man walk", "a man walk", g});
  return out;
}

// Fixed-confidence backoff for the threshold rule.
class Fixed : public BackoffClassifier {
 public:
  Fixed(NliLabel l, double c) {
    out_.label = l;
    out_.confidence = {0, 0, 0};
    out_.confidence[label_index(l)] = c;
    out_.confidence[label_index(l == NliLabel::Neutral ? NliLabel::Entail : NliLabel::Neutral)] = 1 - c;
  }
  std::string name() const override { return "fixed"; }
  BackoffOutput classify(const ProblemRecord&) const override { return out_; }

 private:
  BackoffOutput out_;
};

}  // namespace

TEST_CASE("corpus loading") {
  auto ps = parse_corpus(std::string(kHeader) +
                         "219\tThere is no girl in white dancing\tA girl in white is dancing\tCONTRADICTION\n");
  REQUIRE(ps.size() == 1);
  CHECK(ps[0].id == "219");
  CHECK(ps[0].premise == "There is no girl in white dancing");
  CHECK(ps[0].hypothesis == "A girl in white is dancing");
  CHECK(ps[0].gold == NliLabel::Contradict);
  CHECK(parse_corpus(kHeader).empty());

  try {
    parse_corpus(std::string(kHeader) + "1\ta\tb\tNEUTRAL\n2\ta\tb\tMAYBE\n", "toy.tsv");
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).starts_with("toy.tsv:3: "));
  }
  CHECK_THROWS_AS(parse_corpus("id\tA\tB\tlabel\n"), SchemaError);
  CHECK_THROWS_AS(parse_corpus(std::string(kHeader) + "1\ta\n"), SchemaError);
  CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.tsv"), IoError);
  // Extra columns in any order.
  auto sick = parse_corpus("pair_ID\tsentence_A\tsentence_B\trelatedness_score\tentailment_judgment\n"
                           "5\tp\th\t4.5\tENTAILMENT\n");
  CHECK(sick[0].gold == NliLabel::Entail);
}

TEST_CASE("corrections overlay") {
  auto ps = corpus({{"294", NliLabel::Neutral}, {"1", NliLabel::Entail}});
  auto r = apply_corrections_text(ps, "pair_ID\tcorrected_label\n294\tCONTRADICTION\n");
  CHECK(r.changed == 1);
  CHECK(r.problems[0].gold == NliLabel::Contradict);
  CHECK(r.problems[1].gold == NliLabel::Entail);
  CHECK((r.breakdown == std::map<std::pair<NliLabel, NliLabel>, int>{{{NliLabel::Neutral, NliLabel::Contradict}, 1}}));
  CHECK(apply_corrections_text(ps, "").problems[0].gold == NliLabel::Neutral);
  // Idempotent.
  auto again = apply_corrections_text(r.problems, "294\tCONTRADICTION\n");
  CHECK(again.changed == 0);
  CHECK(again.problems[0].gold == r.problems[0].gold);
  CHECK_THROWS_AS(apply_corrections_text(ps, "999\tENTAILMENT\n"), UnknownId);
}

TEST_CASE("correction breakdown counts each kind of change") {
  std::vector<ProblemRecord> ps;
  std::string overlay;
  auto add = [&](int n, NliLabel from, const char* to) {
    for (int i = 0; i < n; ++i) {
      const std::string id = std::to_string(ps.size());
      ps.push_back({id, "p", "h", from});
      overlay += id + "\t" + to + "\n";
    }
  };
  add(14, NliLabel::Neutral, "ENTAILMENT");
  add(7, NliLabel::Entail, "CONTRADICTION");
  add(190, NliLabel::Neutral, "CONTRADICTION");
  add(198, NliLabel::Entail, "NEUTRAL");
  add(5, NliLabel::Entail, "ENTAILMENT");  // listed but unchanged
  auto r = apply_corrections_text(ps, overlay);
  CHECK(r.changed == 409);
  CHECK(r.breakdown.at({NliLabel::Neutral, NliLabel::Entail}) == 14);
  CHECK(r.breakdown.at({NliLabel::Entail, NliLabel::Contradict}) == 7);
  CHECK(r.breakdown.at({NliLabel::Neutral, NliLabel::Contradict}) == 190);
  CHECK(r.breakdown.at({NliLabel::Entail, NliLabel::Neutral}) == 198);
}

TEST_CASE("metrics") {
  auto gold = corpus({{"1", NliLabel::Entail}, {"2", NliLabel::Contradict}});
  auto r = evaluate({{"1", NliLabel::Entail}, {"2", NliLabel::Entail}}, gold);
  CHECK(r.accuracy == doctest::Approx(50));
  CHECK(r.per_label[NliLabel::Entail].precision == doctest::Approx(50));
  CHECK(r.per_label[NliLabel::Entail].recall == doctest::Approx(100));
  CHECK(r.per_label[NliLabel::Contradict].precision == 0);
  CHECK(r.per_label[NliLabel::Contradict].no_predictions);
  CHECK(r.per_label[NliLabel::Contradict].recall == 0);
  CHECK(r.confusion[1][0] == 1);

  auto perfect = evaluate({{"1", NliLabel::Entail}, {"2", NliLabel::Contradict}}, gold);
  CHECK(perfect.accuracy == doctest::Approx(100));
  CHECK_THROWS_AS(evaluate({{"1", NliLabel::Entail}}, gold), MissingPrediction);
}

TEST_CASE("majority baseline") {
  // 5636 of 10000 neutral.
  std::vector<ProblemRecord> gold;
  std::map<std::string, NliLabel> pred;
  for (int i = 0; i < 10000; ++i) {
    const std::string id = std::to_string(i);
    gold.push_back({id, "p", "h", i < 5636 ? NliLabel::Neutral : (i % 2 ? NliLabel::Entail : NliLabel::Contradict)});
    pred[id] = NliLabel::Neutral;
  }
  CHECK(evaluate(pred, gold).accuracy == doctest::Approx(56.36));
}

TEST_CASE("metric invariants on random predictions") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 200; ++round) {
    std::vector<ProblemRecord> gold;
    std::map<std::string, NliLabel> pred;
    const int n = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) {
      const std::string id = std::to_string(i);
      gold.push_back({id, "p", "h", kLabels[rng() % 3]});
      pred[id] = kLabels[rng() % 3];
    }
    const auto r = evaluate(pred, gold);
    int trace = 0, sum = 0;
    for (std::size_t g = 0; g < 3; ++g) {
      int row = 0;
      for (std::size_t p = 0; p < 3; ++p) {
        row += r.confusion[g][p];
        sum += r.confusion[g][p];
      }
      trace += r.confusion[g][g];
      CHECK(row == std::count_if(gold.begin(), gold.end(), [&](const ProblemRecord& x) { return label_index(*x.gold) == g; }));
    }
    CHECK(sum == n);
    CHECK(r.accuracy == doctest::Approx(100.0 * trace / n));
    double mp = 0;
    for (auto l : kLabels) mp += r.per_label.at(l).precision;
    CHECK(r.macro_precision == doctest::Approx(mp / 3));
    auto shuffled = gold;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto r2 = evaluate(pred, shuffled);
    CHECK(r2.confusion == r.confusion);
    CHECK(r2.macro_recall == doctest::Approx(r.macro_recall));
  }
}

TEST_CASE("hybrid rule") {
  ProblemRecord p{"1", "p", "h", NliLabel::Contradict};
  NeutralBackoff neutral;
  CHECK(hybrid_classify(p, NliLabel::Entail, neutral) == NliLabel::Entail);
  CHECK(hybrid_classify(p, NliLabel::Contradict, Fixed(NliLabel::Entail, 1.0)) == NliLabel::Contradict);
  CHECK(hybrid_classify(p, NliLabel::Neutral, Fixed(NliLabel::Entail, 0.96)) == NliLabel::Entail);
  CHECK(hybrid_classify(p, NliLabel::Neutral, Fixed(NliLabel::Contradict, 0.80)) == NliLabel::Neutral);
  CHECK(hybrid_classify(p, NliLabel::Neutral, Fixed(NliLabel::Entail, 0.95)) == NliLabel::Entail);
  CHECK(hybrid_classify(p, NliLabel::Neutral, Fixed(NliLabel::Entail, 0.9499)) == NliLabel::Neutral);
  CHECK(hybrid_classify(p, NliLabel::Neutral, GoldBackoff()) == NliLabel::Contradict);
  CHECK(hybrid_classify(p, NliLabel::Neutral, neutral) == NliLabel::Neutral);
  CHECK_THROWS(make_backoff("bert"));
}

TEST_CASE("overlap backoff confidences sum to one") {
  OverlapBackoff o;
  for (const auto& [a, b] : std::vector<std::pair<const char*, const char*>>{
           {"A man is walking", "A man is walking"}, {"A man is walking", "No man is walking"}, {"A dog barks", "A cat sleeps"}}) {
    auto out = o.classify({"x", a, b, {}});
    CHECK(out.confidence[0] + out.confidence[1] + out.confidence[2] == doctest::Approx(1));
  }
  CHECK(o.classify({"x", "A man is walking", "A man is walking", {}}).label == NliLabel::Entail);
  CHECK(o.classify({"x", "A man is walking", "No man is walking", {}}).label == NliLabel::Contradict);
}

TEST_CASE("pipeline") {
  std::vector<ProblemRecord> ps{{"1", "Every linguist swims", "Every semanticist swims", NliLabel::Entail},
                                {"2", "No man is sitting", "A man is sitting", NliLabel::Contradict},
                                {"3", "A dog barks", "A cat sleeps", NliLabel::Neutral},
                                {"4", "Colorless ideas sleep furiously", "x y z", NliLabel::Entail}};
  PipelineConfig cfg;
  cfg.threads = 2;
  auto engine = run_pipeline(ps, {}, cfg);
  REQUIRE(engine.report);
  CHECK(engine.predictions.at("1") == NliLabel::Entail);
  CHECK(engine.predictions.at("2") == NliLabel::Contradict);
  CHECK(engine.predictions.at("3") == NliLabel::Neutral);
  CHECK(engine.predictions.at("4") == NliLabel::Neutral);
  CHECK(engine.report->accuracy == doctest::Approx(75));
  GoldBackoff gold;
  cfg.backoff = &gold;
  auto hybrid = run_pipeline(ps, {}, cfg);
  CHECK(hybrid.report->accuracy >= engine.report->accuracy);
  CHECK(hybrid.predictions.at("4") == NliLabel::Entail);
  const auto jsonl = traces_to_jsonl(hybrid.traces);
  CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') == 4);
  CHECK(jsonl.find("\"engine\":\"NEUTRAL\"") != std::string::npos);
  const auto table = format_report_table({{"engine", *engine.report}, {"hybrid", *hybrid.report}});
  CHECK(table.find("hybrid") != std::string::npos);
  CHECK(format_report_kv(*engine.report).find("accuracy=75.00") != std::string::npos);
}

TEST_CASE("bundled mini-corpus") {
  const auto ps = parse_corpus(bundled_mini_corpus(), "mini_corpus.tsv");
  REQUIRE(ps.size() == 40);
  PipelineConfig cfg;
  auto engine = run_pipeline(ps, {}, cfg);
  REQUIRE(engine.report);
  const auto& r = *engine.report;
  CHECK(r.per_label.at(NliLabel::Entail).precision == doctest::Approx(100));
  CHECK(r.per_label.at(NliLabel::Contradict).precision == doctest::Approx(100));
  // Frozen: 20 E, 13 C, 7 N, all recovered.
  CHECK(r.confusion == std::array<std::array<int, 3>, 3>{{{20, 0, 0}, {0, 13, 0}, {0, 0, 7}}});

  // Every E/C verdict is backed by the oracle, with the proof's
  // intermediate sentences as context.
  std::uint64_t seed = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto& t = engine.traces[i];
    if (t.engine == NliLabel::Neutral || !t.classification.proof || t.classification.proof->steps.empty()) continue;
    CAPTURE(t.id);
    const auto kb = problem_kb(ps[i]);
    const auto& steps = t.classification.proof->steps;
    std::vector<Derivation> context;
    for (std::size_t k = 0; k + 1 < steps.size(); ++k) context.push_back(parse_fragment(steps[k].after));
    const auto premise = parse_fragment(t.classification.premise);
    const auto last = parse_fragment(steps.back().after);
    const auto v = t.engine == NliLabel::Entail ? entails_under(kb, premise, last, 200, ++seed, context)
                                                : contradicts_under(kb, premise, last, 200, ++seed, context);
    if (auto* c = std::get_if<Counterexample>(&v)) FAIL(c->model.to_table());
  }

  GoldBackoff gold;
  cfg.backoff = &gold;
  CHECK(run_pipeline(ps, {}, cfg).report->accuracy >= r.accuracy);
}
