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

#include <filesystem>
#include <set>

#include "natlog/augment.hpp"
#include "natlog/bundled.hpp"
#include "natlog/evalharness.hpp"
#include "natlog/oracle.hpp"
#include "natlog/tsv.hpp"

using namespace natlog;

namespace {

Phrase P(const char* s) { return split_words(s); }

bool has_pair(const std::vector<GeneratedPair>& pairs, const Phrase& h, NliLabel l) {
  return std::any_of(pairs.begin(), pairs.end(),
                     [&](const GeneratedPair& p) { return p.hypothesis == h && p.label == l; });
}

GeneratedPair pair(const char* h, NliLabel l = NliLabel::Entail) { return {P("a man walk"), P(h), l, "1", 1}; }

}  // namespace

TEST_CASE("pairs from a negated premise") {
  Resources res;
  res.extra = {{RelationKind::Leq, P("woman"), P("person")}};
  auto out = generate_pairs({{"1", "A woman is not cooking something", "A person is not cooking something", {}}}, res);
  CHECK(out.diagnostics.empty());
  CHECK(has_pair(out.pairs, P("a person be not cook something"), NliLabel::Entail));
  for (const auto& p : out.pairs) {
    CHECK(p.premise == P("a woman be not cook something"));
    CHECK(p.hypothesis != p.premise);
    CHECK(p.source_id == "1");
  }
}

TEST_CASE("no becomes some") {
  auto out = generate_pairs({{"4", "No panda is climbing", "A panda is climbing", {}}});
  CHECK(has_pair(out.pairs, P("some panda be climb"), NliLabel::Contradict));
}

TEST_CASE("premise outside the fragment") {
  auto out = generate_pairs({{"9", "Colorless green ideas sleep furiously", "x", {}}});
  CHECK(out.pairs.empty());
  REQUIRE(out.diagnostics.size() == 1);
  CHECK(out.diagnostics[0].starts_with("9: "));
}

TEST_CASE("pairs are deduplicated across problems and deterministic") {
  std::vector<ProblemRecord> problems{{"1", "a dog barks", "an animal barks", {}},
                                      {"2", "a dog barks", "an animal barks", {}}};
  AugmentConfig one_thread;
  one_thread.threads = 1;
  AugmentConfig four;
  four.threads = 4;
  auto a = generate_pairs(problems, {}, one_thread);
  auto b = generate_pairs(problems, {}, four);
  CHECK(a.pairs == b.pairs);
  std::set<std::tuple<Phrase, Phrase, NliLabel>> seen;
  for (const auto& p : a.pairs) {
    CHECK(seen.insert({p.premise, p.hypothesis, p.label}).second);
    CHECK(p.source_id == "1");
  }
}

TEST_CASE("repeated bigram filter") {
  auto out = filter_repeated_bigrams(
      {pair("young young man be walk"), pair("a man be talk"),
       pair("a south african plane be not fly in a very blue sky in a blue sky")});
  REQUIRE(out.size() == 2);
  CHECK(out[0].hypothesis == P("a man be talk"));
  // Known limitation: repeated phrases that are not adjacent lemmas pass.
  CHECK(out[1].hypothesis.size() == 16);
}

TEST_CASE("sampling") {
  std::vector<GeneratedPair> many;
  for (int i = 0; i < 1000; ++i) many.push_back({P("a man walk"), P("a person walk"), NliLabel::Entail, std::to_string(i), 1});
  auto quarter = sample_fraction(many, 0.25, 7);
  CHECK(quarter.size() == 250);
  CHECK(quarter == sample_fraction(many, 0.25, 7));
  CHECK(sample_fraction(many, 1.0, 3) == many);
  auto h1 = sample_fraction(many, 0.5, 1), h2 = sample_fraction(many, 0.5, 2);
  CHECK(h1.size() == 500);
  CHECK(h2.size() == 500);
  CHECK(h1 != h2);
  CHECK(sample_fraction(std::vector<GeneratedPair>(7, pair("a person walk")), 0.5, 1).size() == 3);
  CHECK_THROWS(sample_fraction(many, 0.3, 1));
  // Order is preserved.
  for (std::size_t i = 1; i < quarter.size(); ++i) CHECK(std::stoi(quarter[i - 1].source_id) < std::stoi(quarter[i].source_id));
}

TEST_CASE("export and reload") {
  const auto dir = std::filesystem::temp_directory_path() / "natlog_augment_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "pairs.tsv").string();
  std::vector<GeneratedPair> pairs{pair("a person walk"), pair("no man walk", NliLabel::Contradict), pair("a man move")};
  export_pairs(pairs, path);
  const auto text = read_file(path);
  const auto lines = split_lines(text);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "pair_ID\tsentence_A\tsentence_B\tentailment_label\tsource_id\tdepth");
  CHECK(lines[2] == "2\ta man walk\tno man walk\tCONTRADICTION\t1\t1");
  auto back = load_corpus(path);
  REQUIRE(back.size() == 3);
  CHECK(back[0].gold == NliLabel::Entail);
  CHECK(back[1].gold == NliLabel::Contradict);
  CHECK(back[2].hypothesis == "a man move");
  export_pairs({}, path);
  CHECK(read_file(path) == "pair_ID\tsentence_A\tsentence_B\tentailment_label\tsource_id\tdepth\n");
  CHECK_THROWS_AS(export_pairs(pairs, (dir / "missing" / "x.tsv").string()), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("exported labels hold under the oracle") {
  std::vector<ProblemRecord> problems{
      {"1", "A schoolgirl with a black bag is on a crowded train", "A girl is on a train", {}},
      {"2", "Every linguist swims", "Every semanticist moves", {}},
      {"3", "No man is sitting", "A woman is standing", {}},
      {"4", "A dog is chasing a cat", "An animal is chasing a cat", {}},
  };
  auto out = filter_repeated_bigrams(generate_pairs(problems).pairs);
  REQUIRE(out.size() > 20);
  std::map<std::string, KnowledgeBase> kbs;
  for (const auto& p : problems) kbs[p.id] = problem_kb(p);
  std::uint64_t seed = 0;
  for (const auto& p : out) {
    CHECK_FALSE(has_repeated_bigram(p.hypothesis));
    const std::string h = join(p.hypothesis);
    CAPTURE(h);
    const auto& kb = kbs.at(p.source_id);
    const auto v = p.label == NliLabel::Entail
                       ? entails_under(kb, parse_fragment(p.premise), parse_fragment(p.hypothesis), 80, ++seed)
                       : contradicts_under(kb, parse_fragment(p.premise), parse_fragment(p.hypothesis), 80, ++seed);
    if (auto* c = std::get_if<Counterexample>(&v)) FAIL(c->model.to_table());
  }
}

TEST_CASE("mini-corpus augmentation passes the bigram filter") {
  const auto ps = parse_corpus(bundled_mini_corpus());
  const auto out = generate_pairs(ps);
  const auto kept = filter_repeated_bigrams(out.pairs);
  CHECK(kept.size() > 100);
  CHECK(kept.size() <= out.pairs.size());
  for (const auto& p : kept) {
    CHECK_FALSE(has_repeated_bigram(p.premise));
    CHECK_FALSE(has_repeated_bigram(p.hypothesis));
  }
}
