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

#include <json.hpp>
#include <random>

#include "natlog/syntax.hpp"

using namespace natlog;
using nlohmann::json;

namespace {

const char* kEveryLinguistSwim = R"({"apply": {"cat": "S",
  "fn": {"apply": {"cat": "S/(S\\NP)[+]",
    "fn": {"leaf": {"lemma": "every", "cat": "(S/(S\\NP)[+])/N[-]"}},
    "arg": {"leaf": {"lemma": "linguist", "cat": "N"}}}},
  "arg": {"leaf": {"lemma": "swim", "cat": "S\\NP"}}}})";

// Independent combination check on a JSON document: returns the node's
// category or nullptr when some Apply is ill-formed.
CategoryPtr check(const json& j) {
  if (j.contains("leaf")) return parse_category(j["leaf"]["cat"].get<std::string>());
  if (j.contains("lift")) {
    auto a = check(j["lift"]["arg"]);
    if (!a || !a->same_shape(*cat::N())) return nullptr;
    auto c = parse_category(j["lift"]["cat"].get<std::string>());
    return is_quantifier_shape(*c) ? c : nullptr;
  }
  auto fn = check(j["apply"]["fn"]);
  auto arg = check(j["apply"]["arg"]);
  if (!fn || !arg || fn->is_atomic() || !fn->argument()->same_shape(*arg)) return nullptr;
  auto declared = parse_category(j["apply"]["cat"].get<std::string>());
  return *declared == *fn->result() ? declared : nullptr;
}

void collect(json& j, std::vector<json*>& out) {
  out.push_back(&j);
  auto& body = j.begin().value();
  if (body.contains("fn")) collect(body["fn"], out);
  if (body.contains("arg")) collect(body["arg"], out);
}

}  // namespace

TEST_CASE("load_derivation") {
  auto leaf = load_derivation(R"({"leaf": {"lemma": "linguist", "cat": "N"}})");
  CHECK(leaf.root()->kind == Node::Kind::Leaf);
  CHECK(yield_of(leaf) == Phrase{"linguist"});

  auto d = load_derivation(kEveryLinguistSwim);
  CHECK(d.root()->category->str() == "S");
  CHECK(yield_of(d) == split_words("every linguist swim"));
  CHECK(structurally_equal(*d.root(), *parse_fragment(split_words("every linguist swim")).root()));

  CHECK_THROWS_AS(load_derivation(R"({"apply": {"cat": "N",
      "fn": {"leaf": {"lemma": "black", "cat": "N"}},
      "arg": {"leaf": {"lemma": "cat", "cat": "N"}}}})"),
                  CombinationError);
  try {
    load_derivation(R"({"apply": {"cat": "S", "fn": {"leaf": {"lemma": "x", "cat": "S/N"}},
        "arg": {"leaf": {"lemma": "y"}}}})");
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("$.apply.arg.leaf") != std::string::npos);
  }
  CHECK_THROWS_AS(load_derivation("{not json"), SchemaError);
  CHECK_THROWS_AS(load_derivation(R"({"tree": {}})"), SchemaError);
}

TEST_CASE("categories") {
  for (const char* s : {"S", "S\\NP[+]", "(S\\NP)/NP[-]", "(S/(S\\NP)[=])/N[-]", "N/N[+]"}) {
    CHECK(parse_category(parse_category(s)->str())->str() == parse_category(s)->str());
  }
  CHECK(parse_category("S\\NP")->str() == "S\\NP[+]");
  CHECK_THROWS_AS(parse_category("(S"), SchemaError);
  CHECK_THROWS_AS(parse_category("S/NP[x]"), SchemaError);
  CHECK(is_quantifier_shape(*cat::subject_gq(Mono::DownSlot)));
  CHECK(is_quantifier_shape(*cat::object_gq(cat::VP(), Mono::UpSlot)));
  CHECK_FALSE(is_quantifier_shape(*cat::VP()));
}

TEST_CASE("parse_fragment") {
  auto d = parse_fragment(split_words("no schoolgirl be on a crowded train"));
  CHECK(d.root()->category->str() == "S");
  CHECK_THROWS_AS(parse_fragment(split_words("linguist every swim")), NoParseError);
  try {
    parse_fragment(split_words("every linguist frobnicate"));
    FAIL("expected OovError");
  } catch (const OovError& e) {
    CHECK(e.word() == "frobnicate");
  }
  auto fig = parse_fragment(split_words("a schoolgirl with a black bag be on a crowded train"));
  CHECK(yield_of(fig) == Phrase{"a", "schoolgirl", "with", "a", "black", "bag", "be", "on", "a",
                                "crowded", "train"});
  CHECK(yield_of(*make_leaf("swim", cat::VP())) == Phrase{"swim"});
}

TEST_CASE("fragment coverage, round trip and determinism") {
  const char* sentences[] = {
      "every linguist swim",
      "all schoolgirl be on the train",
      "a man next_to a drummer play a guitar",
      "a person play a flute",
      "no girl in white be dance",
      "a girl in white be dance",
      "a woman be not cook something",
      "a man be talk",
      "no panda be climb",
      "some person be cook",
      "every poodle be a dog",
      "a dog that bite be not happy",
      "a_few man dance happily in the morning",
      "most woman do not swim",
      "nothing be on the table",
      "a truck be quickly go down a hill",
      "people dance",
  };
  for (const std::string text : sentences) {
    CAPTURE(text);
    auto words = split_words(text);
    Derivation d;
    REQUIRE_NOTHROW(d = parse_fragment(words));
    CHECK(yield_of(d) == words);
    auto again = parse_fragment(yield_of(d));
    CHECK(structurally_equal(*d.root(), *again.root()));
    auto reloaded = load_derivation(to_json(d));
    CHECK(structurally_equal(*d.root(), *reloaded.root()));
  }
}

TEST_CASE("corrupted documents are rejected") {
  std::mt19937 rng(11);
  const char* bases[] = {"every linguist swim", "a schoolgirl with a black bag be on a crowded train",
                         "few people be eat at red table in a restaurant without light",
                         "no man do not play a guitar"};
  const char* cats[] = {"N", "NP", "S", "S\\NP", "N/N", "(S\\NP)/NP", "S/(S\\NP)[-]", "N\\N[=]"};
  int rejected = 0, invalid = 0;
  for (int round = 0; round < 400; ++round) {
    json doc = json::parse(to_json(parse_fragment(split_words(bases[round % 4]))));
    std::vector<json*> nodes;
    collect(doc, nodes);
    json& target = *nodes[rng() % nodes.size()];
    target.begin().value()["cat"] = cats[rng() % std::size(cats)];
    if (check(doc)) continue;
    ++invalid;
    try {
      load_derivation(doc.dump());
    } catch (const SchemaError&) {
      ++rejected;
    } catch (const CombinationError&) {
      ++rejected;
    }
  }
  CHECK(invalid > 100);
  CHECK(rejected == invalid);
}

TEST_CASE("lexicon") {
  const auto& lex = Lexicon::bundled();
  for (const char* q : {"every", "all", "each", "most", "many", "a_few", "several", "some", "a", "the",
                        "no", "few"}) {
    CAPTURE(q);
    const auto* e = lex.find(q, "DT");
    REQUIRE(e != nullptr);
    CHECK_FALSE(e->category->is_atomic());
    CHECK_FALSE(e->category->result()->is_atomic());
  }
  CHECK(lex.fuse_multiwords(split_words("a few man next to a dog")) ==
        split_words("a_few man next_to a dog"));
  CHECK_THROWS_AS(Lexicon::parse_tsv("dog\tN\n"), SchemaError);
  CHECK_THROWS_AS(Lexicon::parse_tsv("dog\tN\tXX\n"), SchemaError);
}
