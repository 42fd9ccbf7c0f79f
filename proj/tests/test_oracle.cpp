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

#include <functional>

#include "natlog/oracle.hpp"
#include "natlog/polarizer.hpp"

using namespace natlog;

namespace {

Phrase P(const char* s) { return split_words(s); }
Derivation D(const char* s) { return parse_fragment(split_words(s)); }

bool has_counterexample(const OracleVerdict& v) { return std::holds_alternative<Counterexample>(v); }

std::string report(const OracleVerdict& v) {
  if (auto* c = std::get_if<Counterexample>(&v)) {
    return "anchor " + std::to_string(c->anchor) + "\n" + c->model.to_table();
  }
  return "no counterexample";
}

// Hand-written membership tests, deliberately free of bit tricks.
bool in(const FiniteModel& m, const std::string& w, int x) { return (m.unary.at(w) >> x) & 1; }
bool rel(const FiniteModel& m, const std::string& w, int x, int y) {
  return (m.binary.at(w)[static_cast<std::size_t>(x)] >> y) & 1;
}
int how_many(const FiniteModel& m, const std::function<bool(int)>& pred) {
  int n = 0;
  for (int x = 0; x < m.domain; ++x) n += pred(x) ? 1 : 0;
  return n;
}

struct Frame {
  const char* sentence;
  std::function<bool(const FiniteModel&)> truth;
};

std::vector<Frame> frames() {
  auto dog = [](const FiniteModel& m) { return [&m](int x) { return in(m, "dog", x); }; };
  return {
      {"every dog bark",
       [](const FiniteModel& m) {
         for (int x = 0; x < m.domain; ++x) {
           if (in(m, "dog", x) && !in(m, "bark", x)) return false;
         }
         return true;
       }},
      {"no dog bark",
       [=](const FiniteModel& m) { return how_many(m, [&](int x) { return in(m, "dog", x) && in(m, "bark", x); }) == 0; }},
      {"most dog bark",
       [](const FiniteModel& m) {
         int yes = how_many(m, [&](int x) { return in(m, "dog", x) && in(m, "bark", x); });
         int no = how_many(m, [&](int x) { return in(m, "dog", x) && !in(m, "bark", x); });
         return yes > no;
       }},
      {"few dog bark",
       [](const FiniteModel& m) { return how_many(m, [&](int x) { return in(m, "dog", x) && in(m, "bark", x); }) <= 1; }},
      {"the dog bark",
       [dog](const FiniteModel& m) {
         return how_many(m, dog(m)) == 1 &&
                how_many(m, [&](int x) { return in(m, "dog", x) && !in(m, "bark", x); }) == 0;
       }},
      {"a red dog do not bark",
       [](const FiniteModel& m) {
         return how_many(m, [&](int x) { return in(m, "red", x) && in(m, "dog", x) && !in(m, "bark", x); }) >= 1;
       }},
      {"every dog chase a cat",
       [](const FiniteModel& m) {
         for (int x = 0; x < m.domain; ++x) {
           if (!in(m, "dog", x)) continue;
           bool some = false;
           for (int y = 0; y < m.domain; ++y) some = some || (in(m, "cat", y) && rel(m, "chase", x, y));
           if (!some) return false;
         }
         return true;
       }},
      {"two dog without a cat bark",
       [](const FiniteModel& m) {
         return how_many(m, [&](int x) {
                  bool with_cat = false;
                  for (int y = 0; y < m.domain; ++y) with_cat = with_cat || (in(m, "cat", y) && rel(m, "with", x, y));
                  return in(m, "dog", x) && !with_cat && in(m, "bark", x);
                }) >= 2;
       }},
  };
}

}  // namespace

TEST_CASE("hand semantics agree with the evaluator on every model up to two entities") {
  KnowledgeBase empty;
  for (const auto& f : frames()) {
    const std::string s = f.sentence;
    CAPTURE(s);
    Derivation d = D(f.sentence);
    REQUIRE_FALSE(d.empty());
    int checked = 0;
    enumerate_models(empty, symbols_of(d), 2, [&](const FiniteModel& m) {
      ++checked;
      if (eval_sentence(m, d) != f.truth(m)) FAIL(m.to_table());
    });
    CHECK(static_cast<std::uint64_t>(checked) == count_assignments(symbols_of(d), 2));
  }
}

TEST_CASE("symbols of a sentence") {
  auto syms = symbols_of(D("no dog without a cat chase a red cat"));
  CHECK(syms == std::vector<Symbol>{{"cat", 1}, {"chase", 2}, {"dog", 1}, {"red", 1}, {"with", 2}});
  CHECK(symbols_of(D("every dog be a cat")) == std::vector<Symbol>{{"cat", 1}, {"dog", 1}});
}

TEST_CASE("missing extension is reported") {
  FiniteModel m;
  m.domain = 1;
  m.unary["dog"] = 1;
  CHECK_THROWS_AS(eval_sentence(m, D("every dog bark")), UninterpretedLemma);
}

TEST_CASE("nominal be is identity") {
  FiniteModel m;
  m.domain = 2;
  m.unary["dog"] = 0b01;
  m.unary["cat"] = 0b10;
  CHECK_FALSE(eval_sentence(m, D("a dog be a cat")));
  m.unary["cat"] = 0b11;
  CHECK(eval_sentence(m, D("a dog be a cat")));
}

TEST_CASE("enumeration visits every assignment") {
  std::vector<Symbol> vocab{{"dog", 1}, {"chase", 2}};
  KnowledgeBase empty;
  std::uint64_t seen = 0;
  auto visited = enumerate_models(empty, vocab, 2, [&](const FiniteModel&) { ++seen; });
  // d=1: 2^(1+1); d=2: 2^(2+4)
  CHECK(visited == 4 + 64);
  CHECK(seen == visited);
  CHECK(count_assignments(vocab, 2) == 68);

  KnowledgeBase kb;
  kb.add({RelationKind::Leq, P("dog"), P("cat")}, Provenance::UserSupplied);
  kb.close();
  std::vector<Symbol> two{{"cat", 1}, {"dog", 1}};
  seen = 0;
  enumerate_models(kb, two, 2, [&](const FiniteModel& m) {
    ++seen;
    CHECK((m.unary.at("dog") & ~m.unary.at("cat")) == 0);
  });
  // Per entity 3 of 4 profiles survive: 3 + 9.
  CHECK(seen == 12);
}

TEST_CASE("sampled models respect the knowledge base") {
  KnowledgeBase kb;
  kb.add({RelationKind::Leq, P("semanticist"), P("linguist")}, Provenance::UserSupplied);
  kb.add({RelationKind::Perp, P("man"), P("woman")}, Provenance::UserSupplied);
  kb.add({RelationKind::Leq, P("chase"), P("see")}, Provenance::UserSupplied);
  kb.close();
  std::vector<Symbol> vocab{{"linguist", 1}, {"semanticist", 1}, {"man", 1}, {"woman", 1}, {"chase", 2}, {"see", 2}};
  auto models = models_satisfying(kb, vocab, 100, 7, 5, {{"semanticist", 1}});
  REQUIRE(models.size() == 100);
  for (const auto& m : models) {
    CHECK(respects_kb(m, kb));
    CHECK((m.unary.at("semanticist") & ~m.unary.at("linguist")) == 0);
    CHECK(m.unary.at("semanticist") != 0);
    CHECK(m.domain >= 1);
    CHECK(m.domain <= 5);
  }
  // Same seed, same models.
  auto again = models_satisfying(kb, vocab, 100, 7, 5, {{"semanticist", 1}});
  CHECK(again.front().to_table() == models.front().to_table());
}

TEST_CASE("respects_kb catches violations") {
  KnowledgeBase kb;
  kb.add({RelationKind::Leq, P("dog"), P("cat")}, Provenance::UserSupplied);
  kb.close();
  FiniteModel m;
  m.domain = 2;
  m.unary["dog"] = 0b11;
  m.unary["cat"] = 0b01;
  CHECK_FALSE(respects_kb(m, kb));
}

TEST_CASE("unsatisfiable inhabitation") {
  KnowledgeBase kb;
  kb.add({RelationKind::Leq, P("x"), P("y")}, Provenance::UserSupplied);
  kb.add({RelationKind::Perp, P("x"), P("z")}, Provenance::UserSupplied);
  kb.add({RelationKind::Leq, P("y"), P("z")}, Provenance::UserSupplied);
  kb.close();
  std::vector<Symbol> vocab{{"x", 1}, {"y", 1}, {"z", 1}};
  CHECK_THROWS_AS(models_satisfying(kb, vocab, 5, 1, 3, {{"x", 1}}), UnsatisfiableKb);
  CHECK_NOTHROW(models_satisfying(kb, vocab, 5, 1, 3, {{"y", 1}}));
}

TEST_CASE("entailment checks") {
  KnowledgeBase kb;
  kb.add({RelationKind::Leq, P("semanticist"), P("linguist")}, Provenance::UserSupplied);
  kb.close();
  auto v = entails_under(kb, D("every linguist swim"), D("every semanticist swim"), 200, 1);
  CHECK_MESSAGE(!has_counterexample(v), report(v));
  KnowledgeBase empty;
  CHECK(has_counterexample(entails_under(empty, D("some linguist swim"), D("every linguist swim"), 200, 1)));
  CHECK_FALSE(has_counterexample(entails_under(empty, D("most dog bark"), D("most dog bark"), 200, 1)));
  // Wrong direction under the universal restrictor.
  CHECK(has_counterexample(entails_under(kb, D("every semanticist swim"), D("every linguist swim"), 200, 1)));
}

TEST_CASE("premise pattern forces the subset") {
  // every poodle be a dog, a poodle bark => a dog bark
  KnowledgeBase empty;
  auto v = entails_under(empty, D("a poodle bark"), D("a dog bark"), 500, 3, {D("every poodle be a dog")});
  CHECK(has_counterexample(v));  // context only adds presuppositions, not truth
  CHECK(has_counterexample(entails_under(empty, D("a cat bark"), D("a dog bark"), 200, 3)));
  CHECK(has_counterexample(entails_under(empty, D("every dog bark"), D("a cat bark"), 200, 3)));
  KnowledgeBase kb;
  kb.add({RelationKind::Leq, P("poodle"), P("dog")}, Provenance::UserSupplied);
  kb.close();
  CHECK_FALSE(has_counterexample(entails_under(kb, D("a poodle bark"), D("a dog bark"), 500, 3)));
  // And the premise does force it: wherever it holds, poodle is inside dog.
  Derivation every = D("every poodle be a dog");
  enumerate_models(empty, symbols_of(every), 3, [&](const FiniteModel& m) {
    if (eval_sentence(m, every)) CHECK((m.unary.at("poodle") & ~m.unary.at("dog")) == 0);
  });
}

TEST_CASE("two downward contexts license upward replacement") {
  // few dog without a cat bark: cat sits under without (down) inside the
  // restrictor of few (down), so a superset of cat preserves truth.
  KnowledgeBase kb;
  kb.add({RelationKind::Leq, P("cat"), P("animal")}, Provenance::UserSupplied);
  kb.close();
  auto up = entails_under(kb, D("few dog without a cat bark"), D("few dog without a animal bark"), 300, 5);
  CHECK_MESSAGE(!has_counterexample(up), report(up));
  CHECK(has_counterexample(
      entails_under(kb, D("few dog without a animal bark"), D("few dog without a cat bark"), 300, 5)));
}

TEST_CASE("contradiction checks") {
  KnowledgeBase empty;
  CHECK_FALSE(has_counterexample(contradicts_under(empty, D("no dog bark"), D("some dog bark"), 200, 2)));
  CHECK_FALSE(has_counterexample(contradicts_under(empty, D("a dog bark"), D("a dog do not bark"), 200, 2)));
  CHECK(has_counterexample(contradicts_under(empty, D("a dog bark"), D("a cat bark"), 200, 2)));
  KnowledgeBase kb;
  kb.add({RelationKind::Perp, P("sit"), P("stand")}, Provenance::UserSupplied);
  kb.close();
  CHECK_FALSE(has_counterexample(contradicts_under(kb, D("a man sit"), D("a man stand"), 200, 2)));
}
