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

// Finite-model semantics for the fragment, used as ground truth in tests.
// Nouns, adjectives, intransitive verbs and adverbs denote entity sets;
// transitive verbs and prepositions denote relations. Modifiers are
// intersective.

#ifndef NATLOG_ORACLE_HPP_
#define NATLOG_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "natlog/kb.hpp"
#include "natlog/syntax.hpp"

namespace natlog {

class UninterpretedLemma : public Error {
 public:
  using Error::Error;
};
class UnsatisfiableKb : public Error {
 public:
  using Error::Error;
};

inline constexpr int kMaxDomain = 6;

using EntitySet = std::uint32_t;  // bit i = entity i

struct Symbol {
  std::string lemma;
  int arity = 1;  // 1 = set, 2 = relation

  auto operator<=>(const Symbol&) const = default;
};

struct FiniteModel {
  int domain = 1;
  std::map<std::string, EntitySet> unary;
  // binary[lemma][x] = entities y with (x, y) in the relation.
  std::map<std::string, std::vector<EntitySet>> binary;

  EntitySet all() const { return (EntitySet{1} << domain) - 1; }
  // Entity x predicate membership table.
  std::string to_table() const;
};

// Content symbols a sentence needs ("without" needs "with").
std::vector<Symbol> symbols_of(const Derivation& sentence);

// Plain truth value. Throws UninterpretedLemma for a missing extension.
bool eval_sentence(const FiniteModel& model, const Derivation& sentence);

// A sentence evaluated for the soundness checks. Every quantifier presupposes
// a nonempty restrictor. Subjects other than every/all/each/everything,
// no/nothing and few are read as being about one entity of the restrictor
// (the anchor); the checks require premise and conclusion to share it.
struct Reading {
  bool truth = false;
  bool presupposition = true;
  bool anchored = false;
  EntitySet anchor_domain = 0;  // admissible anchors
  EntitySet true_at = 0;        // anchors for which the anchored reading is true
};

Reading read_sentence(const FiniteModel& model, const Derivation& sentence);

// Models whose extensions respect the KB's single-word relations: x <= y
// gives a subset, x perp y gives disjoint sets. Every symbol in
// `inhabited` gets a nonempty extension; throws UnsatisfiableKb when that is impossible.
std::vector<FiniteModel> models_satisfying(const KnowledgeBase& kb, const std::vector<Symbol>& vocabulary,
                                           std::size_t count, std::uint64_t seed, int max_domain = 5,
                                           const std::vector<Symbol>& inhabited = {});

// True iff the model respects the KB's single-word relations (independent
// re-check of models_satisfying).
bool respects_kb(const FiniteModel& model, const KnowledgeBase& kb);

// Every assignment over domains 1..max_domain, all symbols, that respects
// the KB. Returns how many models were visited (before KB filtering).
std::uint64_t enumerate_models(const KnowledgeBase& kb, const std::vector<Symbol>& vocabulary,
                               int max_domain, const std::function<void(const FiniteModel&)>& visit);
// Number of unfiltered assignments over domains 1..max_domain.
std::uint64_t count_assignments(const std::vector<Symbol>& vocabulary, int max_domain);

struct NoCounterexample {};
struct Counterexample {
  FiniteModel model;
  int anchor = 0;
};
using OracleVerdict = std::variant<NoCounterexample, Counterexample>;

// Looks for a model and anchor where the premise and every presupposition
// hold but the hypothesis fails. `context` adds presuppositions (the
// intermediate sentences of a proof). Enumerates exhaustively when domains
// up to 3 over the vocabulary are small enough, otherwise samples.
OracleVerdict entails_under(const KnowledgeBase& kb, const Derivation& premise, const Derivation& hypothesis,
                            std::size_t sample_size, std::uint64_t seed,
                            const std::vector<Derivation>& context = {});

// Same for a claimed contradiction: looks for a model and anchor where both
// sentences hold.
OracleVerdict contradicts_under(const KnowledgeBase& kb, const Derivation& premise,
                                const Derivation& contradiction, std::size_t sample_size,
                                std::uint64_t seed, const std::vector<Derivation>& context = {});

}  // namespace natlog

#endif  // NATLOG_ORACLE_HPP_
