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

// Generation of entailed and contradictory sentences by span replacement,
// depth-bounded search for the hypothesis, and end-to-end classification.

#ifndef NATLOG_ENGINE_HPP_
#define NATLOG_ENGINE_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "natlog/core.hpp"
#include "natlog/kb.hpp"
#include "natlog/polarizer.hpp"
#include "natlog/preprocess.hpp"

namespace natlog {

struct SearchConfig {
  int depth = 2;
  std::size_t max_generated = 10000;
  std::set<std::string> equivalence_set = {"a", "be", "ing"};
};

struct Generated {
  Phrase sentence;
  Edit edit;
};

struct SentenceBase {
  struct Item {
    Phrase sentence;
    Proof proof;  // from the premise
    int depth = 0;
  };

  std::vector<Item> entailments;  // the premise first, with an empty proof
  std::vector<Item> contradictions;
  bool cap_exceeded = false;

  bool has_entailment(const Phrase& s) const;
  bool has_contradiction(const Phrase& s) const;
  std::size_t size() const { return entailments.size() + contradictions.size(); }
};

// One output per licensed replacement: Up spans go to KB phrases above them,
// Down spans to phrases below them or gain a modifier from the KB's modifier
// vocabulary. Outputs that do not re-parse with the same surrounding
// structure are dropped. Sorted by (span, replacement).
std::vector<Generated> generate_entailments(const PolarizedSentence& sentence, const KnowledgeBase& kb,
                                            const Lexicon& lexicon = Lexicon::bundled());

// Quantifier swaps on the subject and direct object, negation of the main
// verb, and replacement by a disjoint word where the subject is read
// existentially or universally with import.
// Swapping the subject's restrictor for a disjoint word only contradicts
// when the subject picks out the premise's own entity; the search passes
// restrictor_swaps = false when the premise subject is not existential.
std::vector<Generated> generate_contradictions(const PolarizedSentence& sentence,
                                               const KnowledgeBase& kb,
                                               const Lexicon& lexicon = Lexicon::bundled(),
                                               bool restrictor_swaps = true);

// True iff the sentence's subject is read as one entity of its restrictor
// (every subject except every/all/each, no/nothing and few).
bool subject_is_anchored(const PolarizedSentence& sentence);

// True iff both sentences agree after deleting the equivalence tokens and
// any "ing" suffix.
bool sentence_equivalent(const Phrase& a, const Phrase& b,
                         const std::set<std::string>& equivalence_set = {"a", "be", "ing"});

struct SearchResult {
  NliLabel label = NliLabel::Neutral;
  std::optional<Proof> proof;
  SentenceBase base;
};

// Depth-first search from the premise. Stops at the first sentence
// equivalent to the hypothesis; otherwise explores everything up to
// config.depth. When the sentence base outgrows config.max_generated the
// search stops, base.cap_exceeded is set and the label is Neutral.
SearchResult search(const PolarizedSentence& premise, const Phrase& hypothesis, const KnowledgeBase& kb,
                    const SearchConfig& config = {}, const Lexicon& lexicon = Lexicon::bundled());

// The full sentence base up to config.depth, with no hypothesis.
SentenceBase explore(const PolarizedSentence& premise, const KnowledgeBase& kb,
                     const SearchConfig& config = {}, const Lexicon& lexicon = Lexicon::bundled());

struct Resources {
  const Lexicon* lexicon = &Lexicon::bundled();
  const LexicalResource* resource = &LexicalResource::bundled();
  const RewriteTable* rewrites = &RewriteTable::bundled();
  std::vector<Relation> extra;
};

struct Classification {
  NliLabel label = NliLabel::Neutral;
  std::optional<Proof> proof;
  Phrase premise;
  Phrase hypothesis;
  std::vector<std::string> diagnostics;
  bool cap_exceeded = false;
};

// preprocess -> parse -> polarize -> build_kb -> search. Parse or KB
// failures give Neutral with a diagnostic.
Classification classify(const ProblemRecord& problem, const Resources& resources = {},
                        const SearchConfig& config = {}, const TransformConfig& transforms = {});

}  // namespace natlog

#endif  // NATLOG_ENGINE_HPP_
