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

// Knowledge base of subset (<=) and disjointness (perp) relations between
// words and phrases, scoped to one premise/hypothesis pair.

#ifndef NATLOG_KB_HPP_
#define NATLOG_KB_HPP_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "natlog/core.hpp"
#include "natlog/polarizer.hpp"

namespace natlog {

class BuildError : public Error {
 public:
  using Error::Error;
};

enum class Provenance : std::uint8_t {
  HardCoded,
  LexicalResource,
  PhraseRule,
  PremiseExtraction,
  UserSupplied
};

std::string_view provenance_name(Provenance p);

// lemma -> hypernyms, antonyms, synonyms. Synonymy is kept symmetric.
class LexicalResource {
 public:
  struct Entry {
    std::set<std::string> hypernyms;
    std::set<std::string> antonyms;
    std::set<std::string> synonyms;
  };

  // Columns: lemma, relation (hyp|ant|syn), target.
  static LexicalResource parse_tsv(std::string_view text);
  static LexicalResource load(const std::string& path);
  static const LexicalResource& bundled();

  // Throws SchemaError for an unknown relation or a self-antonym.
  void add(const std::string& lemma, std::string_view relation, const std::string& target);
  const std::map<std::string, Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<std::string, Entry> entries_;
};

// Modifiers available for insertion under downward spans.
struct ModifierVocabulary {
  std::set<Phrase> prenominal;   // adjectives: "black"
  std::set<Phrase> postnominal;  // PPs and relative clauses: "with a bag"
  std::set<Phrase> verbal;       // adverbs and VP-level PPs: "happily"
};

class KnowledgeBase {
 public:
  struct Entry {
    Relation relation;
    Provenance provenance;
  };

  // The hard-coded quantifier chain and preposition oppositions.
  static std::vector<Relation> hard_coded();

  // Stores a relation; closure is recomputed lazily on the next query.
  void add(const Relation& r, Provenance p);
  // Computes the closure and checks consistency. Throws BuildError when
  // x <= y, y <= x and x perp y for some x, y.
  void close();

  bool leq(const Phrase& a, const Phrase& b) const;
  bool perp(const Phrase& a, const Phrase& b) const;

  // Every other phrase b with a <= b (resp. b <= a), sorted.
  std::vector<Phrase> above(const Phrase& a) const;
  std::vector<Phrase> below(const Phrase& a) const;
  // Every phrase b with a perp b, sorted.
  std::vector<Phrase> opposites(const Phrase& a) const;

  const std::vector<Entry>& entries() const { return entries_; }
  std::vector<Phrase> phrases() const { return phrases_; }
  // All pairs (a, b), a != b, in the closure of <=.
  std::vector<std::pair<Phrase, Phrase>> leq_closure() const;

  ModifierVocabulary& modifiers() { return modifiers_; }
  const ModifierVocabulary& modifiers() const { return modifiers_; }

  // One relation per line: "LEQ\tlhs\trhs\tprovenance".
  std::string dump() const;

 private:
  int id_of(const Phrase& p) const;
  void ensure_closed() const;

  std::vector<Entry> entries_;
  std::vector<Phrase> phrases_;
  std::map<Phrase, int> ids_;
  ModifierVocabulary modifiers_;
  // Reachability matrix over phrase ids, rebuilt by close().
  mutable std::vector<std::vector<bool>> reach_;
  mutable bool closed_ = false;
};

// adj+N <= N, N+PP <= N, N+RelCl <= N, VP+Adv/PP <= VP over constituents.
std::vector<Relation> derive_phrase_relations(const PolarizedSentence& sentence);

// "every N1 be a N2" gives N1 <= N2.
std::vector<Relation> extract_from_premise(const PolarizedSentence& premise);

// Collects the modifiers used in a sentence.
void collect_modifiers(const PolarizedSentence& sentence, ModifierVocabulary& out);

// Resource relations are taken from the resource's hypernym closure and kept
// only when both sides occur in the premise or hypothesis.
KnowledgeBase build_kb(const PolarizedSentence& premise, const Phrase& hypothesis,
                       const LexicalResource& resource, const std::vector<Relation>& extra = {},
                       const Lexicon& lexicon = Lexicon::bundled());

inline bool query_leq(const KnowledgeBase& kb, const Phrase& a, const Phrase& b) {
  return kb.leq(a, b);
}
inline bool query_perp(const KnowledgeBase& kb, const Phrase& a, const Phrase& b) {
  return kb.perp(a, b);
}

// Relations file: TSV with columns kind (LEQ|PERP), lhs, rhs; '_' joins the
// words of a phrase. Lexicon multiwords ("a_few") are kept whole.
std::vector<Relation> parse_relations(std::string_view text, const Lexicon& lexicon = Lexicon::bundled());
std::vector<Relation> load_relations(const std::string& path,
                                     const Lexicon& lexicon = Lexicon::bundled());

}  // namespace natlog

#endif  // NATLOG_KB_HPP_
