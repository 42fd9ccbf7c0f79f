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

#include "natlog/kb.hpp"

#include <algorithm>
#include <deque>

#include "natlog/bundled.hpp"
#include "natlog/tsv.hpp"

namespace natlog {

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::HardCoded: return "hard-coded";
    case Provenance::LexicalResource: return "resource";
    case Provenance::PhraseRule: return "phrase-rule";
    case Provenance::PremiseExtraction: return "premise";
    case Provenance::UserSupplied: return "user";
  }
  return "user";
}

LexicalResource LexicalResource::parse_tsv(std::string_view text) {
  LexicalResource r;
  std::size_t line_no = 0;
  for (auto line : split_lines(text)) {
    ++line_no;
    if (!is_data_line(line)) continue;
    auto cols = split_tabs(line);
    if (cols.size() != 3) {
      throw SchemaError("resource line " + std::to_string(line_no) + ": expected 3 columns");
    }
    try {
      r.add(cols[0], cols[1], cols[2]);
    } catch (const SchemaError& e) {
      throw SchemaError("resource line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return r;
}

LexicalResource LexicalResource::load(const std::string& path) { return parse_tsv(read_file(path)); }

const LexicalResource& LexicalResource::bundled() {
  static const LexicalResource r = parse_tsv(bundled_resource());
  return r;
}

void LexicalResource::add(const std::string& lemma, std::string_view relation,
                          const std::string& target) {
  if (relation == "hyp") {
    entries_[lemma].hypernyms.insert(target);
  } else if (relation == "ant") {
    if (lemma == target) throw SchemaError("'" + lemma + "' cannot be its own antonym");
    entries_[lemma].antonyms.insert(target);
  } else if (relation == "syn") {
    entries_[lemma].synonyms.insert(target);
    entries_[target].synonyms.insert(lemma);
  } else {
    throw SchemaError("unknown relation '" + std::string(relation) + "'");
  }
}

std::vector<Relation> KnowledgeBase::hard_coded() {
  std::vector<Relation> out;
  auto leq = [&](const char* a, const char* b) {
    out.push_back({RelationKind::Leq, split_words(a), split_words(b)});
  };
  auto eq = [&](const char* a, const char* b) {
    leq(a, b);
    leq(b, a);
  };
  eq("every", "all");
  eq("all", "each");
  leq("each", "most");
  leq("most", "many");
  leq("many", "a_few");
  eq("a_few", "several");
  leq("several", "some");
  eq("some", "a");
  leq("the", "some");
  out.push_back({RelationKind::Perp, {"on"}, {"off"}});
  out.push_back({RelationKind::Perp, {"up"}, {"down"}});
  return out;
}

void KnowledgeBase::add(const Relation& r, Provenance p) {
  if (r.lhs.empty() || r.rhs.empty()) throw BuildError("relation with an empty phrase");
  for (const auto& e : entries_) {
    if (e.relation == r) return;
  }
  entries_.push_back({r, p});
  for (const auto* side : {&r.lhs, &r.rhs}) {
    if (ids_.emplace(*side, static_cast<int>(phrases_.size())).second) phrases_.push_back(*side);
  }
  closed_ = false;
}

int KnowledgeBase::id_of(const Phrase& p) const {
  auto it = ids_.find(p);
  return it == ids_.end() ? -1 : it->second;
}

void KnowledgeBase::ensure_closed() const {
  if (closed_) return;
  const std::size_t n = phrases_.size();
  std::vector<std::vector<int>> succ(n);
  for (const auto& e : entries_) {
    if (e.relation.kind == RelationKind::Leq) {
      succ[static_cast<std::size_t>(id_of(e.relation.lhs))].push_back(id_of(e.relation.rhs));
    }
  }
  reach_.assign(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::deque<int> queue{static_cast<int>(s)};
    reach_[s][s] = true;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : succ[static_cast<std::size_t>(u)]) {
        if (!reach_[s][static_cast<std::size_t>(v)]) {
          reach_[s][static_cast<std::size_t>(v)] = true;
          queue.push_back(v);
        }
      }
    }
  }
  closed_ = true;
}

void KnowledgeBase::close() {
  ensure_closed();
  for (const auto& e : entries_) {
    if (e.relation.kind != RelationKind::Perp) continue;
    const auto& [_, a, b] = e.relation;
    if (leq(a, b) && leq(b, a)) {
      throw BuildError("inconsistent knowledge base: '" + join(a) + "' and '" + join(b) +
                       "' are both equal and disjoint");
    }
  }
}

bool KnowledgeBase::leq(const Phrase& a, const Phrase& b) const {
  if (a == b) return true;
  const int i = id_of(a), j = id_of(b);
  if (i < 0 || j < 0) return false;
  ensure_closed();
  return reach_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

bool KnowledgeBase::perp(const Phrase& a, const Phrase& b) const {
  for (const auto& e : entries_) {
    if (e.relation.kind != RelationKind::Perp) continue;
    if ((e.relation.lhs == a && e.relation.rhs == b) || (e.relation.lhs == b && e.relation.rhs == a)) {
      return true;
    }
  }
  return false;
}

std::vector<Phrase> KnowledgeBase::above(const Phrase& a) const {
  std::vector<Phrase> out;
  for (const auto& p : phrases_) {
    if (p != a && leq(a, p)) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Phrase> KnowledgeBase::below(const Phrase& a) const {
  std::vector<Phrase> out;
  for (const auto& p : phrases_) {
    if (p != a && leq(p, a)) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Phrase> KnowledgeBase::opposites(const Phrase& a) const {
  std::vector<Phrase> out;
  for (const auto& p : phrases_) {
    if (perp(a, p)) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Phrase, Phrase>> KnowledgeBase::leq_closure() const {
  std::vector<std::pair<Phrase, Phrase>> out;
  for (const auto& a : phrases_) {
    for (const auto& b : phrases_) {
      if (a != b && leq(a, b)) out.emplace_back(a, b);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string KnowledgeBase::dump() const {
  std::string out;
  auto under = [](const Phrase& p) { return join(p, "_"); };
  for (const auto& e : entries_) {
    out += e.relation.kind == RelationKind::Leq ? "LEQ" : "PERP";
    out += '\t' + under(e.relation.lhs) + '\t' + under(e.relation.rhs) + '\t';
    out += provenance_name(e.provenance);
    out += '\n';
  }
  return out;
}

namespace {

enum class ModKind { None, Prenominal, Postnominal, Verbal };

// Classifies an Apply node whose functor is a modifier of its argument.
ModKind modifier_kind(const Node& n) {
  if (n.kind != Node::Kind::Apply) return ModKind::None;
  const Category& f = *n.fn->category;
  if (f.is_atomic() || !f.result()->same_shape(*f.argument())) return ModKind::None;
  const bool noun = f.argument()->same_shape(*cat::N());
  const bool verbal = f.argument()->same_shape(*cat::VP());
  if (f.slash() == Slash::Backward) {
    if (noun) return ModKind::Postnominal;
    if (verbal) return ModKind::Verbal;
    return ModKind::None;
  }
  if (n.fn->kind != Node::Kind::Leaf) return ModKind::None;
  if (noun && n.fn->token.tag == "JJ") return ModKind::Prenominal;
  if (verbal && n.fn->token.tag == "RB") return ModKind::Verbal;
  return ModKind::None;
}

}  // namespace

std::vector<Relation> derive_phrase_relations(const PolarizedSentence& sentence) {
  std::vector<Relation> out;
  for (const auto& c : sentence.source.constituents()) {
    if (modifier_kind(*c.node) == ModKind::None) continue;
    Relation r{RelationKind::Leq, yield_of(*c.node), yield_of(*c.node->arg)};
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(std::move(r));
  }
  return out;
}

void collect_modifiers(const PolarizedSentence& sentence, ModifierVocabulary& out) {
  for (const auto& c : sentence.source.constituents()) {
    switch (modifier_kind(*c.node)) {
      case ModKind::Prenominal: out.prenominal.insert(yield_of(*c.node->fn)); break;
      case ModKind::Postnominal: out.postnominal.insert(yield_of(*c.node->fn)); break;
      case ModKind::Verbal: out.verbal.insert(yield_of(*c.node->fn)); break;
      case ModKind::None: break;
    }
  }
}

std::vector<Relation> extract_from_premise(const PolarizedSentence& premise) {
  const Phrase w = premise.lemmas();
  if (w.size() < 5 || w[0] != "every") return {};
  for (std::size_t k = 2; k + 2 < w.size(); ++k) {
    if (w[k] != "be" || w[k + 1] != "a") continue;
    const int n1 = premise.source.find({1, k});
    const int n2 = premise.source.find({k + 2, w.size()});
    if (n1 < 0 || n2 < 0) continue;
    const auto& t = premise.source.constituents();
    if (!t[static_cast<std::size_t>(n1)].node->category->same_shape(*cat::N()) ||
        !t[static_cast<std::size_t>(n2)].node->category->same_shape(*cat::N())) {
      continue;
    }
    return {{RelationKind::Leq, Phrase(w.begin() + 1, w.begin() + static_cast<std::ptrdiff_t>(k)),
             Phrase(w.begin() + static_cast<std::ptrdiff_t>(k) + 2, w.end())}};
  }
  return {};
}

KnowledgeBase build_kb(const PolarizedSentence& premise, const Phrase& hypothesis,
                       const LexicalResource& resource, const std::vector<Relation>& extra,
                       const Lexicon& lexicon) {
  KnowledgeBase kb;
  for (const auto& r : KnowledgeBase::hard_coded()) kb.add(r, Provenance::HardCoded);

  std::set<std::string> vocab;
  for (const auto& t : premise.tokens) vocab.insert(t.lemma);
  vocab.insert(hypothesis.begin(), hypothesis.end());

  const auto& entries = resource.entries();
  for (const auto& word : vocab) {
    auto it = entries.find(word);
    if (it == entries.end()) continue;
    // Upward closure through hypernyms and synonyms.
    std::set<std::string> seen{word};
    std::deque<std::string> queue{word};
    while (!queue.empty()) {
      auto cur = entries.find(queue.front());
      queue.pop_front();
      if (cur == entries.end()) continue;
      for (const auto* next : {&cur->second.hypernyms, &cur->second.synonyms}) {
        for (const auto& t : *next) {
          if (seen.insert(t).second) queue.push_back(t);
        }
      }
    }
    for (const auto& t : seen) {
      if (t != word && vocab.count(t)) kb.add({RelationKind::Leq, {word}, {t}}, Provenance::LexicalResource);
    }
    for (const auto& t : it->second.antonyms) {
      if (vocab.count(t)) kb.add({RelationKind::Perp, {word}, {t}}, Provenance::LexicalResource);
    }
  }

  std::vector<PolarizedSentence> parsed{premise};
  try {
    parsed.push_back(polarize_lemmas(hypothesis, lexicon));
  } catch (const Error&) {
    // An unparseable hypothesis contributes no phrase relations.
  }
  for (const auto& s : parsed) {
    for (const auto& r : derive_phrase_relations(s)) kb.add(r, Provenance::PhraseRule);
    collect_modifiers(s, kb.modifiers());
  }
  for (const auto& r : extract_from_premise(premise)) kb.add(r, Provenance::PremiseExtraction);
  for (const auto& r : extra) kb.add(r, Provenance::UserSupplied);
  kb.close();
  return kb;
}

std::vector<Relation> parse_relations(std::string_view text, const Lexicon& lexicon) {
  std::vector<Relation> out;
  std::size_t line_no = 0;
  auto phrase = [&](const std::string& s) {
    Phrase words;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
      if (i == s.size() || s[i] == '_') {
        if (i > start) words.push_back(s.substr(start, i - start));
        start = i + 1;
      }
    }
    return lexicon.fuse_multiwords(words);
  };
  for (auto line : split_lines(text)) {
    ++line_no;
    if (!is_data_line(line)) continue;
    auto cols = split_tabs(line);
    if (cols.size() != 3) {
      throw SchemaError("relations line " + std::to_string(line_no) + ": expected 3 columns");
    }
    Relation r;
    if (cols[0] == "LEQ") {
      r.kind = RelationKind::Leq;
    } else if (cols[0] == "PERP") {
      r.kind = RelationKind::Perp;
    } else {
      throw SchemaError("relations line " + std::to_string(line_no) + ": unknown kind '" + cols[0] + "'");
    }
    r.lhs = phrase(cols[1]);
    r.rhs = phrase(cols[2]);
    if (r.lhs.empty() || r.rhs.empty()) {
      throw SchemaError("relations line " + std::to_string(line_no) + ": empty phrase");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Relation> load_relations(const std::string& path, const Lexicon& lexicon) {
  return parse_relations(read_file(path), lexicon);
}

}  // namespace natlog
