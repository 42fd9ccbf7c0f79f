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

#include "natlog/engine.hpp"

#include <algorithm>
#include <functional>

namespace natlog {

namespace {

Phrase slice(const Phrase& w, Span s) {
  return Phrase(w.begin() + static_cast<std::ptrdiff_t>(s.begin),
                w.begin() + static_cast<std::ptrdiff_t>(s.end));
}

Phrase concat(const Phrase& a, const Phrase& b) {
  Phrase out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

bool is_one_of(std::string_view w, std::initializer_list<std::string_view> set) {
  return std::find(set.begin(), set.end(), w) != set.end();
}

// How the subject quantifier is read when generating contradictions.
enum class SubjectReading { Anchored, Universal, Negative, Few };

struct Analysis {
  bool ok = false;
  int subject = -1;     // constituent indices
  int det = -1;         // subject determiner or quantifier word
  int restrictor = -1;  // subject N', -1 for "something"/"nothing"
  int vp = -1;
  SubjectReading reading = SubjectReading::Anchored;
};

SubjectReading reading_of(std::string_view det) {
  if (is_one_of(det, {"every", "all", "each", "everything"})) return SubjectReading::Universal;
  if (is_one_of(det, {"no", "nothing"})) return SubjectReading::Negative;
  if (det == "few") return SubjectReading::Few;
  return SubjectReading::Anchored;
}

// Index of the child of constituent i that is (or is not) the functor.
int child(const Derivation& d, int i, bool functor) {
  const auto& t = d.constituents();
  for (std::size_t j = static_cast<std::size_t>(i) + 1; j < t.size(); ++j) {
    if (t[j].parent == i && t[j].is_functor_child == functor) return static_cast<int>(j);
  }
  return -1;
}

const Node& node_at(const Derivation& d, int i) { return *d.constituents()[static_cast<std::size_t>(i)].node; }
Span span_at(const Derivation& d, int i) { return d.constituents()[static_cast<std::size_t>(i)].span; }

Analysis analyze(const Derivation& d) {
  Analysis a;
  if (d.empty() || d.root()->kind != Node::Kind::Apply) return a;
  a.subject = child(d, 0, true);
  a.vp = child(d, 0, false);
  if (a.subject < 0 || a.vp < 0) return a;
  const Node& s = node_at(d, a.subject);
  if (s.kind == Node::Kind::Leaf) {
    a.det = a.subject;
  } else if (s.kind == Node::Kind::Lift) {
    a.restrictor = child(d, a.subject, false);
  } else {
    a.det = child(d, a.subject, true);
    a.restrictor = child(d, a.subject, false);
  }
  a.reading = a.det >= 0 ? reading_of(node_at(d, a.det).token.lemma) : SubjectReading::Anchored;
  a.ok = true;
  return a;
}

bool is_leaf_tagged(const Node& n, std::string_view tag) {
  return n.kind == Node::Kind::Leaf && n.token.tag == tag;
}

// Strips VP modifiers, "do" and copular "be" from a VP; stops at negation.
// Returns the index of the core VP and whether a negation was crossed.
int vp_core(const Derivation& d, int i, bool* negated) {
  *negated = false;
  for (;;) {
    const Node& n = node_at(d, i);
    if (n.kind != Node::Kind::Apply) return i;
    const int fn = child(d, i, true);
    const Node& f = node_at(d, fn);
    const Category& fc = *f.category;
    if (fc.slash() == Slash::Backward && fc.result()->same_shape(*fc.argument()) &&
        fc.argument()->same_shape(*cat::VP())) {
      i = child(d, i, false);  // VP modifier
    } else if (is_leaf_tagged(f, "RB") || is_leaf_tagged(f, "DO") ||
               (is_leaf_tagged(f, "BE") && fc.argument()->same_shape(*cat::VP()))) {
      i = child(d, i, false);
    } else if (is_leaf_tagged(f, "NOT")) {
      *negated = true;
      return i;
    } else {
      return i;
    }
  }
}

// Map from constituent span to the categories found there.
std::multimap<Span, CategoryPtr> span_table(const Derivation& d) {
  std::multimap<Span, CategoryPtr> out;
  for (const auto& c : d.constituents()) out.emplace(c.span, c.node->category);
  return out;
}

bool has_constituent(const std::multimap<Span, CategoryPtr>& table, Span s, const Category& c,
                     bool exact) {
  auto [lo, hi] = table.equal_range(s);
  for (auto it = lo; it != hi; ++it) {
    if (exact ? *it->second == c : it->second->same_shape(c)) return true;
  }
  return false;
}

// The new sentence keeps every constituent outside the edited span with the
// same category, and every constituent around it with the same shape.
bool same_context(const Derivation& old, Span span, const Derivation& neu, std::size_t new_len,
                  std::optional<Span> kept) {
  const auto table = span_table(neu);
  const auto delta = static_cast<std::ptrdiff_t>(new_len) - static_cast<std::ptrdiff_t>(span.size());
  auto shift = [&](std::size_t x) { return static_cast<std::size_t>(static_cast<std::ptrdiff_t>(x) + delta); };
  for (const auto& c : old.constituents()) {
    const Span s = c.span;
    if (s.end <= span.begin && !(s == span)) {
      if (!has_constituent(table, s, *c.node->category, true)) return false;
    } else if (s.begin >= span.end && !(s == span)) {
      if (!has_constituent(table, {shift(s.begin), shift(s.end)}, *c.node->category, true)) return false;
    } else if (s.contains(span)) {
      if (!has_constituent(table, {s.begin, shift(s.end)}, *c.node->category, false)) return false;
    }
  }
  if (kept) {
    const int i = old.find(span);
    if (i < 0 || !has_constituent(table, *kept, *node_at(old, i).category, false)) return false;
  }
  return true;
}

struct Candidate {
  Edit edit;
  std::optional<Span> kept;  // where the original phrase sits after an insertion
};

bool candidate_less(const Candidate& a, const Candidate& b) {
  return std::tie(a.edit.span, a.edit.after, a.edit.rule) < std::tie(b.edit.span, b.edit.after, b.edit.rule);
}

std::optional<PolarizedSentence> try_parse(const Phrase& words, const Lexicon& lexicon) {
  try {
    return polarize_lemmas(words, lexicon);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Applies, re-parses and keeps candidates in (span, replacement) order,
// dropping repeats of an already produced sentence.
std::vector<Generated> realize(const PolarizedSentence& s, std::vector<Candidate> cands,
                               const Lexicon& lexicon, bool check_context,
                               std::vector<PolarizedSentence>* parsed_out = nullptr) {
  std::sort(cands.begin(), cands.end(), candidate_less);
  std::vector<Generated> out;
  std::set<Phrase> seen{s.lemmas()};
  const Phrase words = s.lemmas();
  for (auto& c : cands) {
    if (c.edit.before == c.edit.after) continue;
    Phrase next = apply_edit(words, c.edit);
    if (seen.count(next)) continue;
    auto parsed = try_parse(next, lexicon);
    if (!parsed) continue;
    if (check_context && !same_context(s.source, c.edit.span, parsed->source, c.edit.after.size(), c.kept)) {
      continue;
    }
    seen.insert(next);
    out.push_back({std::move(next), std::move(c.edit)});
    if (parsed_out) parsed_out->push_back(std::move(*parsed));
  }
  return out;
}

std::vector<Generated> entailments_of(const PolarizedSentence& sentence, const KnowledgeBase& kb,
                                      const Lexicon& lexicon, std::vector<PolarizedSentence>* parsed);

}  // namespace

std::vector<Generated> generate_entailments(const PolarizedSentence& sentence, const KnowledgeBase& kb,
                                            const Lexicon& lexicon) {
  return entailments_of(sentence, kb, lexicon, nullptr);
}

namespace {

std::vector<Generated> entailments_of(const PolarizedSentence& sentence, const KnowledgeBase& kb,
                                      const Lexicon& lexicon, std::vector<PolarizedSentence>* parsed) {
  const Phrase words = sentence.lemmas();
  const auto& table = sentence.source.constituents();
  const auto& mods = kb.modifiers();
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Span sp = table[i].span;
    const Polarity p = sentence.constituent_polarity[i];
    if (p == Polarity::Flat || sp.size() == 0) continue;
    const Phrase a = slice(words, sp);
    if (p == Polarity::Up) {
      for (auto& b : kb.above(a)) cands.push_back({{sp, a, b, "leq-up", Direction::Entailing}, {}});
      continue;
    }
    for (auto& b : kb.below(a)) cands.push_back({{sp, a, b, "leq-down", Direction::Entailing}, {}});
    const Category& c = *table[i].node->category;
    if (c.same_shape(*cat::N())) {
      for (const auto& m : mods.prenominal) {
        cands.push_back({{sp, a, concat(m, a), "insert-modifier", Direction::Entailing},
                         Span{sp.begin + m.size(), sp.end + m.size()}});
      }
      for (const auto& m : mods.postnominal) {
        cands.push_back({{sp, a, concat(a, m), "insert-modifier", Direction::Entailing}, sp});
      }
    } else if (c.same_shape(*cat::VP())) {
      for (const auto& m : mods.verbal) {
        cands.push_back({{sp, a, concat(a, m), "insert-modifier", Direction::Entailing}, sp});
      }
    }
  }
  return realize(sentence, std::move(cands), lexicon, true, parsed);
}

}  // namespace

bool subject_is_anchored(const PolarizedSentence& sentence) {
  return analyze(sentence.source).reading == SubjectReading::Anchored;
}

std::vector<Generated> generate_contradictions(const PolarizedSentence& sentence,
                                               const KnowledgeBase& kb, const Lexicon& lexicon,
                                               bool restrictor_swaps) {
  const Derivation& d = sentence.source;
  const Analysis an = analyze(d);
  if (!an.ok) return {};
  const Phrase words = sentence.lemmas();
  std::vector<Candidate> cands;
  auto replace = [&](Span sp, Phrase after, const char* rule) {
    cands.push_back({{sp, slice(words, sp), std::move(after), rule, Direction::Contradicting}, {}});
  };

  // Rule 1: a sentence starting with "no" gets "some"/"a" and vice versa.
  if (an.det >= 0 && span_at(d, an.det).begin == 0 && is_leaf_tagged(node_at(d, an.det), "DT")) {
    const std::string& q = words[0];
    if (q == "no") {
      replace({0, 1}, {"some"}, "contra-no-some");
      replace({0, 1}, {"a"}, "contra-no-some");
    } else if (q == "some" || q == "a") {
      replace({0, 1}, {"no"}, "contra-no-some");
    }
  }

  bool negated = false;
  const int core = vp_core(d, an.vp, &negated);

  // Rule 2: swap the determiner of the main verb's direct object.
  if (!negated && an.reading != SubjectReading::Few) {
    const Node& n = node_at(d, core);
    if (n.kind == Node::Kind::Apply && n.fn->category->slash() == Slash::Backward &&
        is_quantifier_shape(*n.fn->category)) {
      const int gq = child(d, core, true);
      if (node_at(d, gq).kind == Node::Kind::Apply) {
        const int det = child(d, gq, true);
        const Span sp = span_at(d, det);
        const std::string& q = words[sp.begin];
        const bool complementary_only = an.reading == SubjectReading::Negative;
        if (q == "no") {
          replace(sp, {"some"}, "contra-object-quantifier");
          replace(sp, {"a"}, "contra-object-quantifier");
        } else if (q == "a" || q == "some" ||
                   (!complementary_only &&
                    is_one_of(q, {"every", "all", "each", "the", "most", "many", "several", "a_few",
                                  "two", "three", "one", "any"}))) {
          replace(sp, {"no"}, "contra-object-quantifier");
        }
      }
    }
  }

  // Rule 3: negate the main verb or remove its negation.
  if (an.reading != SubjectReading::Few) {
    const Span vp = span_at(d, an.vp);
    const Node& v = node_at(d, an.vp);
    auto at = [&](std::size_t k) -> const std::string& {
      static const std::string none;
      return vp.begin + k < vp.end ? words[vp.begin + k] : none;
    };
    const bool nominal_be =
        v.kind == Node::Kind::Apply && v.fn->category->slash() == Slash::Backward &&
        v.arg->kind == Node::Kind::Leaf && v.arg->token.tag == "BE";
    if (at(0) == "do" && at(1) == "not") {
      replace({vp.begin, vp.begin + 2}, {}, "contra-negation");
    } else if (at(0) == "not") {
      replace({vp.begin, vp.begin + 1}, {}, "contra-negation");
    } else if (at(0) == "be" && at(1) == "not") {
      replace({vp.begin + 1, vp.begin + 2}, {}, "contra-negation");
    } else if (at(0) == "be" && !nominal_be) {
      replace({vp.begin, vp.begin + 1}, {"be", "not"}, "contra-negation");
    } else if (at(0) == "do") {
      replace({vp.begin, vp.begin + 1}, {"do", "not"}, "contra-negation");
    } else if (!nominal_be) {
      replace({vp.begin, vp.begin + 1}, {"do", "not", at(0)}, "contra-negation");
    }
  }

  // Rule 4: a word replaced by a disjoint one of the same part of speech.
  auto swap_opposites = [&](int leaf, std::string_view pos) {
    const Span sp = span_at(d, leaf);
    for (const auto& y : kb.opposites({words[sp.begin]})) {
      if (y.size() == 1 && lexicon.has_pos(y[0], pos)) replace(sp, y, "contra-perp");
    }
  };
  if (restrictor_swaps && an.reading == SubjectReading::Anchored && an.restrictor >= 0) {
    int i = an.restrictor;
    for (;;) {
      const Node& n = node_at(d, i);
      if (n.kind == Node::Kind::Leaf) {
        swap_opposites(i, "NN");
        break;
      }
      if (n.kind != Node::Kind::Apply) break;
      const int fn = child(d, i, true);
      if (is_leaf_tagged(node_at(d, fn), "JJ")) swap_opposites(fn, "JJ");
      i = child(d, i, false);
    }
  }
  if (!negated && (an.reading == SubjectReading::Anchored || an.reading == SubjectReading::Universal)) {
    const Node& n = node_at(d, core);
    if (is_leaf_tagged(n, "VB")) swap_opposites(core, "VB");
    if (is_leaf_tagged(n, "JJ")) swap_opposites(core, "JJ");
  }

  return realize(sentence, std::move(cands), lexicon, false);
}

bool sentence_equivalent(const Phrase& a, const Phrase& b, const std::set<std::string>& equivalence_set) {
  const bool strip_ing = equivalence_set.count("ing") > 0;
  auto norm = [&](const Phrase& s) {
    Phrase out;
    for (auto w : s) {
      if (equivalence_set.count(w)) continue;
      if (strip_ing && w.size() > 4 && w.ends_with("ing")) w.resize(w.size() - 3);
      out.push_back(std::move(w));
    }
    return out;
  };
  return norm(a) == norm(b);
}

bool SentenceBase::has_entailment(const Phrase& s) const {
  return std::any_of(entailments.begin(), entailments.end(), [&](const Item& i) { return i.sentence == s; });
}

bool SentenceBase::has_contradiction(const Phrase& s) const {
  return std::any_of(contradictions.begin(), contradictions.end(),
                     [&](const Item& i) { return i.sentence == s; });
}

namespace {

class Searcher {
 public:
  Searcher(const KnowledgeBase& kb, const SearchConfig& config, const Lexicon& lexicon,
           const Phrase* hypothesis)
      : kb_(kb), config_(config), lexicon_(lexicon), hypothesis_(hypothesis) {}

  SearchResult run(const PolarizedSentence& premise) {
    restrictor_swaps_ = subject_is_anchored(premise);
    const Phrase p = premise.lemmas();
    record(result_.base.entailments, entailment_index_, p, Proof{{}, NliLabel::Entail}, 0);
    if (hypothesis_ && sentence_equivalent(p, *hypothesis_, config_.equivalence_set)) {
      result_.label = NliLabel::Entail;
      result_.proof = Proof{{}, NliLabel::Entail};
      return std::move(result_);
    }
    visit(premise, {}, 0);
    if (result_.base.cap_exceeded) {
      result_.label = NliLabel::Neutral;
      result_.proof.reset();
    }
    return std::move(result_);
  }

 private:
  bool done() const { return result_.proof.has_value() || result_.base.cap_exceeded; }

  void record(std::vector<SentenceBase::Item>& items, std::map<Phrase, std::size_t>& index,
              const Phrase& s, Proof proof, int depth) {
    auto it = index.find(s);
    if (it == index.end()) {
      index.emplace(s, items.size());
      items.push_back({s, std::move(proof), depth});
      if (result_.base.size() > config_.max_generated) result_.base.cap_exceeded = true;
    } else if (depth < items[it->second].depth) {
      items[it->second].proof = std::move(proof);
      items[it->second].depth = depth;
    }
  }

  bool matches(const Phrase& s) const {
    return hypothesis_ && sentence_equivalent(s, *hypothesis_, config_.equivalence_set);
  }

  void found(Proof proof, NliLabel label) {
    proof.verdict = label;
    result_.label = label;
    result_.proof = std::move(proof);
  }

  static Proof extend(const std::vector<ProofStep>& path, const Phrase& before, const Generated& g,
                      NliLabel verdict) {
    Proof p{path, verdict};
    p.steps.push_back({before, g.edit, g.sentence});
    return p;
  }

  void visit(const PolarizedSentence& node, const std::vector<ProofStep>& path, int depth) {
    expanded_[node.lemmas()] = depth;
    const Phrase here = node.lemmas();
    std::vector<PolarizedSentence> parsed;
    std::vector<Generated> children;
    if (depth < config_.depth) children = entailments_of(node, kb_, lexicon_, &parsed);
    const auto contras = generate_contradictions(node, kb_, lexicon_, restrictor_swaps_);

    for (const auto& g : children) {
      Proof proof = extend(path, here, g, NliLabel::Entail);
      record(result_.base.entailments, entailment_index_, g.sentence, proof, depth + 1);
      if (matches(g.sentence)) return found(std::move(proof), NliLabel::Entail);
      if (done()) return;
    }
    for (const auto& g : contras) {
      Proof proof = extend(path, here, g, NliLabel::Contradict);
      record(result_.base.contradictions, contradiction_index_, g.sentence, proof, depth + 1);
      if (matches(g.sentence)) return found(std::move(proof), NliLabel::Contradict);
      if (done()) return;
    }
    for (std::size_t k = 0; k < children.size(); ++k) {
      auto seen = expanded_.find(children[k].sentence);
      if (seen != expanded_.end() && seen->second <= depth + 1) continue;
      std::vector<ProofStep> next = path;
      next.push_back({here, children[k].edit, children[k].sentence});
      visit(parsed[k], next, depth + 1);
      if (done()) return;
    }
  }

  const KnowledgeBase& kb_;
  const SearchConfig& config_;
  const Lexicon& lexicon_;
  const Phrase* hypothesis_;
  bool restrictor_swaps_ = true;
  SearchResult result_;
  std::map<Phrase, int> expanded_;
  std::map<Phrase, std::size_t> entailment_index_;
  std::map<Phrase, std::size_t> contradiction_index_;
};

}  // namespace

SearchResult search(const PolarizedSentence& premise, const Phrase& hypothesis, const KnowledgeBase& kb,
                    const SearchConfig& config, const Lexicon& lexicon) {
  if (config.depth < 1) throw Error("search depth must be at least 1");
  return Searcher(kb, config, lexicon, &hypothesis).run(premise);
}

SentenceBase explore(const PolarizedSentence& premise, const KnowledgeBase& kb, const SearchConfig& config,
                     const Lexicon& lexicon) {
  if (config.depth < 1) throw Error("search depth must be at least 1");
  return Searcher(kb, config, lexicon, nullptr).run(premise).base;
}

Classification classify(const ProblemRecord& problem, const Resources& resources,
                        const SearchConfig& config, const TransformConfig& transforms) {
  Classification out;
  const Lexicon& lexicon = *resources.lexicon;
  out.premise = lemmas_of(preprocess(problem.premise, transforms, lexicon, *resources.rewrites));
  out.hypothesis = lemmas_of(preprocess(problem.hypothesis, transforms, lexicon, *resources.rewrites));
  if (out.premise.empty() || out.hypothesis.empty()) {
    out.diagnostics.push_back("empty premise or hypothesis");
    return out;
  }
  if (sentence_equivalent(out.premise, out.hypothesis, config.equivalence_set)) {
    out.label = NliLabel::Entail;
    out.proof = Proof{{}, NliLabel::Entail};
    return out;
  }
  PolarizedSentence premise;
  try {
    premise = polarize_lemmas(out.premise, lexicon);
  } catch (const Error& e) {
    out.diagnostics.push_back(std::string("premise: ") + e.what());
    return out;
  }
  try {
    polarize_lemmas(out.hypothesis, lexicon);
  } catch (const Error& e) {
    out.diagnostics.push_back(std::string("hypothesis: ") + e.what());
    return out;
  }
  KnowledgeBase kb;
  try {
    kb = build_kb(premise, out.hypothesis, *resources.resource, resources.extra, lexicon);
  } catch (const Error& e) {
    out.diagnostics.push_back(std::string("knowledge base: ") + e.what());
    return out;
  }
  auto result = search(premise, out.hypothesis, kb, config, lexicon);
  out.label = result.label;
  out.proof = std::move(result.proof);
  out.cap_exceeded = result.base.cap_exceeded;
  if (out.cap_exceeded) {
    out.diagnostics.push_back("sentence base cap of " + std::to_string(config.max_generated) + " exceeded");
  }
  return out;
}

}  // namespace natlog
