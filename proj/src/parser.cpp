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

#include <map>

#include "natlog/syntax.hpp"

namespace natlog {

namespace {

struct Cand {
  NodePtr node;
  std::size_t end;
};
using Cands = std::vector<Cand>;

// Keeps the first (preferred) candidate per end position.
void push(Cands& out, NodePtr node, std::size_t end) {
  for (const auto& c : out) {
    if (c.end == end) return;
  }
  out.push_back({std::move(node), end});
}

CategoryPtr modifier_of(const CategoryPtr& x) { return Category::functor(x, Slash::Backward, x); }

class FragmentParser {
 public:
  FragmentParser(const Phrase& words, const Lexicon& lexicon) : w_(words), lex_(lexicon) {}

  NodePtr parse() {
    for (const auto& s : subject(0)) {
      for (const auto& v : vp(s.end)) {
        if (v.end == w_.size()) return make_apply(s.node, v.node);
      }
    }
    return nullptr;
  }

 private:
  const LexEntry* entry(std::size_t i, std::string_view pos) const {
    return i < w_.size() ? lex_.find(w_[i], pos) : nullptr;
  }

  NodePtr leaf(std::size_t i, CategoryPtr c, std::string_view pos) const {
    return make_leaf(w_[i], std::move(c), w_[i], std::string(pos));
  }

  template <typename F>
  const Cands& memo(const std::string& key, F&& build) {
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Cands c = build();
    return memo_.emplace(key, std::move(c)).first->second;
  }

  static std::string key(const char* nt, std::size_t i, const CategoryPtr& x = nullptr) {
    std::string k = nt;
    k += ':';
    k += std::to_string(i);
    if (x) k += ':' + x->str();
    return k;
  }

  // Quantified noun phrase whose scope is a VP (subject position).
  const Cands& subject(std::size_t i) {
    return memo(key("subj", i), [&] {
      Cands out;
      if (const auto* det = entry(i, "DT")) {
        const Mono restrictor = det->category->slot_mono();
        const Mono scope = det->category->is_atomic() || det->category->result()->is_atomic()
                               ? Mono::UpSlot
                               : det->category->result()->slot_mono();
        auto c = Category::functor(cat::subject_gq(scope), Slash::Forward, cat::N(), restrictor);
        for (const auto& n : nbar(i + 1)) push(out, make_apply(leaf(i, c, "DT"), n.node), n.end);
      }
      if (const auto* q = entry(i, "QNP")) {
        push(out, leaf(i, cat::subject_gq(q->category->slot_mono()), "QNP"), i + 1);
      }
      for (const auto& n : nbar(i)) push(out, make_lift(n.node, cat::subject_gq(Mono::UpSlot)), n.end);
      return out;
    });
  }

  // Quantified noun phrase that takes a functor X/NP to its left.
  const Cands& object(std::size_t i, const CategoryPtr& x) {
    return memo(key("obj", i, x), [&] {
      Cands out;
      if (const auto* det = entry(i, "DT")) {
        const Mono restrictor = det->category->slot_mono();
        const Mono scope = det->category->result()->is_atomic()
                               ? Mono::UpSlot
                               : det->category->result()->slot_mono();
        auto c = Category::functor(cat::object_gq(x, scope), Slash::Forward, cat::N(), restrictor);
        for (const auto& n : nbar(i + 1)) push(out, make_apply(leaf(i, c, "DT"), n.node), n.end);
      }
      if (const auto* q = entry(i, "QNP")) {
        push(out, leaf(i, cat::object_gq(x, q->category->slot_mono()), "QNP"), i + 1);
      }
      for (const auto& n : nbar(i)) push(out, make_lift(n.node, cat::object_gq(x, Mono::UpSlot)), n.end);
      return out;
    });
  }

  // Adj* N (PP | RelCl)?
  const Cands& nbar(std::size_t i) {
    return memo(key("nbar", i), [&] {
      Cands out;
      if (const auto* adj = entry(i, "JJ")) {
        for (const auto& n : nbar(i + 1)) push(out, make_apply(leaf(i, adj->category, "JJ"), n.node), n.end);
      }
      if (entry(i, "NN")) {
        auto noun = leaf(i, cat::N(), "NN");
        for (const auto& pm : pp(i + 1, modifier_of(cat::N()))) push(out, make_apply(pm.node, noun), pm.end);
        for (const auto& rc : relcl(i + 1)) push(out, make_apply(rc.node, noun), rc.end);
        push(out, noun, i + 1);
      }
      return out;
    });
  }

  // Prep NP, producing category t.
  const Cands& pp(std::size_t i, const CategoryPtr& t) {
    return memo(key("pp", i, t), [&] {
      Cands out;
      if (const auto* p = entry(i, "IN")) {
        auto c = Category::functor(t, Slash::Forward, cat::NP(), p->category->slot_mono());
        auto prep = leaf(i, c, "IN");
        for (const auto& o : object(i + 1, t)) push(out, make_apply(o.node, prep), o.end);
      }
      if (const auto* p = entry(i, "INNEG")) {
        auto c = Category::functor(t, Slash::Forward, cat::object_gq(t, Mono::UpSlot),
                                   p->category->slot_mono());
        auto prep = leaf(i, c, "INNEG");
        for (const auto& o : object(i + 1, t)) push(out, make_apply(prep, o.node), o.end);
      }
      return out;
    });
  }

  const Cands& relcl(std::size_t i) {
    return memo(key("relcl", i), [&] {
      Cands out;
      if (const auto* r = entry(i, "REL")) {
        auto rel = leaf(i, r->category, "REL");
        for (const auto& v : vp(i + 1)) push(out, make_apply(rel, v.node), v.end);
      }
      return out;
    });
  }

  const Cands& vp(std::size_t i) {
    return memo(key("vp", i), [&] {
      Cands out;
      if (const auto* d = entry(i, "DO")) {
        auto aux = leaf(i, d->category, "DO");
        for (const auto& v : vp_negatable(i + 1)) push(out, make_apply(aux, v.node), v.end);
      }
      if (const auto* b = entry(i, "BE")) {
        auto cop = leaf(i, b->category, "BE");
        for (const auto& p : copular(i + 1)) push(out, make_apply(cop, p.node), p.end);
        auto identity = leaf(i, Category::functor(cat::VP(), Slash::Forward, cat::NP()), "BE");
        for (const auto& o : object(i + 1, cat::VP())) {
          for (const auto& e : extend(make_apply(o.node, identity), o.end)) push(out, e.node, e.end);
        }
      }
      for (const auto& v : vp_negatable(i)) push(out, v.node, v.end);
      return out;
    });
  }

  const Cands& vp_negatable(std::size_t i) {
    return memo(key("vpneg", i), [&] {
      Cands out;
      if (const auto* n = entry(i, "NOT")) {
        auto neg = leaf(i, n->category, "NOT");
        for (const auto& v : vp_plain(i + 1)) push(out, make_apply(neg, v.node), v.end);
      }
      for (const auto& v : vp_plain(i)) push(out, v.node, v.end);
      return out;
    });
  }

  const Cands& copular(std::size_t i) {
    return memo(key("cop", i), [&] {
      Cands out;
      if (const auto* n = entry(i, "NOT")) {
        auto neg = leaf(i, n->category, "NOT");
        for (const auto& p : predicate(i + 1)) push(out, make_apply(neg, p.node), p.end);
      }
      for (const auto& p : predicate(i)) push(out, p.node, p.end);
      return out;
    });
  }

  const Cands& predicate(std::size_t i) {
    return memo(key("pred", i), [&] {
      Cands out;
      // "be quickly go ...": the adverb is used as a forward modifier.
      if (const auto* adv = entry(i, "RB")) {
        auto c = Category::functor(cat::VP(), Slash::Forward, cat::VP(), adv->category->slot_mono());
        for (const auto& v : vp_plain(i + 1)) push(out, make_apply(leaf(i, c, "RB"), v.node), v.end);
      }
      if (entry(i, "JJ")) {
        for (const auto& e : extend(leaf(i, cat::VP(), "JJ"), i + 1)) push(out, e.node, e.end);
      }
      for (const auto& p : pp(i, cat::VP())) {
        for (const auto& e : extend(p.node, p.end)) push(out, e.node, e.end);
      }
      for (const auto& v : vp_plain(i)) push(out, v.node, v.end);
      return out;
    });
  }

  // V (NP)? (Adv | PP)*
  const Cands& vp_plain(std::size_t i) {
    return memo(key("vplain", i), [&] {
      Cands out;
      if (const auto* tv = entry(i, "VBT")) {
        auto verb = leaf(i, tv->category, "VBT");
        for (const auto& o : object(i + 1, cat::VP())) {
          for (const auto& e : extend(make_apply(o.node, verb), o.end)) push(out, e.node, e.end);
        }
      }
      if (entry(i, "VB")) {
        for (const auto& e : extend(leaf(i, cat::VP(), "VB"), i + 1)) push(out, e.node, e.end);
      }
      return out;
    });
  }

  // Post-verbal modifiers, longest first.
  Cands extend(const NodePtr& core, std::size_t j) {
    Cands out;
    if (const auto* adv = entry(j, "RB")) {
      for (const auto& e : extend(make_apply(leaf(j, adv->category, "RB"), core), j + 1)) {
        push(out, e.node, e.end);
      }
    }
    for (const auto& p : pp(j, modifier_of(cat::VP()))) {
      for (const auto& e : extend(make_apply(p.node, core), p.end)) push(out, e.node, e.end);
    }
    push(out, core, j);
    return out;
  }

  const Phrase& w_;
  const Lexicon& lex_;
  std::map<std::string, Cands> memo_;
};

}  // namespace

Derivation parse_fragment(const Phrase& lemmas, const Lexicon& lexicon) {
  if (lemmas.empty()) throw NoParseError("empty sentence");
  for (const auto& w : lemmas) {
    if (!lexicon.contains(w)) throw OovError(w);
  }
  NodePtr root;
  try {
    root = FragmentParser(lemmas, lexicon).parse();
  } catch (const CombinationError& e) {
    throw NoParseError(std::string("lexicon categories do not combine: ") + e.what());
  }
  if (!root) throw NoParseError("no parse in the fragment for '" + join(lemmas) + "'");
  return Derivation(root);
}

}  // namespace natlog
