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

#include "natlog/oracle.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <sstream>

namespace natlog {

namespace {

int count(EntitySet s) { return std::popcount(s); }

bool is_universal(std::string_view q) {
  return q == "every" || q == "all" || q == "each" || q == "everything";
}
bool is_negative(std::string_view q) { return q == "no" || q == "nothing"; }

bool quantify(std::string_view q, EntitySet r, EntitySet s) {
  const int inter = count(r & s);
  const int rest = count(r & ~s);
  if (is_universal(q)) return rest == 0;
  if (is_negative(q)) return inter == 0;
  if (q == "some" || q == "a" || q == "an" || q == "several" || q == "a_few" || q == "any" ||
      q == "one" || q == "something") {
    return inter >= 1;
  }
  if (q == "two") return inter >= 2;
  if (q == "three") return inter >= 3;
  if (q == "most") return inter > rest;
  if (q == "many") return inter >= 1 && 3 * inter >= count(r);
  if (q == "few") return inter <= 1;
  if (q == "the") return count(r) == 1 && rest == 0;
  throw UninterpretedLemma("no quantifier semantics for '" + std::string(q) + "'");
}

const std::string& quantifier_of_word(const std::string& lemma) {
  static const std::string some = "some", every = "every", no = "no";
  if (lemma == "something") return some;
  if (lemma == "everything") return every;
  if (lemma == "nothing") return no;
  return lemma;
}

struct Val {
  enum class K { Bool, Set, Rel, GQ, Det, Mod, PrepNeg, Neg, Id, RelPron } k = K::Set;
  bool truth = false;
  EntitySet set = 0;
  std::vector<EntitySet> rel;
  std::string q;
};

// Leaf categories, recognized by shape.
bool is_determiner(const Category& c) {
  return !c.is_atomic() && c.slash() == Slash::Forward && c.argument()->same_shape(*cat::N()) &&
         is_quantifier_shape(*c.result());
}

bool is_relation(const Category& c) {
  return !c.is_atomic() && c.slash() == Slash::Forward && c.argument()->same_shape(*cat::NP());
}

bool is_negated_prep(const Category& c) {
  return !c.is_atomic() && c.slash() == Slash::Forward && is_quantifier_shape(*c.argument()) &&
         c.argument()->slash() == Slash::Backward;
}

bool is_relpron(const Category& c) {
  return !c.is_atomic() && c.slash() == Slash::Forward && c.argument()->same_shape(*cat::VP()) &&
         c.result()->same_shape(*Category::functor(cat::N(), Slash::Backward, cat::N()));
}

bool yields_set(const Category& c) { return c.same_shape(*cat::N()) || c.same_shape(*cat::VP()); }

class Evaluator {
 public:
  explicit Evaluator(const FiniteModel& m) : m_(m) {}

  bool presupposition = true;

  Val eval(const Node& n) {
    switch (n.kind) {
      case Node::Kind::Leaf: return leaf(n);
      case Node::Kind::Lift: {
        Val a = eval(*n.arg);
        Val out;
        out.k = Val::K::GQ;
        out.q = "some";
        out.set = a.set;
        presupposition = presupposition && a.set != 0;
        return out;
      }
      case Node::Kind::Apply: return apply(n, eval(*n.fn), eval(*n.arg));
    }
    return {};
  }

 private:
  EntitySet unary(const std::string& lemma) const {
    auto it = m_.unary.find(lemma);
    if (it == m_.unary.end()) throw UninterpretedLemma("no extension for '" + lemma + "'");
    return it->second;
  }

  std::vector<EntitySet> binary(const std::string& lemma) const {
    if (lemma == "be") {
      std::vector<EntitySet> id(static_cast<std::size_t>(m_.domain));
      for (int x = 0; x < m_.domain; ++x) id[static_cast<std::size_t>(x)] = EntitySet{1} << x;
      return id;
    }
    auto it = m_.binary.find(lemma);
    if (it == m_.binary.end()) throw UninterpretedLemma("no relation for '" + lemma + "'");
    return it->second;
  }

  Val leaf(const Node& n) {
    const Category& c = *n.category;
    const std::string& w = n.token.lemma;
    Val v;
    if (is_determiner(c)) {
      v.k = Val::K::Det;
      v.q = w;
    } else if (is_quantifier_shape(c)) {
      v.k = Val::K::GQ;
      v.q = quantifier_of_word(w);
      v.set = m_.all();
    } else if (c.is_atomic() || c.same_shape(*cat::VP())) {
      v.k = Val::K::Set;
      v.set = unary(w);
    } else if (is_negated_prep(c)) {
      v.k = Val::K::PrepNeg;
      v.rel = binary("with");
    } else if (is_relpron(c)) {
      v.k = Val::K::RelPron;
    } else if (is_relation(c)) {
      v.k = Val::K::Rel;
      v.rel = binary(w);
    } else if (w == "not") {
      v.k = Val::K::Neg;
    } else if (w == "do" || w == "be") {
      v.k = Val::K::Id;
    } else {
      v.k = Val::K::Mod;
      v.set = unary(w);
    }
    return v;
  }

  Val from_image(const Node& n, const std::vector<EntitySet>& rel, const Val& gq, bool negate) {
    EntitySet s = 0;
    for (int x = 0; x < m_.domain; ++x) {
      const bool holds = quantify(gq.q, gq.set, rel[static_cast<std::size_t>(x)]);
      if (holds != negate) s |= EntitySet{1} << x;
    }
    Val out;
    out.k = yields_set(*n.category) ? Val::K::Set : Val::K::Mod;
    out.set = s;
    return out;
  }

  Val apply(const Node& n, const Val& f, const Val& a) {
    Val out;
    switch (f.k) {
      case Val::K::Det:
        if (a.k != Val::K::Set) break;
        out.k = Val::K::GQ;
        out.q = f.q;
        out.set = a.set;
        presupposition = presupposition && a.set != 0;
        return out;
      case Val::K::GQ:
        if (a.k == Val::K::Set) {
          out.k = Val::K::Bool;
          out.truth = quantify(f.q, f.set, a.set);
          return out;
        }
        if (a.k == Val::K::Rel) return from_image(n, a.rel, f, false);
        break;
      case Val::K::PrepNeg:
        if (a.k == Val::K::GQ) return from_image(n, f.rel, a, true);
        break;
      case Val::K::Mod:
        if (a.k != Val::K::Set) break;
        out.k = Val::K::Set;
        out.set = f.set & a.set;
        return out;
      case Val::K::Neg:
        if (a.k != Val::K::Set) break;
        out.k = Val::K::Set;
        out.set = m_.all() & ~a.set;
        return out;
      case Val::K::Id:
        if (a.k != Val::K::Set) break;
        return a;
      case Val::K::RelPron:
        if (a.k != Val::K::Set) break;
        out.k = Val::K::Mod;
        out.set = a.set;
        return out;
      default:
        break;
    }
    throw Error("construction outside the oracle's fragment at category " + n.category->str());
  }

  const FiniteModel& m_;
};

void collect_symbols(const Node& n, std::set<Symbol>& out) {
  switch (n.kind) {
    case Node::Kind::Lift:
      collect_symbols(*n.arg, out);
      return;
    case Node::Kind::Apply:
      collect_symbols(*n.fn, out);
      collect_symbols(*n.arg, out);
      return;
    case Node::Kind::Leaf:
      break;
  }
  const Category& c = *n.category;
  const std::string& w = n.token.lemma;
  if (is_determiner(c) || is_quantifier_shape(c) || is_relpron(c)) return;
  if (c.is_atomic() || c.same_shape(*cat::VP())) {
    out.insert({w, 1});
  } else if (is_negated_prep(c)) {
    out.insert({"with", 2});
  } else if (is_relation(c)) {
    if (w != "be") out.insert({w, 2});
  } else if (w != "not" && w != "do" && w != "be") {
    out.insert({w, 1});
  }
}

}  // namespace

std::string FiniteModel::to_table() const {
  std::ostringstream out;
  out << "entity";
  for (const auto& [w, _] : unary) out << '\t' << w;
  for (const auto& [w, _] : binary) out << '\t' << w << "(x,_)";
  out << '\n';
  for (int x = 0; x < domain; ++x) {
    out << x;
    for (const auto& [_, s] : unary) out << '\t' << ((s >> x) & 1);
    for (const auto& [_, r] : binary) {
      out << "\t{";
      bool first = true;
      for (int y = 0; y < domain; ++y) {
        if ((r[static_cast<std::size_t>(x)] >> y) & 1) {
          out << (first ? "" : ",") << y;
          first = false;
        }
      }
      out << '}';
    }
    out << '\n';
  }
  return out.str();
}

std::vector<Symbol> symbols_of(const Derivation& sentence) {
  std::set<Symbol> out;
  if (!sentence.empty()) collect_symbols(*sentence.root(), out);
  return {out.begin(), out.end()};
}

bool eval_sentence(const FiniteModel& model, const Derivation& sentence) {
  Evaluator ev(model);
  Val v = ev.eval(*sentence.root());
  if (v.k != Val::K::Bool) throw Error("not a sentence: " + sentence.root()->category->str());
  return v.truth;
}

Reading read_sentence(const FiniteModel& model, const Derivation& sentence) {
  Evaluator ev(model);
  Reading r;
  const Node& root = *sentence.root();
  r.anchor_domain = model.all();
  if (root.kind == Node::Kind::Apply && is_quantifier_shape(*root.fn->category) &&
      root.fn->category->slash() == Slash::Forward) {
    Val gq = ev.eval(*root.fn);
    Val scope = ev.eval(*root.arg);
    if (gq.k != Val::K::GQ || scope.k != Val::K::Set) throw Error("unexpected sentence shape");
    r.truth = quantify(gq.q, gq.set, scope.set);
    const bool anchored = !is_universal(gq.q) && !is_negative(gq.q) && gq.q != "few";
    r.anchored = anchored;
    if (anchored) r.anchor_domain = gq.set;
    r.true_at = r.truth ? (anchored ? gq.set & scope.set : model.all()) : 0;
  } else {
    Val v = ev.eval(root);
    if (v.k != Val::K::Bool) throw Error("not a sentence: " + root.category->str());
    r.truth = v.truth;
    r.true_at = r.truth ? model.all() : 0;
  }
  r.presupposition = ev.presupposition;
  return r;
}

namespace {

// Single-word KB constraints restricted to symbols of one arity.
struct Constraints {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> up;  // reflexive-transitive successors
  std::vector<std::pair<std::size_t, std::size_t>> disjoint;

  Constraints(const KnowledgeBase& kb, std::vector<std::string> symbols) : names(std::move(symbols)) {
    const std::size_t n = names.size();
    up.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (kb.leq({names[i]}, {names[j]})) up[i].push_back(j);
        if (i < j && kb.perp({names[i]}, {names[j]})) disjoint.emplace_back(i, j);
      }
    }
  }

  void close(std::vector<char>& profile) const {
    std::vector<char> out(profile.size(), 0);
    for (std::size_t i = 0; i < profile.size(); ++i) {
      if (!profile[i]) continue;
      for (std::size_t j : up[i]) out[j] = 1;
    }
    profile = std::move(out);
  }

  bool consistent(const std::vector<char>& profile) const {
    for (auto [i, j] : disjoint) {
      if (profile[i] && profile[j]) return false;
    }
    return true;
  }
};

std::vector<std::string> names_with_arity(const std::vector<Symbol>& vocab, int arity) {
  std::vector<std::string> out;
  for (const auto& s : vocab) {
    if (s.arity == arity && (arity != 2 || s.lemma != "be")) out.push_back(s.lemma);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<FiniteModel> models_satisfying(const KnowledgeBase& kb, const std::vector<Symbol>& vocabulary,
                                           std::size_t n_models, std::uint64_t seed, int max_domain,
                                           const std::vector<Symbol>& inhabited) {
  if (max_domain < 1 || max_domain > kMaxDomain) throw Error("domain size must be in 1..6");
  const Constraints c1(kb, names_with_arity(vocabulary, 1));
  const Constraints c2(kb, names_with_arity(vocabulary, 2));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto sample_profile = [&](const Constraints& c, double p) {
    std::vector<char> prof(c.names.size(), 0);
    for (int attempt = 0; attempt < 8; ++attempt) {
      for (auto& b : prof) b = unit(rng) < p ? 1 : 0;
      c.close(prof);
      if (c.consistent(prof)) return prof;
    }
    return std::vector<char>(c.names.size(), 0);
  };

  std::vector<FiniteModel> out;
  out.reserve(n_models);
  for (std::size_t k = 0; k < n_models; ++k) {
    FiniteModel m;
    m.domain = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_domain));
    const double p = 0.2 + 0.6 * unit(rng);
    std::vector<std::vector<char>> unary_profiles(static_cast<std::size_t>(m.domain));
    for (auto& prof : unary_profiles) prof = sample_profile(c1, p);

    for (const auto& sym : inhabited) {
      if (sym.arity != 1) continue;
      auto it = std::find(c1.names.begin(), c1.names.end(), sym.lemma);
      if (it == c1.names.end()) continue;
      const auto idx = static_cast<std::size_t>(it - c1.names.begin());
      bool present = false;
      for (const auto& prof : unary_profiles) present = present || prof[idx];
      if (present) continue;
      std::vector<char> minimal(c1.names.size(), 0);
      minimal[idx] = 1;
      c1.close(minimal);
      if (!c1.consistent(minimal)) {
        throw UnsatisfiableKb("'" + sym.lemma + "' cannot be inhabited under the knowledge base");
      }
      auto& target = unary_profiles[rng() % unary_profiles.size()];
      std::vector<char> merged = target;
      merged[idx] = 1;
      c1.close(merged);
      target = c1.consistent(merged) ? merged : minimal;
    }
    for (std::size_t i = 0; i < c1.names.size(); ++i) {
      EntitySet s = 0;
      for (int x = 0; x < m.domain; ++x) {
        if (unary_profiles[static_cast<std::size_t>(x)][i]) s |= EntitySet{1} << x;
      }
      m.unary[c1.names[i]] = s;
    }
    for (const auto& w : c2.names) m.binary[w].assign(static_cast<std::size_t>(m.domain), 0);
    for (int x = 0; x < m.domain; ++x) {
      for (int y = 0; y < m.domain; ++y) {
        auto prof = sample_profile(c2, p * 0.7);
        for (std::size_t i = 0; i < c2.names.size(); ++i) {
          if (prof[i]) m.binary[c2.names[i]][static_cast<std::size_t>(x)] |= EntitySet{1} << y;
        }
      }
    }
    // Inhabited relations get one pair if still empty.
    for (const auto& sym : inhabited) {
      if (sym.arity != 2 || !m.binary.count(sym.lemma)) continue;
      auto& r = m.binary[sym.lemma];
      if (std::any_of(r.begin(), r.end(), [](EntitySet s) { return s != 0; })) continue;
      auto it = std::find(c2.names.begin(), c2.names.end(), sym.lemma);
      std::vector<char> minimal(c2.names.size(), 0);
      minimal[static_cast<std::size_t>(it - c2.names.begin())] = 1;
      c2.close(minimal);
      if (!c2.consistent(minimal)) {
        throw UnsatisfiableKb("'" + sym.lemma + "' cannot be inhabited under the knowledge base");
      }
      const int x = static_cast<int>(rng() % static_cast<std::uint64_t>(m.domain));
      const int y = static_cast<int>(rng() % static_cast<std::uint64_t>(m.domain));
      for (std::size_t i = 0; i < c2.names.size(); ++i) {
        auto& row = m.binary[c2.names[i]][static_cast<std::size_t>(x)];
        row = minimal[i] ? (row | (EntitySet{1} << y)) : (row & ~(EntitySet{1} << y));
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

bool respects_kb(const FiniteModel& model, const KnowledgeBase& kb) {
  // Pairwise over the model's symbols so relations implied by the closure
  // are checked too.
  for (const auto& [a, sa] : model.unary) {
    for (const auto& [b, sb] : model.unary) {
      if (a == b) continue;
      if ((sa & ~sb) && kb.leq({a}, {b})) return false;
      if ((sa & sb) && kb.perp({a}, {b})) return false;
    }
  }
  for (const auto& [a, ra] : model.binary) {
    for (const auto& [b, rb] : model.binary) {
      if (a == b) continue;
      bool escapes = false, overlaps = false;
      for (int x = 0; x < model.domain; ++x) {
        escapes = escapes || (ra[static_cast<std::size_t>(x)] & ~rb[static_cast<std::size_t>(x)]);
        overlaps = overlaps || (ra[static_cast<std::size_t>(x)] & rb[static_cast<std::size_t>(x)]);
      }
      if (escapes && kb.leq({a}, {b})) return false;
      if (overlaps && kb.perp({a}, {b})) return false;
    }
  }
  return true;
}

std::uint64_t count_assignments(const std::vector<Symbol>& vocabulary, int max_domain) {
  std::uint64_t total = 0;
  for (int d = 1; d <= max_domain; ++d) {
    int bits = 0;
    for (const auto& s : vocabulary) bits += s.arity == 1 ? d : d * d;
    if (bits >= 63) throw Error("too many assignments to count");
    total += std::uint64_t{1} << bits;
  }
  return total;
}

std::uint64_t enumerate_models(const KnowledgeBase& kb, const std::vector<Symbol>& vocabulary,
                               int max_domain, const std::function<void(const FiniteModel&)>& visit) {
  const auto unary = names_with_arity(vocabulary, 1);
  const auto binary = names_with_arity(vocabulary, 2);
  std::uint64_t visited = 0;
  for (int d = 1; d <= max_domain; ++d) {
    const int bits = static_cast<int>(unary.size()) * d + static_cast<int>(binary.size()) * d * d;
    if (bits > 26) throw Error("exhaustive enumeration too large");
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
      FiniteModel m;
      m.domain = d;
      std::uint64_t rest = code;
      const EntitySet row_mask = (EntitySet{1} << d) - 1;
      for (const auto& w : unary) {
        m.unary[w] = static_cast<EntitySet>(rest & row_mask);
        rest >>= d;
      }
      for (const auto& w : binary) {
        auto& r = m.binary[w];
        r.resize(static_cast<std::size_t>(d));
        for (int x = 0; x < d; ++x) {
          r[static_cast<std::size_t>(x)] = static_cast<EntitySet>(rest & row_mask);
          rest >>= d;
        }
      }
      ++visited;
      if (respects_kb(m, kb)) visit(m);
    }
  }
  return visited;
}

namespace {

std::vector<Symbol> joint_vocabulary(std::initializer_list<const Derivation*> ds,
                                     const std::vector<Derivation>& context) {
  std::set<Symbol> all;
  for (const auto* d : ds) {
    for (auto& s : symbols_of(*d)) all.insert(s);
  }
  for (const auto& d : context) {
    for (auto& s : symbols_of(d)) all.insert(s);
  }
  return {all.begin(), all.end()};
}

// Runs `check` over the exhaustive or sampled models; stops at the first
// model for which it returns an anchor.
template <typename Check>
OracleVerdict search_models(const KnowledgeBase& kb, const std::vector<Symbol>& vocab,
                            std::size_t sample_size, std::uint64_t seed, Check check) {
  std::optional<Counterexample> found;
  bool exhaustive = false;
  try {
    exhaustive = vocab.size() <= 4 && count_assignments(vocab, 3) <= (std::uint64_t{1} << 13);
  } catch (const Error&) {
    exhaustive = false;
  }
  if (exhaustive) {
    enumerate_models(kb, vocab, 3, [&](const FiniteModel& m) {
      if (found) return;
      if (auto e = check(m)) found = Counterexample{m, *e};
    });
    if (found) return *found;
  }
  for (const auto& m : models_satisfying(kb, vocab, sample_size, seed)) {
    if (auto e = check(m)) return Counterexample{m, *e};
  }
  return NoCounterexample{};
}

bool context_holds(const FiniteModel& m, const std::vector<Derivation>& context) {
  for (const auto& d : context) {
    if (!read_sentence(m, d).presupposition) return false;
  }
  return true;
}

std::optional<int> first_entity(EntitySet s) {
  if (!s) return std::nullopt;
  return std::countr_zero(s);
}

}  // namespace

OracleVerdict entails_under(const KnowledgeBase& kb, const Derivation& premise, const Derivation& hypothesis,
                            std::size_t sample_size, std::uint64_t seed,
                            const std::vector<Derivation>& context) {
  const auto vocab = joint_vocabulary({&premise, &hypothesis}, context);
  return search_models(kb, vocab, sample_size, seed, [&](const FiniteModel& m) -> std::optional<int> {
    const Reading p = read_sentence(m, premise);
    if (!p.truth) return std::nullopt;
    const Reading h = read_sentence(m, hypothesis);
    if (!p.presupposition || !h.presupposition || !context_holds(m, context)) return std::nullopt;
    // An anchored premise fixes the entity; otherwise plain truth decides.
    if (!p.anchored) return h.truth ? std::nullopt : std::optional<int>(0);
    return first_entity(p.true_at & ~h.true_at);
  });
}

OracleVerdict contradicts_under(const KnowledgeBase& kb, const Derivation& premise,
                                const Derivation& contradiction, std::size_t sample_size,
                                std::uint64_t seed, const std::vector<Derivation>& context) {
  const auto vocab = joint_vocabulary({&premise, &contradiction}, context);
  return search_models(kb, vocab, sample_size, seed, [&](const FiniteModel& m) -> std::optional<int> {
    const Reading p = read_sentence(m, premise);
    if (!p.truth) return std::nullopt;
    const Reading c = read_sentence(m, contradiction);
    if (!p.presupposition || !c.presupposition || !context_holds(m, context)) return std::nullopt;
    return first_entity(p.true_at & c.true_at);
  });
}

}  // namespace natlog
