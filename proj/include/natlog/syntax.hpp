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

// Categorial syntax: monotonicity-marked categories, binary derivations,
// the polarization lexicon and a deterministic parser for a controlled
// English fragment.

#ifndef NATLOG_SYNTAX_HPP_
#define NATLOG_SYNTAX_HPP_

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "natlog/core.hpp"

namespace natlog {

class SchemaError : public Error {
 public:
  using Error::Error;
};
class CombinationError : public Error {
 public:
  using Error::Error;
};
class OovError : public Error {
 public:
  OovError(std::string word)
      : Error("word not in lexicon: '" + word + "'"), word_(std::move(word)) {}
  const std::string& word() const { return word_; }

 private:
  std::string word_;
};
class NoParseError : public Error {
 public:
  using Error::Error;
};

enum class Slash : std::uint8_t { Forward, Backward };

class Category;
using CategoryPtr = std::shared_ptr<const Category>;

// Either an atomic symbol (S, NP, N, PP) or result/argument with a slash and
// a monotonicity mark on the argument slot.
class Category {
 public:
  static CategoryPtr atom(std::string symbol);
  static CategoryPtr functor(CategoryPtr result, Slash slash, CategoryPtr argument,
                             Mono mono = Mono::UpSlot);

  bool is_atomic() const { return argument_ == nullptr; }
  const std::string& symbol() const { return symbol_; }
  const CategoryPtr& result() const { return result_; }
  const CategoryPtr& argument() const { return argument_; }
  Slash slash() const { return slash_; }
  Mono slot_mono() const { return mono_; }

  // Structural equality ignoring slot marks.
  bool same_shape(const Category& other) const;
  // Structural equality including slot marks.
  bool operator==(const Category& other) const;

  // "(S\NP)/NP[+]"
  std::string str() const;

 private:
  std::string symbol_;
  CategoryPtr result_;
  CategoryPtr argument_;
  Slash slash_ = Slash::Forward;
  Mono mono_ = Mono::UpSlot;
};

// Parses the notation produced by Category::str(). A missing mark means "+".
CategoryPtr parse_category(std::string_view text);

namespace cat {
CategoryPtr S();
CategoryPtr NP();
CategoryPtr N();
CategoryPtr VP();                                 // S\NP
CategoryPtr subject_gq(Mono scope);               // S/(S\NP)
CategoryPtr object_gq(const CategoryPtr& x, Mono scope);  // X\(X/NP)
}  // namespace cat

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// A derivation node. Apply combines a functor with its argument by forward or
// backward application. Lift is the unary rule that turns a bare noun phrase
// into an existential generalized quantifier.
struct Node {
  enum class Kind : std::uint8_t { Leaf, Apply, Lift };

  Kind kind = Kind::Leaf;
  CategoryPtr category;
  Token token;  // Leaf only
  NodePtr fn;   // Apply only
  NodePtr arg;  // Apply and Lift
};

NodePtr make_leaf(std::string lemma, CategoryPtr category, std::string surface = {},
                  std::string tag = {});
// Throws CombinationError when fn's category cannot take arg.
NodePtr make_apply(NodePtr fn, NodePtr arg);
// Throws CombinationError unless arg is N and result is a quantifier shape.
NodePtr make_lift(NodePtr arg, CategoryPtr result);

// True iff `result` is S/(S\NP) or X\(X/NP) for some X.
bool is_quantifier_shape(const Category& result);

// A finished derivation: the tree plus its tokens (with indices assigned in
// left-to-right yield order) and a pre-order table of constituents.
class Derivation {
 public:
  struct Constituent {
    const Node* node = nullptr;
    Span span;
    int parent = -1;  // index into constituents(), -1 for the root
    // Slot the node fills in its parent: UpSlot for a functor child.
    Mono slot = Mono::UpSlot;
    bool is_functor_child = false;
  };

  Derivation() = default;
  explicit Derivation(NodePtr root);

  const NodePtr& root() const { return root_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  const std::vector<Constituent>& constituents() const { return constituents_; }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return root_ == nullptr; }

  // Index of the topmost constituent with exactly this span, or -1.
  int find(Span span) const;

 private:
  NodePtr root_;
  std::vector<Token> tokens_;
  std::vector<Constituent> constituents_;
};

bool structurally_equal(const Node& a, const Node& b);

// Left-to-right leaf lemmas.
Phrase yield_of(const Derivation& d);
Phrase yield_of(const Node& n);

// JSON-shaped derivation documents:
//   {"leaf": {"lemma", "surface", "cat"}}
//   {"apply": {"fn": node, "arg": node, "cat"}}
//   {"lift": {"arg": node, "cat"}}
// Errors carry the node path, e.g. "$.apply.fn.apply.arg".
Derivation load_derivation(std::string_view document);
// When `polarities` has one entry per constituent, each node gets a "pol" field.
std::string to_json(const Derivation& d, std::span<const Polarity> polarities = {});

struct LexEntry {
  CategoryPtr category;
  std::string pos;  // DT QNP NN JJ VB VBT IN INNEG RB NOT DO BE REL

  bool operator==(const LexEntry& o) const {
    return pos == o.pos && *category == *o.category;
  }
};

// lemma -> entries, loaded from a TSV with columns lemma, category, POS.
class Lexicon {
 public:
  static Lexicon parse_tsv(std::string_view text);
  static Lexicon load(const std::string& path);
  // The lexicon shipped in data/lexicon.tsv.
  static const Lexicon& bundled();

  void add(const std::string& lemma, LexEntry entry);
  const std::vector<LexEntry>* lookup(std::string_view lemma) const;
  const LexEntry* find(std::string_view lemma, std::string_view pos) const;
  bool contains(std::string_view lemma) const { return lookup(lemma) != nullptr; }
  bool has_pos(std::string_view lemma, std::string_view pos) const {
    return find(lemma, pos) != nullptr;
  }
  // Joins multiword entries ("a_few", "next_to") found as adjacent words.
  Phrase fuse_multiwords(const Phrase& words) const;
  // Lemmas carrying the given POS, sorted.
  std::vector<std::string> lemmas_with_pos(std::string_view pos) const;
  const std::map<std::string, std::vector<LexEntry>, std::less<>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::vector<LexEntry>, std::less<>> entries_;
  std::size_t max_multiword_ = 1;
};

// Deterministic parser for the controlled fragment:
//   Sentence := NP VP
//   NP       := Det N' | N'
//   N'       := Adj* N (PP | RelCl)?
//   PP       := Prep NP
//   RelCl    := ("that" | "who") VP
//   VP       := ("do")? ("not")? V (NP)? (Adv | PP)*
//             | "be" ("not")? (Adj | PP | VP) (Adv | PP)*
//             | "be" Adv VP
//             | "be" NP
// Alternatives are tried in a fixed preference order (longest attachment
// first) and the first complete parse wins.
Derivation parse_fragment(const Phrase& lemmas, const Lexicon& lexicon = Lexicon::bundled());

}  // namespace natlog

#endif  // NATLOG_SYNTAX_HPP_
