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

#include <json.hpp>

#include "natlog/syntax.hpp"

namespace natlog {

NodePtr make_leaf(std::string lemma, CategoryPtr category, std::string surface, std::string tag) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Leaf;
  n->category = std::move(category);
  n->token.surface = surface.empty() ? lemma : std::move(surface);
  n->token.lemma = std::move(lemma);
  n->token.tag = std::move(tag);
  return n;
}

NodePtr make_apply(NodePtr fn, NodePtr arg) {
  const Category& f = *fn->category;
  if (f.is_atomic()) {
    throw CombinationError("functor has atomic category " + f.str());
  }
  if (!f.argument()->same_shape(*arg->category)) {
    throw CombinationError("functor " + f.str() + " cannot take argument " +
                           arg->category->str());
  }
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Apply;
  n->category = f.result();
  n->fn = std::move(fn);
  n->arg = std::move(arg);
  return n;
}

NodePtr make_lift(NodePtr arg, CategoryPtr result) {
  if (!arg->category->same_shape(*cat::N())) {
    throw CombinationError("lift needs N, got " + arg->category->str());
  }
  if (!is_quantifier_shape(*result)) {
    throw CombinationError("lift result must be a quantifier category, got " + result->str());
  }
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Lift;
  n->category = std::move(result);
  n->arg = std::move(arg);
  return n;
}

namespace {

// Rebuilds the tree with token indices in yield order and fills the tables.
class Indexer {
 public:
  Indexer(std::vector<Token>& tokens, std::vector<Derivation::Constituent>& table)
      : tokens_(tokens), table_(table) {}

  NodePtr visit(const NodePtr& n, int parent, Mono slot, bool functor_child) {
    const int self = static_cast<int>(table_.size());
    table_.push_back({nullptr, {}, parent, slot, functor_child});
    const std::size_t begin = tokens_.size();
    auto copy = std::make_shared<Node>(*n);
    switch (n->kind) {
      case Node::Kind::Leaf:
        copy->token.index = tokens_.size();
        tokens_.push_back(copy->token);
        break;
      case Node::Kind::Lift:
        copy->arg = visit(n->arg, self, Mono::UpSlot, false);
        break;
      case Node::Kind::Apply: {
        const Mono m = n->fn->category->slot_mono();
        if (n->fn->category->slash() == Slash::Forward) {
          copy->fn = visit(n->fn, self, Mono::UpSlot, true);
          copy->arg = visit(n->arg, self, m, false);
        } else {
          copy->arg = visit(n->arg, self, m, false);
          copy->fn = visit(n->fn, self, Mono::UpSlot, true);
        }
        break;
      }
    }
    table_[static_cast<std::size_t>(self)].node = copy.get();
    table_[static_cast<std::size_t>(self)].span = {begin, tokens_.size()};
    keep_.push_back(copy);
    return copy;
  }

 private:
  std::vector<Token>& tokens_;
  std::vector<Derivation::Constituent>& table_;
  std::vector<NodePtr> keep_;
};

}  // namespace

Derivation::Derivation(NodePtr root) {
  Indexer indexer(tokens_, constituents_);
  root_ = indexer.visit(root, -1, Mono::UpSlot, false);
}

int Derivation::find(Span span) const {
  for (std::size_t i = 0; i < constituents_.size(); ++i) {
    if (constituents_[i].span == span) return static_cast<int>(i);
  }
  return -1;
}

bool structurally_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind || !(*a.category == *b.category)) return false;
  switch (a.kind) {
    case Node::Kind::Leaf:
      return a.token.lemma == b.token.lemma;
    case Node::Kind::Lift:
      return structurally_equal(*a.arg, *b.arg);
    case Node::Kind::Apply:
      return structurally_equal(*a.fn, *b.fn) && structurally_equal(*a.arg, *b.arg);
  }
  return false;
}

namespace {

void collect_yield(const Node& n, Phrase& out) {
  switch (n.kind) {
    case Node::Kind::Leaf:
      out.push_back(n.token.lemma);
      return;
    case Node::Kind::Lift:
      collect_yield(*n.arg, out);
      return;
    case Node::Kind::Apply:
      if (n.fn->category->slash() == Slash::Forward) {
        collect_yield(*n.fn, out);
        collect_yield(*n.arg, out);
      } else {
        collect_yield(*n.arg, out);
        collect_yield(*n.fn, out);
      }
      return;
  }
}

}  // namespace

Phrase yield_of(const Node& n) {
  Phrase out;
  collect_yield(n, out);
  return out;
}

Phrase yield_of(const Derivation& d) { return d.empty() ? Phrase{} : lemmas_of(d.tokens()); }

namespace {

using nlohmann::json;

const std::string& string_field(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw SchemaError(path + ": missing string field '" + key + "'");
  }
  return it->get_ref<const std::string&>();
}

CategoryPtr category_field(const json& obj, const std::string& path) {
  const auto& text = string_field(obj, "cat", path);
  try {
    return parse_category(text);
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

NodePtr read_node(const json& j, const std::string& path) {
  if (!j.is_object() || j.size() != 1) {
    throw SchemaError(path + ": node must be an object with one key (leaf, apply or lift)");
  }
  const std::string key = j.begin().key();
  const json& body = j.begin().value();
  const std::string here = path + "." + key;
  if (!body.is_object()) throw SchemaError(here + ": expected object");
  if (key == "leaf") {
    const auto& lemma = string_field(body, "lemma", here);
    if (lemma.empty() || lemma.find(' ') != std::string::npos) {
      throw SchemaError(here + ": lemma must be nonempty and contain no spaces");
    }
    std::string surface = body.contains("surface") && body["surface"].is_string()
                              ? body["surface"].get<std::string>()
                              : lemma;
    return make_leaf(lemma, category_field(body, here), surface);
  }
  if (key == "apply") {
    if (!body.contains("fn") || !body.contains("arg")) {
      throw SchemaError(here + ": apply needs 'fn' and 'arg'");
    }
    auto fn = read_node(body["fn"], here + ".fn");
    auto arg = read_node(body["arg"], here + ".arg");
    auto declared = category_field(body, here);
    NodePtr n;
    try {
      n = make_apply(fn, arg);
    } catch (const CombinationError& e) {
      throw CombinationError(here + ": " + e.what());
    }
    if (!(*n->category == *declared)) {
      throw CombinationError(here + ": declared category " + declared->str() +
                             " differs from functor result " + n->category->str());
    }
    return n;
  }
  if (key == "lift") {
    if (!body.contains("arg")) throw SchemaError(here + ": lift needs 'arg'");
    auto arg = read_node(body["arg"], here + ".arg");
    try {
      return make_lift(arg, category_field(body, here));
    } catch (const CombinationError& e) {
      throw CombinationError(here + ": " + e.what());
    }
  }
  throw SchemaError(path + ": unknown node kind '" + key + "'");
}

json write_node(const Derivation& d, std::size_t& cursor, std::span<const Polarity> pol) {
  const auto& c = d.constituents()[cursor];
  const std::size_t self = cursor++;
  const Node& n = *c.node;
  json body;
  body["cat"] = n.category->str();
  if (!pol.empty()) body["pol"] = std::string(arrow(pol[self]));
  json out;
  switch (n.kind) {
    case Node::Kind::Leaf:
      body["lemma"] = n.token.lemma;
      body["surface"] = n.token.surface;
      out["leaf"] = std::move(body);
      break;
    case Node::Kind::Lift:
      body["arg"] = write_node(d, cursor, pol);
      out["lift"] = std::move(body);
      break;
    case Node::Kind::Apply: {
      // Constituents are stored in yield order; map back to fn/arg.
      json first = write_node(d, cursor, pol);
      json second = write_node(d, cursor, pol);
      if (n.fn->category->slash() == Slash::Forward) {
        body["fn"] = std::move(first);
        body["arg"] = std::move(second);
      } else {
        body["arg"] = std::move(first);
        body["fn"] = std::move(second);
      }
      out["apply"] = std::move(body);
      break;
    }
  }
  return out;
}

}  // namespace

Derivation load_derivation(std::string_view document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("$: malformed document: ") + e.what());
  }
  return Derivation(read_node(j, "$"));
}

std::string to_json(const Derivation& d, std::span<const Polarity> polarities) {
  if (d.empty()) return "null";
  if (!polarities.empty() && polarities.size() != d.constituents().size()) {
    throw Error("to_json: one polarity per constituent expected");
  }
  std::size_t cursor = 0;
  return write_node(d, cursor, polarities).dump();
}

}  // namespace natlog
