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

#include "natlog/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "natlog/bundled.hpp"
#include "natlog/tsv.hpp"

namespace natlog {

TransformConfig TransformConfig::parse(std::string_view spec) {
  if (spec == "all") return {};
  TransformConfig c = none();
  if (spec == "none" || spec.empty()) return c;
  std::string item;
  auto flush = [&] {
    if (item == "pass2act") {
      c.enable_pass2act = true;
    } else if (item == "existential") {
      c.enable_existential = true;
    } else if (item == "rewrites") {
      c.enable_lexical_rewrites = true;
    } else {
      throw Error("unknown transformation '" + item + "'");
    }
    item.clear();
  };
  for (char ch : spec) {
    if (ch == ',') {
      flush();
    } else {
      item += ch;
    }
  }
  flush();
  return c;
}

RewriteTable RewriteTable::parse_tsv(std::string_view text) {
  RewriteTable t;
  std::size_t line_no = 0;
  for (auto line : split_lines(text)) {
    ++line_no;
    if (!is_data_line(line)) continue;
    auto cols = split_tabs(line);
    if (cols.size() != 2 || split_words(cols[0]).empty()) {
      throw SchemaError("rewrite line " + std::to_string(line_no) + ": expected match and replacement");
    }
    t.add({split_words(cols[0]), split_words(cols[1])});
  }
  return t;
}

RewriteTable RewriteTable::load(const std::string& path) { return parse_tsv(read_file(path)); }

const RewriteTable& RewriteTable::bundled() {
  static const RewriteTable t = parse_tsv(bundled_rewrites());
  return t;
}

namespace {

const std::map<std::string, std::string, std::less<>>& exceptions() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"is", "be"},        {"are", "be"},       {"was", "be"},        {"were", "be"},
      {"am", "be"},        {"been", "be"},      {"being", "be"},      {"an", "a"},
      {"does", "do"},      {"did", "do"},       {"doing", "do"},      {"done", "do"},
      {"has", "have"},     {"had", "have"},     {"having", "have"},   {"men", "man"},
      {"women", "woman"},  {"children", "child"}, {"feet", "foot"},   {"mice", "mouse"},
      {"geese", "goose"},  {"teeth", "tooth"},  {"ran", "run"},       {"sat", "sit"},
      {"swam", "swim"},    {"ate", "eat"},      {"eaten", "eat"},     {"lying", "lie"},
      {"lay", "lie"},      {"taken", "take"},   {"took", "take"},     {"held", "hold"},
      {"rode", "ride"},    {"ridden", "ride"},  {"drove", "drive"},   {"driven", "drive"},
      {"wrote", "write"},  {"written", "write"}, {"saw", "see"},      {"seen", "see"},
      {"threw", "throw"},  {"thrown", "throw"}, {"caught", "catch"},  {"flew", "fly"},
      {"flown", "fly"},    {"sang", "sing"},    {"sung", "sing"},     {"fell", "fall"},
      {"fallen", "fall"},  {"stood", "stand"},  {"wore", "wear"},     {"worn", "wear"},
      {"drew", "draw"},    {"drawn", "draw"},   {"drank", "drink"},   {"drunk", "drink"},
      {"bit", "bite"},     {"bitten", "bite"},  {"went", "go"},       {"gone", "go"},
      {"spoke", "speak"},  {"spoken", "speak"}, {"woke", "wake"},     {"woken", "wake"},
      {"fed", "feed"},     {"hit", "hit"},      {"cut", "cut"},       {"put", "put"},
      {"left", "leave"},   {"sth", "something"},
  };
  return table;
}

// Past participles that do not end in -ed or -en.
bool irregular_participle(std::string_view w) {
  static const char* const kForms[] = {"held", "caught", "cut", "hit", "put", "fed", "left", "sung",
                                       "drunk", "bit", "lain", "sat", "stood", "done"};
  return std::find(std::begin(kForms), std::end(kForms), w) != std::end(kForms);
}

bool is_verb(const Lexicon& lex, std::string_view lemma) {
  return lex.has_pos(lemma, "VB") || lex.has_pos(lemma, "VBT");
}

std::string lowercase_word(std::string_view w) {
  std::string out;
  for (char c : w) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || c == '_' || c == '-' || c == '\'') out += static_cast<char>(std::tolower(u));
  }
  while (!out.empty() && (out.back() == '\'' || out.back() == '-')) out.pop_back();
  while (!out.empty() && (out.front() == '\'' || out.front() == '-')) out.erase(out.begin());
  return out;
}

// Candidate stems for a suffix, most specific first.
std::vector<std::string> stems(const std::string& w) {
  std::vector<std::string> out;
  auto ends = [&](std::string_view s) { return w.size() > s.size() + 1 && w.ends_with(s); };
  auto cut = [&](std::size_t n) { return w.substr(0, w.size() - n); };
  auto undouble = [](const std::string& s) {
    return s.size() > 2 && s[s.size() - 1] == s[s.size() - 2] ? s.substr(0, s.size() - 1) : s;
  };
  if (ends("ies")) out.push_back(cut(3) + "y");
  if (ends("ves")) {
    out.push_back(cut(3) + "f");
    out.push_back(cut(3) + "fe");
  }
  if (ends("es")) out.push_back(cut(2));
  if (ends("s") && !ends("ss")) out.push_back(cut(1));
  if (ends("ing")) {
    out.push_back(cut(3));
    out.push_back(cut(3) + "e");
    out.push_back(undouble(cut(3)));
  }
  if (ends("ied")) out.push_back(cut(3) + "y");
  if (ends("ed")) {
    out.push_back(cut(2));
    out.push_back(cut(1));
    out.push_back(undouble(cut(2)));
  }
  return out;
}

std::string first_pos(const Lexicon& lex, std::string_view lemma) {
  const auto* v = lex.lookup(lemma);
  return v && !v->empty() ? v->front().pos : std::string();
}

void reindex(std::vector<Token>& tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) tokens[i].index = i;
}

Token make_token(const std::string& lemma, const Lexicon& lex = Lexicon::bundled()) {
  return {lemma, lemma, 0, first_pos(lex, lemma)};
}

}  // namespace

std::vector<Token> lemmatize(std::string_view sentence, const Lexicon& lexicon) {
  // Split, lowercase, expand contractions.
  std::vector<std::string> words;
  std::vector<std::string> surfaces;
  for (const auto& raw : split_words(sentence)) {
    std::string w = lowercase_word(raw);
    if (w.empty()) continue;
    if (w.ends_with("n't")) {
      std::string head = w.substr(0, w.size() - 3);
      if (head == "ca") head = "can";
      if (head == "wo") head = "will";
      words.push_back(head);
      surfaces.push_back(raw);
      words.push_back("not");
      surfaces.push_back("not");
      continue;
    }
    if (w.ends_with("'s")) w.resize(w.size() - 2);
    words.push_back(w);
    surfaces.push_back(raw);
  }

  std::vector<Token> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::string& w = words[i];
    Token t;
    t.surface = surfaces[i];
    const auto ex = exceptions().find(w);
    if (lexicon.contains(w)) {
      t.lemma = w;
    } else if (ex != exceptions().end()) {
      t.lemma = ex->second;
    } else {
      t.lemma = w;
      for (const auto& s : stems(w)) {
        if (lexicon.contains(s)) {
          t.lemma = s;
          break;
        }
      }
    }
    if (ex != exceptions().end() && lexicon.contains(w) && is_verb(lexicon, ex->second) &&
        !is_verb(lexicon, w)) {
      t.lemma = ex->second;
    }
    const bool verb = is_verb(lexicon, t.lemma);
    const bool adjective = lexicon.has_pos(w, "JJ");
    if (verb && !adjective && w != t.lemma &&
        (w.ends_with("ed") || w.ends_with("en") || irregular_participle(w))) {
      t.tag = "VBN";
    } else if (verb && w != t.lemma && w.ends_with("ing")) {
      t.tag = "VBG";
    } else {
      t.tag = first_pos(lexicon, t.lemma);
    }
    out.push_back(std::move(t));
  }

  // Fuse multiword entries ("a few" -> "a_few").
  Phrase lemmas = lemmas_of(out);
  Phrase fused = lexicon.fuse_multiwords(lemmas);
  if (fused.size() != lemmas.size()) {
    std::vector<Token> merged;
    std::size_t j = 0;
    for (const auto& f : fused) {
      const std::size_t parts = 1 + static_cast<std::size_t>(std::count(f.begin(), f.end(), '_'));
      const std::size_t take = (parts > 1 && f != lemmas[j]) ? parts : 1;
      Token t = out[j];
      for (std::size_t k = 1; k < take; ++k) t.surface += " " + out[j + k].surface;
      if (take > 1) {
        t.lemma = f;
        t.tag = first_pos(lexicon, f);
      }
      merged.push_back(std::move(t));
      j += take;
    }
    out = std::move(merged);
  }
  reindex(out);
  return out;
}

std::vector<Token> lexical_rewrites(const std::vector<Token>& tokens, const RewriteTable& table) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const RewriteRule* hit = nullptr;
    for (const auto& r : table.rules()) {
      if (i + r.match.size() > tokens.size()) continue;
      bool match = true;
      for (std::size_t k = 0; k < r.match.size() && match; ++k) {
        match = tokens[i + k].lemma == r.match[k];
      }
      if (match && (!hit || r.match.size() > hit->match.size())) hit = &r;
    }
    if (!hit) {
      out.push_back(tokens[i++]);
      continue;
    }
    for (const auto& w : hit->replacement) {
      Token t = make_token(w);
      t.surface = tokens[i].surface;
      out.push_back(std::move(t));
    }
    i += hit->match.size();
  }
  reindex(out);
  return out;
}

std::vector<Token> existential_to_base(const std::vector<Token>& tokens) {
  if (tokens.size() < 4 || tokens[0].lemma != "there" || tokens[1].lemma != "be") return tokens;
  if (tokens[2].tag != "DT") return tokens;
  const std::size_t det = 2;
  std::size_t head = tokens.size();
  for (std::size_t i = det + 1; i < tokens.size(); ++i) {
    if (tokens[i].tag == "NN") {
      head = i;
      break;
    }
  }
  if (head == tokens.size()) return tokens;
  // Where the predicate starts and how many tokens to drop there.
  std::size_t split = tokens.size(), drop = 0;
  for (std::size_t i = head + 1; i < tokens.size(); ++i) {
    if (tokens[i].tag == "REL" && i + 1 < tokens.size() && tokens[i + 1].lemma == "be") {
      split = i;
      drop = 2;
      break;
    }
    if (tokens[i].tag == "VBG") {
      split = i;
      break;
    }
  }
  if (split == tokens.size()) {
    for (std::size_t i = head + 1; i < tokens.size(); ++i) {
      if (tokens[i].tag == "IN" || tokens[i].tag == "INNEG") {
        split = i;
        break;
      }
    }
  }
  if (split == tokens.size()) return tokens;
  std::vector<Token> out(tokens.begin() + det, tokens.begin() + static_cast<std::ptrdiff_t>(split));
  out.push_back(tokens[1]);
  out.insert(out.end(), tokens.begin() + static_cast<std::ptrdiff_t>(split + drop), tokens.end());
  reindex(out);
  return out;
}

std::vector<Token> passive_to_active(const std::vector<Token>& tokens) {
  for (std::size_t b = 1; b < tokens.size(); ++b) {
    if (tokens[b].lemma != "be") continue;
    std::size_t v = b + 1;
    bool negated = false;
    if (v < tokens.size() && tokens[v].lemma == "not") {
      negated = true;
      ++v;
    }
    if (v < tokens.size() && tokens[v].lemma == "be") ++v;
    if (v >= tokens.size() || tokens[v].tag != "VBN") continue;
    const bool subject_ok = std::none_of(tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(b),
                                         [](const Token& t) { return t.lemma == "be"; });
    if (!subject_ok) return tokens;
    std::vector<Token> np1(tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(b));
    std::vector<Token> agent, rest;
    if (v + 1 < tokens.size() && tokens[v + 1].lemma == "by") {
      agent.assign(tokens.begin() + static_cast<std::ptrdiff_t>(v + 2), tokens.end());
    } else {
      agent = {make_token("a"), make_token("person")};
      rest.assign(tokens.begin() + static_cast<std::ptrdiff_t>(v + 1), tokens.end());
    }
    if (agent.empty()) return tokens;
    std::vector<Token> out = agent;
    if (negated) {
      out.push_back(make_token("do"));
      out.push_back(make_token("not"));
    }
    Token verb = tokens[v];
    verb.tag = "VBT";
    out.push_back(verb);
    out.insert(out.end(), np1.begin(), np1.end());
    out.insert(out.end(), rest.begin(), rest.end());
    reindex(out);
    return out;
  }
  return tokens;
}

std::vector<Token> preprocess(std::string_view sentence, const TransformConfig& config,
                              const Lexicon& lexicon, const RewriteTable& table) {
  auto tokens = lemmatize(sentence, lexicon);
  if (config.enable_lexical_rewrites) tokens = lexical_rewrites(tokens, table);
  if (config.enable_existential) tokens = existential_to_base(tokens);
  if (config.enable_pass2act) tokens = passive_to_active(tokens);
  return tokens;
}

}  // namespace natlog
