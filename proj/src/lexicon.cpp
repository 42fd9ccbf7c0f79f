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

#include <algorithm>

#include "natlog/bundled.hpp"
#include "natlog/syntax.hpp"
#include "natlog/tsv.hpp"

namespace natlog {

namespace {

const char* const kKnownPos[] = {"DT", "QNP", "NN",    "JJ",  "VB", "VBT", "IN",
                                 "INNEG", "RB", "NOT", "DO", "BE", "REL"};

}  // namespace

Lexicon Lexicon::parse_tsv(std::string_view text) {
  Lexicon lex;
  std::size_t line_no = 0;
  for (auto line : split_lines(text)) {
    ++line_no;
    if (!is_data_line(line)) continue;
    auto cols = split_tabs(line);
    if (cols.size() != 3) {
      throw SchemaError("lexicon line " + std::to_string(line_no) + ": expected 3 columns");
    }
    if (std::find(std::begin(kKnownPos), std::end(kKnownPos), cols[2]) == std::end(kKnownPos)) {
      throw SchemaError("lexicon line " + std::to_string(line_no) + ": unknown POS '" +
                        cols[2] + "'");
    }
    CategoryPtr c;
    try {
      c = parse_category(cols[1]);
    } catch (const SchemaError& e) {
      throw SchemaError("lexicon line " + std::to_string(line_no) + ": " + e.what());
    }
    lex.add(cols[0], {std::move(c), cols[2]});
  }
  return lex;
}

Lexicon Lexicon::load(const std::string& path) { return parse_tsv(read_file(path)); }

const Lexicon& Lexicon::bundled() {
  static const Lexicon lex = parse_tsv(bundled_lexicon());
  return lex;
}

void Lexicon::add(const std::string& lemma, LexEntry entry) {
  auto& v = entries_[lemma];
  if (std::find(v.begin(), v.end(), entry) == v.end()) v.push_back(std::move(entry));
  max_multiword_ =
      std::max(max_multiword_, 1 + static_cast<std::size_t>(std::count(lemma.begin(), lemma.end(), '_')));
}

const std::vector<LexEntry>* Lexicon::lookup(std::string_view lemma) const {
  auto it = entries_.find(lemma);
  return it == entries_.end() ? nullptr : &it->second;
}

const LexEntry* Lexicon::find(std::string_view lemma, std::string_view pos) const {
  const auto* v = lookup(lemma);
  if (!v) return nullptr;
  for (const auto& e : *v) {
    if (e.pos == pos) return &e;
  }
  return nullptr;
}

Phrase Lexicon::fuse_multiwords(const Phrase& words) const {
  Phrase out;
  std::size_t i = 0;
  while (i < words.size()) {
    std::size_t taken = 1;
    for (std::size_t len = std::min(max_multiword_, words.size() - i); len >= 2; --len) {
      std::string joined = words[i];
      for (std::size_t k = 1; k < len; ++k) joined += "_" + words[i + k];
      if (contains(joined)) {
        out.push_back(std::move(joined));
        taken = len;
        break;
      }
    }
    if (taken == 1) out.push_back(words[i]);
    i += taken;
  }
  return out;
}

std::vector<std::string> Lexicon::lemmas_with_pos(std::string_view pos) const {
  std::vector<std::string> out;
  for (const auto& [lemma, v] : entries_) {
    for (const auto& e : v) {
      if (e.pos == pos) {
        out.push_back(lemma);
        break;
      }
    }
  }
  return out;
}

}  // namespace natlog
