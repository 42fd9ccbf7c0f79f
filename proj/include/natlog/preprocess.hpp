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

// Lemmatization and the pre-parse normalizations: lexical rewrites,
// existential clauses and passives.

#ifndef NATLOG_PREPROCESS_HPP_
#define NATLOG_PREPROCESS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "natlog/core.hpp"
#include "natlog/syntax.hpp"

namespace natlog {

struct TransformConfig {
  bool enable_pass2act = true;
  bool enable_existential = true;
  bool enable_lexical_rewrites = true;

  static TransformConfig none() { return {false, false, false}; }
  // Comma-separated subset of "pass2act,existential,rewrites", or "all"/"none".
  static TransformConfig parse(std::string_view spec);
};

struct RewriteRule {
  Phrase match;
  Phrase replacement;
};

class RewriteTable {
 public:
  // Columns: match phrase, replacement phrase (space separated words).
  static RewriteTable parse_tsv(std::string_view text);
  static RewriteTable load(const std::string& path);
  static const RewriteTable& bundled();

  void add(RewriteRule rule) { rules_.push_back(std::move(rule)); }
  const std::vector<RewriteRule>& rules() const { return rules_; }

 private:
  std::vector<RewriteRule> rules_;
};

// Lowercases, strips punctuation, expands "n't", and maps each word to a
// lemma using an exception table and lexicon-guided suffix stripping. Tags:
// VBN / VBG for participles of known verbs, otherwise the first lexicon POS
// (empty for unknown words). Multiword lexicon entries are fused.
std::vector<Token> lemmatize(std::string_view sentence, const Lexicon& lexicon = Lexicon::bundled());

// NP1 be (not)? (be)? V-pastpart (by NP2)? rest  =>  NP2 (do not)? V NP1 rest,
// with NP2 = "a person" when there is no by-phrase.
std::vector<Token> passive_to_active(const std::vector<Token>& tokens);

// "there be Det N X" => "Det N be X".
std::vector<Token> existential_to_base(const std::vector<Token>& tokens);

std::vector<Token> lexical_rewrites(const std::vector<Token>& tokens,
                                    const RewriteTable& table = RewriteTable::bundled());

// lemmatize, then rewrites, existential and passive as enabled.
std::vector<Token> preprocess(std::string_view sentence, const TransformConfig& config,
                              const Lexicon& lexicon = Lexicon::bundled(),
                              const RewriteTable& table = RewriteTable::bundled());

}  // namespace natlog

#endif  // NATLOG_PREPROCESS_HPP_
