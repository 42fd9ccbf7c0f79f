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

// Arrow tagging over derivations.

#ifndef NATLOG_POLARIZER_HPP_
#define NATLOG_POLARIZER_HPP_

#include <string>
#include <vector>

#include "natlog/core.hpp"
#include "natlog/syntax.hpp"

namespace natlog {

class NotAConstituent : public Error {
 public:
  using Error::Error;
};

struct PolarizedSentence {
  Derivation source;
  std::vector<Token> tokens;
  std::vector<Polarity> token_polarity;
  // Parallel to source.constituents().
  std::vector<Polarity> constituent_polarity;

  Phrase lemmas() const { return lemmas_of(tokens); }
  std::size_t size() const { return tokens.size(); }
};

PolarizedSentence polarize(const Derivation& derivation);

// Polarity of a constituent span or a single token. Throws NotAConstituent
// when the span crosses constituent boundaries.
Polarity polarity_of_span(const PolarizedSentence& sentence, Span span);

std::string render_polarized(const PolarizedSentence& sentence);

// Lemmatize-free convenience: parse lemmas with the fragment parser and polarize.
PolarizedSentence polarize_lemmas(const Phrase& lemmas, const Lexicon& lexicon = Lexicon::bundled());

}  // namespace natlog

#endif  // NATLOG_POLARIZER_HPP_
