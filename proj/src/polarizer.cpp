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

#include "natlog/polarizer.hpp"

namespace natlog {

PolarizedSentence polarize(const Derivation& derivation) {
  PolarizedSentence out;
  out.source = derivation;
  out.tokens = derivation.tokens();
  const auto& table = derivation.constituents();
  out.constituent_polarity.resize(table.size(), Polarity::Up);
  out.token_polarity.resize(out.tokens.size(), Polarity::Up);
  // Pre-order: parents precede children.
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& c = table[i];
    Polarity p = Polarity::Up;
    if (c.parent >= 0) {
      const Polarity parent = out.constituent_polarity[static_cast<std::size_t>(c.parent)];
      p = c.is_functor_child ? parent : compose(parent, c.slot);
    }
    out.constituent_polarity[i] = p;
    if (c.node->kind == Node::Kind::Leaf) out.token_polarity[c.span.begin] = p;
  }
  return out;
}

Polarity polarity_of_span(const PolarizedSentence& sentence, Span span) {
  const int i = sentence.source.find(span);
  if (i < 0) {
    throw NotAConstituent("span " + std::to_string(span.begin) + "-" + std::to_string(span.end) +
                          " is not a constituent");
  }
  return sentence.constituent_polarity[static_cast<std::size_t>(i)];
}

std::string render_polarized(const PolarizedSentence& sentence) {
  return render_polarized(sentence.lemmas(), sentence.token_polarity);
}

PolarizedSentence polarize_lemmas(const Phrase& lemmas, const Lexicon& lexicon) {
  return polarize(parse_fragment(lemmas, lexicon));
}

}  // namespace natlog
