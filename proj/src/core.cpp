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

#include "natlog/core.hpp"

#include <algorithm>
#include <sstream>

namespace natlog {

namespace {

constexpr std::string_view kUp = "\xE2\x86\x91";    // U+2191
constexpr std::string_view kDown = "\xE2\x86\x93";  // U+2193
constexpr std::string_view kFlat = "=";

}  // namespace

std::string_view arrow(Polarity p) {
  switch (p) {
    case Polarity::Up: return kUp;
    case Polarity::Down: return kDown;
    case Polarity::Flat: return kFlat;
  }
  return kFlat;
}

std::optional<Polarity> parse_arrow(std::string_view s) {
  if (s == kUp) return Polarity::Up;
  if (s == kDown) return Polarity::Down;
  if (s == kFlat) return Polarity::Flat;
  return std::nullopt;
}

char mono_sign(Mono m) {
  switch (m) {
    case Mono::UpSlot: return '+';
    case Mono::DownSlot: return '-';
    case Mono::FlatSlot: return '=';
  }
  return '=';
}

std::optional<Mono> parse_mono_sign(char c) {
  switch (c) {
    case '+': return Mono::UpSlot;
    case '-': return Mono::DownSlot;
    case '=': return Mono::FlatSlot;
    default: return std::nullopt;
  }
}

std::string_view label_name(NliLabel label) {
  switch (label) {
    case NliLabel::Entail: return "ENTAILMENT";
    case NliLabel::Contradict: return "CONTRADICTION";
    case NliLabel::Neutral: return "NEUTRAL";
  }
  return "NEUTRAL";
}

std::optional<NliLabel> parse_label(std::string_view s) {
  if (s == "ENTAILMENT" || s == "E") return NliLabel::Entail;
  if (s == "CONTRADICTION" || s == "C") return NliLabel::Contradict;
  if (s == "NEUTRAL" || s == "N") return NliLabel::Neutral;
  return std::nullopt;
}

char label_letter(NliLabel label) { return label_name(label).front(); }

std::string join(std::span<const std::string> words, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += sep;
    out += words[i];
  }
  return out;
}

Phrase split_words(std::string_view text) {
  Phrase out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' ||
                               text[i] == '\r')) {
      ++i;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\n' &&
           text[j] != '\r') {
      ++j;
    }
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

Phrase lemmas_of(std::span<const Token> tokens) {
  Phrase out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.lemma);
  return out;
}

Phrase apply_edit(const Phrase& sentence, const Edit& edit) {
  if (edit.span.begin > edit.span.end || edit.span.end > sentence.size()) {
    throw Error("edit span out of range");
  }
  if (!std::equal(edit.before.begin(), edit.before.end(),
                  sentence.begin() + static_cast<std::ptrdiff_t>(edit.span.begin),
                  sentence.begin() + static_cast<std::ptrdiff_t>(edit.span.end))) {
    throw Error("edit does not match sentence at span: '" + join(edit.before) + "'");
  }
  Phrase out(sentence.begin(), sentence.begin() + static_cast<std::ptrdiff_t>(edit.span.begin));
  out.insert(out.end(), edit.after.begin(), edit.after.end());
  out.insert(out.end(), sentence.begin() + static_cast<std::ptrdiff_t>(edit.span.end),
             sentence.end());
  return out;
}

bool replay(const Proof& proof, const Phrase& start, Phrase* last) {
  Phrase current = start;
  for (const auto& step : proof.steps) {
    if (step.before != current) return false;
    try {
      current = apply_edit(current, step.edit);
    } catch (const Error&) {
      return false;
    }
    if (current != step.after) return false;
  }
  if (last) *last = std::move(current);
  return true;
}

std::string render_proof(const Proof& proof, const Phrase& start) {
  std::ostringstream out;
  if (proof.steps.empty()) out << join(start) << "\n";
  for (const auto& step : proof.steps) {
    out << join(step.before) << " --[" << step.edit.rule << ": " << step.edit.span.begin << "-"
        << step.edit.span.end << " '" << join(step.edit.before) << "'\xE2\x86\x92'"
        << join(step.edit.after) << "']--> " << join(step.after) << "\n";
  }
  out << label_name(proof.verdict) << "\n";
  return out.str();
}

std::string render_polarized(std::span<const std::string> lemmas,
                             std::span<const Polarity> polarities) {
  std::string out;
  const std::size_t n = std::min(lemmas.size(), polarities.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += lemmas[i];
    out += arrow(polarities[i]);
  }
  return out;
}

std::vector<std::pair<std::string, Polarity>> parse_polarized(std::string_view text) {
  std::vector<std::pair<std::string, Polarity>> out;
  for (const auto& unit : split_words(text)) {
    std::optional<Polarity> p;
    std::string lemma;
    if (unit.size() > kUp.size() && unit.ends_with(kUp)) {
      p = Polarity::Up;
      lemma = unit.substr(0, unit.size() - kUp.size());
    } else if (unit.size() > kDown.size() && unit.ends_with(kDown)) {
      p = Polarity::Down;
      lemma = unit.substr(0, unit.size() - kDown.size());
    } else if (unit.size() > 1 && unit.back() == '=') {
      p = Polarity::Flat;
      lemma = unit.substr(0, unit.size() - 1);
    }
    if (!p) throw Error("polarized unit without arrow: '" + unit + "'");
    out.emplace_back(std::move(lemma), *p);
  }
  return out;
}

}  // namespace natlog
