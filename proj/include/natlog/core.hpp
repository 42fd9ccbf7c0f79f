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

// Shared vocabulary: polarity algebra, tokens, labels, relations, edits and
// proofs. Everything here is a plain value type.

#ifndef NATLOG_CORE_HPP_
#define NATLOG_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace natlog {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Polarity : std::uint8_t { Up, Down, Flat };

// Monotonicity of a function's argument slot.
enum class Mono : std::uint8_t { UpSlot, DownSlot, FlatSlot };

enum class NliLabel : std::uint8_t { Entail, Contradict, Neutral };

inline constexpr NliLabel kAllLabels[] = {NliLabel::Entail, NliLabel::Contradict,
                                          NliLabel::Neutral};

// Polarity of a child that fills a slot marked `slot` under a parent with
// polarity `parent`. Flat absorbs; DownSlot flips Up and Down.
constexpr Polarity compose(Polarity parent, Mono slot) {
  if (parent == Polarity::Flat || slot == Mono::FlatSlot) return Polarity::Flat;
  if (slot == Mono::UpSlot) return parent;
  return parent == Polarity::Up ? Polarity::Down : Polarity::Up;
}

// "↑", "↓" or "=".
std::string_view arrow(Polarity p);
std::optional<Polarity> parse_arrow(std::string_view s);

// "+", "-" or "=" as used in category strings.
char mono_sign(Mono m);
std::optional<Mono> parse_mono_sign(char c);

// SICK vocabulary: ENTAILMENT / CONTRADICTION / NEUTRAL.
std::string_view label_name(NliLabel label);
std::optional<NliLabel> parse_label(std::string_view s);
// One-letter form used in reports: E / C / N.
char label_letter(NliLabel label);

struct Token {
  std::string lemma;    // lowercase, no whitespace
  std::string surface;  // original spelling, for reporting only
  std::size_t index = 0;
  std::string tag;      // closed-class part-of-speech tag, may be empty

  bool operator==(const Token&) const = default;
};

// A lemma sequence. Sentences and replacement phrases are both phrases.
using Phrase = std::vector<std::string>;

std::string join(std::span<const std::string> words, std::string_view sep = " ");
Phrase split_words(std::string_view text);
Phrase lemmas_of(std::span<const Token> tokens);

// Half-open token range [begin, end).
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool contains(const Span& o) const { return begin <= o.begin && o.end <= end; }
  auto operator<=>(const Span&) const = default;
};

enum class RelationKind : std::uint8_t { Leq, Perp };

struct Relation {
  RelationKind kind = RelationKind::Leq;
  Phrase lhs;
  Phrase rhs;

  auto operator<=>(const Relation&) const = default;
};

enum class Direction : std::uint8_t { Entailing, Contradicting };

struct Edit {
  Span span;
  Phrase before;
  Phrase after;
  std::string rule;
  Direction direction = Direction::Entailing;

  bool operator==(const Edit&) const = default;
};

// Splices `edit.after` over `edit.span`. Throws Error when the span is out of
// range or the sentence does not contain `edit.before` there.
Phrase apply_edit(const Phrase& sentence, const Edit& edit);

struct ProofStep {
  Phrase before;
  Edit edit;
  Phrase after;
};

struct Proof {
  std::vector<ProofStep> steps;
  NliLabel verdict = NliLabel::Neutral;
};

// True iff every step's `after` equals apply_edit(before) and consecutive
// steps chain. Returns the final sentence through `last` when given.
bool replay(const Proof& proof, const Phrase& start, Phrase* last = nullptr);

// Proof trace: one line per step, then the verdict.
std::string render_proof(const Proof& proof, const Phrase& start);

struct ProblemRecord {
  std::string id;
  std::string premise;
  std::string hypothesis;
  std::optional<NliLabel> gold;
};

// "lemma^arrow" units, space separated: "every↑ linguist↓ swim↑".
std::string render_polarized(std::span<const std::string> lemmas,
                             std::span<const Polarity> polarities);
std::vector<std::pair<std::string, Polarity>> parse_polarized(std::string_view text);

}  // namespace natlog

#endif  // NATLOG_CORE_HPP_
