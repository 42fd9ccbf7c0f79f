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

// Training pairs from the sentence base: every generated entailment and
// contradiction is paired with the premise it came from.

#ifndef NATLOG_AUGMENT_HPP_
#define NATLOG_AUGMENT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "natlog/engine.hpp"

namespace natlog {

struct GeneratedPair {
  Phrase premise;
  Phrase hypothesis;
  NliLabel label = NliLabel::Entail;  // Entail or Contradict
  std::string source_id;
  int depth = 1;

  bool operator==(const GeneratedPair&) const = default;
};

struct AugmentConfig {
  SearchConfig search;  // depth defaults to 2
  TransformConfig transforms;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct AugmentResult {
  std::vector<GeneratedPair> pairs;
  std::vector<std::string> diagnostics;  // "<id>: <message>"
};

// Pairs in problem order, then sentence-base order, deduplicated globally
// on (premise, hypothesis, label). A problem whose premise does not parse
// contributes one diagnostic and no pairs.
AugmentResult generate_pairs(const std::vector<ProblemRecord>& problems, const Resources& resources = {},
                             const AugmentConfig& config = {});

// Knowledge base used for one problem's pairs (premise and hypothesis
// vocabulary). Throws Error when the premise does not parse.
KnowledgeBase problem_kb(const ProblemRecord& problem, const Resources& resources = {},
                         const TransformConfig& transforms = {});

bool has_repeated_bigram(const Phrase& sentence);
// Drops pairs where either side repeats a lemma back to back.
std::vector<GeneratedPair> filter_repeated_bigrams(const std::vector<GeneratedPair>& pairs);

// Uniform sample of floor(fraction * n) pairs without replacement, in the
// original order. fraction must be 0.25, 0.5 or 1.0; 1.0 returns the input.
std::vector<GeneratedPair> sample_fraction(const std::vector<GeneratedPair>& pairs, double fraction,
                                           std::uint64_t seed);

// Header pair_ID, sentence_A, sentence_B, entailment_label, source_id, depth.
std::string pairs_to_tsv(const std::vector<GeneratedPair>& pairs);
// Throws IoError.
void export_pairs(const std::vector<GeneratedPair>& pairs, const std::string& path);

}  // namespace natlog

#endif  // NATLOG_AUGMENT_HPP_
