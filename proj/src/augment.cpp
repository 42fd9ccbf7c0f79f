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

#include "natlog/augment.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "natlog/tsv.hpp"

namespace natlog {

namespace {

struct Prepared {
  PolarizedSentence premise;
  KnowledgeBase kb;
};

Prepared prepare(const ProblemRecord& problem, const Resources& resources, const TransformConfig& transforms) {
  const Lexicon& lexicon = *resources.lexicon;
  Prepared out;
  out.premise = polarize_lemmas(lemmas_of(preprocess(problem.premise, transforms, lexicon, *resources.rewrites)),
                                lexicon);
  Phrase hypothesis = lemmas_of(preprocess(problem.hypothesis, transforms, lexicon, *resources.rewrites));
  try {
    out.kb = build_kb(out.premise, hypothesis, *resources.resource, resources.extra, lexicon);
  } catch (const BuildError&) {
    throw;
  } catch (const Error&) {
    // An unparseable hypothesis only narrows the vocabulary.
    out.kb = build_kb(out.premise, out.premise.lemmas(), *resources.resource, resources.extra, lexicon);
  }
  return out;
}

struct ProblemOutput {
  std::vector<GeneratedPair> pairs;
  std::string diagnostic;
};

ProblemOutput run_one(const ProblemRecord& problem, const Resources& resources, const AugmentConfig& config) {
  ProblemOutput out;
  Prepared prep;
  try {
    prep = prepare(problem, resources, config.transforms);
  } catch (const Error& e) {
    out.diagnostic = problem.id + ": " + e.what();
    return out;
  }
  const Phrase premise = prep.premise.lemmas();
  const auto base = explore(prep.premise, prep.kb, config.search, *resources.lexicon);
  for (const auto& item : base.entailments) {
    if (item.depth == 0 || item.sentence == premise) continue;
    out.pairs.push_back({premise, item.sentence, NliLabel::Entail, problem.id, item.depth});
  }
  for (const auto& item : base.contradictions) {
    if (item.sentence == premise) continue;
    out.pairs.push_back({premise, item.sentence, NliLabel::Contradict, problem.id, item.depth});
  }
  if (base.cap_exceeded) out.diagnostic = problem.id + ": sentence base cap exceeded";
  return out;
}

}  // namespace

KnowledgeBase problem_kb(const ProblemRecord& problem, const Resources& resources,
                         const TransformConfig& transforms) {
  return prepare(problem, resources, transforms).kb;
}

AugmentResult generate_pairs(const std::vector<ProblemRecord>& problems, const Resources& resources,
                             const AugmentConfig& config) {
  std::vector<ProblemOutput> outputs(problems.size());
  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(problems.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < problems.size(); i = next++) outputs[i] = run_one(problems[i], resources, config);
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  AugmentResult result;
  std::set<std::tuple<Phrase, Phrase, NliLabel>> seen;
  for (auto& o : outputs) {
    if (!o.diagnostic.empty()) result.diagnostics.push_back(std::move(o.diagnostic));
    for (auto& p : o.pairs) {
      if (seen.insert({p.premise, p.hypothesis, p.label}).second) result.pairs.push_back(std::move(p));
    }
  }
  return result;
}

bool has_repeated_bigram(const Phrase& sentence) {
  return std::adjacent_find(sentence.begin(), sentence.end()) != sentence.end();
}

std::vector<GeneratedPair> filter_repeated_bigrams(const std::vector<GeneratedPair>& pairs) {
  std::vector<GeneratedPair> out;
  std::copy_if(pairs.begin(), pairs.end(), std::back_inserter(out), [](const GeneratedPair& p) {
    return !has_repeated_bigram(p.premise) && !has_repeated_bigram(p.hypothesis);
  });
  return out;
}

std::vector<GeneratedPair> sample_fraction(const std::vector<GeneratedPair>& pairs, double fraction,
                                           std::uint64_t seed) {
  if (fraction != 0.25 && fraction != 0.5 && fraction != 1.0) {
    throw Error("fraction must be 0.25, 0.5 or 1.0");
  }
  if (fraction == 1.0) return pairs;
  const auto keep = static_cast<std::size_t>(fraction * static_cast<double>(pairs.size()));
  std::vector<std::size_t> idx(pairs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(keep);
  std::sort(idx.begin(), idx.end());
  std::vector<GeneratedPair> out;
  out.reserve(keep);
  for (auto i : idx) out.push_back(pairs[i]);
  return out;
}

std::string pairs_to_tsv(const std::vector<GeneratedPair>& pairs) {
  std::ostringstream out;
  out << "pair_ID\tsentence_A\tsentence_B\tentailment_label\tsource_id\tdepth\n";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    out << (i + 1) << '\t' << join(p.premise) << '\t' << join(p.hypothesis) << '\t' << label_name(p.label)
        << '\t' << p.source_id << '\t' << p.depth << '\n';
  }
  return out.str();
}

void export_pairs(const std::vector<GeneratedPair>& pairs, const std::string& path) {
  write_file_atomic(path, pairs_to_tsv(pairs));
}

}  // namespace natlog
