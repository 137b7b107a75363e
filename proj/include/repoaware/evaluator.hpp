// Copyright 2026 The repoaware Authors.
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

#ifndef REPOAWARE_EVALUATOR_HPP_
#define REPOAWARE_EVALUATOR_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "repoaware/extractor.hpp"
#include "repoaware/model.hpp"

namespace repoaware {

struct ReuseVector {
  bool local = false;
  bool global = false;
  bool library = false;

  bool operator==(const ReuseVector&) const = default;
};

struct ReuseDetection {
  ReuseVector reuse;
  bool parse_failed = false;
};

// Repository-local top-level modules implied by the files of a base.
std::set<std::string> repo_modules_of(const FunctionBase& base);

ReuseDetection detect_reuse(const std::string& code, const LocalContext& local,
                            const FunctionBase& base, const LibraryBase& libs);

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  bool operator==(const ConfusionCounts&) const = default;
};

// Ratios with a zero denominator stay empty.
struct AspectMetrics {
  ConfusionCounts counts;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<double> accuracy;
};

struct ReuseScores {
  AspectMetrics local;
  AspectMetrics global;
  AspectMetrics library;
};

// Harmonic mean; 0 when both are 0.
double f1(double precision, double recall);

AspectMetrics metrics_from_counts(const ConfusionCounts& counts);

// Throws ContractError when the lengths differ.
ReuseScores score_reuse(const std::vector<ReuseVector>& predictions,
                        const std::vector<ReuseVector>& labels);

// Third-party top-level names imported by the code (stdlib and the given
// repository modules excluded). Throws py::SyntaxError.
std::set<std::string> third_party_names(
    const std::string& code, const std::set<std::string>& repo_modules = {});

// |used & libs| / |used|, 1.0 when nothing third-party is used. Empty when
// the code does not parse.
std::optional<double> library_coverage(
    const std::string& code, const LibraryBase& libs,
    const std::set<std::string>& repo_modules = {});

// Lines holding code, with blank, comment-only and docstring lines removed.
std::size_t count_loc(const std::string& code);

struct CodeBleuWeights {
  double ngram = 0.25;
  double weighted_ngram = 0.25;
  double syntax = 0.25;
  double dataflow = 0.25;

  // Dataflow weight 0, the rest spread evenly.
  static CodeBleuWeights without_dataflow();
};

// Throws ContractError unless every weight is in [0,1] and they sum to 1.
void validate_weights(const CodeBleuWeights& w);

struct CodeBleuScore {
  double score = 0.0;
  double ngram = 0.0;
  double weighted_ngram = 0.0;
  double syntax = 0.0;
  double dataflow = 0.0;
  bool parse_failed = false;
  // The reference has no def-use pairs; dataflow then counts as 1.
  bool dataflow_degenerate = false;
};

CodeBleuScore codebleu(const std::string& candidate,
                       const std::string& reference,
                       const CodeBleuWeights& weights = {});

struct EvalSample {
  std::string id;
  std::string generated;
  std::string reference;
  std::optional<ReuseVector> label;
  LocalContext local;
};

struct SampleResult {
  std::string id;
  ReuseDetection detection;
  std::optional<double> library_coverage;
  std::size_t loc = 0;
  CodeBleuScore codebleu;
};

struct EvalReport {
  std::vector<SampleResult> samples;
  std::optional<ReuseScores> reuse;  // only when every sample is labeled
  std::array<std::size_t, 3> predicted_positive{};  // local, global, library
  std::optional<double> library_coverage;  // mean over parseable samples
  double avg_loc = 0.0;
  CodeBleuScore codebleu;  // component means
  std::size_t parse_failures = 0;
};

struct EvalOptions {
  CodeBleuWeights weights;
  std::size_t max_in_flight = 4;
};

// Throws ContractError for an empty batch or when only some samples carry
// labels.
EvalReport evaluate_batch(const std::vector<EvalSample>& samples,
                          const FunctionBase& base, const LibraryBase& libs,
                          const EvalOptions& options = {});

// Human-readable report. With paper_convention, undefined ratios print as 0.
std::string render_report(const EvalReport& report, bool paper_convention);

// One JSON object per line: a summary line, then one line per sample.
std::string render_summary_jsonl(const EvalReport& report,
                                 bool paper_convention);

// Label files hold one "l g b" line of 0/1 fields per sample; blank lines
// and '#' comments are skipped. Throws ParseError.
std::vector<ReuseVector> parse_labels(const std::string& text,
                                      const std::string& file_name);

}  // namespace repoaware

#endif  // REPOAWARE_EVALUATOR_HPP_
