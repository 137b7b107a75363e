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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "repoaware/errors.hpp"
#include "repoaware/evaluator.hpp"
#include "repoaware/extractor.hpp"
#include "test_support.hpp"

namespace repoaware {
namespace {

using Json = nlohmann::json;
using testing::fixture_dir;
using testing::fixture_repo;
using testing::slurp;

TEST(F1Test, PublishedPairs) {
  EXPECT_NEAR(f1(0.563, 0.623), 0.592, 0.001);
  EXPECT_NEAR(f1(0.658, 0.533), 0.589, 0.001);
  EXPECT_NEAR(f1(0.599, 0.901), 0.719, 0.001);
  EXPECT_NEAR(f1(0.701, 0.654), 0.677, 0.001);
  EXPECT_EQ(f1(0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(f1(1.0, 1.0), 1.0);
}

TEST(MetricsTest, UndefinedRatiosStayEmpty) {
  AspectMetrics none = metrics_from_counts({0, 0, 5, 0});
  EXPECT_FALSE(none.precision.has_value());
  EXPECT_FALSE(none.recall.has_value());
  EXPECT_FALSE(none.f1.has_value());
  EXPECT_DOUBLE_EQ(*none.accuracy, 1.0);
  AspectMetrics missed = metrics_from_counts({0, 0, 1, 2});
  EXPECT_FALSE(missed.precision.has_value());
  EXPECT_DOUBLE_EQ(*missed.recall, 0.0);
  EXPECT_DOUBLE_EQ(*missed.f1, 0.0);
  EXPECT_FALSE(metrics_from_counts({}).accuracy.has_value());
}

TEST(MetricsTest, HandTalliedBatch) {
  // local: p=1,l=1 / p=1,l=0 / p=0,l=1  -> tp 1, fp 1, fn 1
  std::vector<ReuseVector> pred = {{true, false, true}, {true, true, false},
                                   {false, false, true}};
  std::vector<ReuseVector> gold = {{true, false, true}, {false, true, true},
                                   {true, false, true}};
  ReuseScores s = score_reuse(pred, gold);
  EXPECT_EQ(s.local.counts, (ConfusionCounts{1, 1, 0, 1}));
  EXPECT_DOUBLE_EQ(*s.local.precision, 0.5);
  EXPECT_DOUBLE_EQ(*s.local.recall, 0.5);
  EXPECT_DOUBLE_EQ(*s.local.f1, 0.5);
  EXPECT_EQ(s.global.counts, (ConfusionCounts{1, 0, 2, 0}));
  EXPECT_DOUBLE_EQ(*s.global.f1, 1.0);
  EXPECT_EQ(s.library.counts, (ConfusionCounts{2, 0, 0, 1}));
  EXPECT_NEAR(*s.library.recall, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(*s.library.f1, 0.8, 1e-12);
  EXPECT_THROW(score_reuse(pred, {}), ContractError);
}

TEST(LocTest, Examples) {
  EXPECT_EQ(count_loc("x = 1\n# one\n\ny = 2\n# two\nz = 3\n"), 3u);
  EXPECT_EQ(count_loc(""), 0u);
  EXPECT_EQ(count_loc("def f():\n    \"\"\"Doc line one.\n    Doc line two.\"\"\"\n"
                      "    a = 1\n    b = 2\n    c = a + b\n    return c\n"),
            5u);
  // a multi-line call counts every line it spans
  EXPECT_EQ(count_loc("f(1,\n  2)\n"), 2u);
  // strings used as values are code
  EXPECT_EQ(count_loc("x = \"\"\"a\nb\"\"\"\n"), 2u);
  // unparseable input falls back to a plain line filter
  EXPECT_EQ(count_loc("def (:\n# c\n\n  x\n"), 2u);
}

TEST(CoverageTest, Examples) {
  LibraryBase lxml_only({"lxml"});
  EXPECT_EQ(library_coverage("from lxml import etree\n", lxml_only), 1.0);
  EXPECT_EQ(library_coverage("import bs4\nimport lxml.html\n", lxml_only), 0.5);
  EXPECT_EQ(library_coverage("import os\nx = 1\n", lxml_only), 1.0);
  EXPECT_FALSE(library_coverage("def (:", lxml_only).has_value());
  // repository modules are not third party
  EXPECT_EQ(library_coverage("import unstructured.nlp\n", lxml_only, {"unstructured"}),
            1.0);
  EXPECT_EQ(third_party_names("import numpy as np\nfrom . import x\nimport sys\n"),
            (std::set<std::string>{"numpy"}));
}

struct OracleRow {
  std::string name, candidate, reference;
  Json expected;
};

std::vector<OracleRow> oracle_rows() {
  Json pairs = Json::parse(slurp(fixture_dir() / "codebleu/pairs.json"));
  Json expected = Json::parse(slurp(fixture_dir() / "expected/codebleu_reference.json"));
  std::vector<OracleRow> rows;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    rows.push_back({pairs[i]["name"], pairs[i]["candidate"], pairs[i]["reference"],
                    expected[i]});
  }
  return rows;
}

TEST(CodeBleuTest, IdentityIsOne) {
  for (const OracleRow& row : oracle_rows()) {
    CodeBleuScore s = codebleu(row.reference, row.reference);
    EXPECT_NEAR(s.score, 1.0, 1e-9) << row.name;
  }
}

TEST(CodeBleuTest, RenamedPairMatchesReferenceImplementation) {
  OracleRow row = oracle_rows()[0];
  ASSERT_EQ(row.name, "renamed");
  CodeBleuScore s = codebleu(row.candidate, row.reference);
  EXPECT_NEAR(s.score, row.expected["codebleu"].get<double>(), 0.02);
  EXPECT_NEAR(s.syntax, 1.0, 1e-12);
  EXPECT_NEAR(s.dataflow, 1.0, 1e-12);
}

TEST(CodeBleuTest, LexicalComponentsMatchReferenceOnEveryPair) {
  for (const OracleRow& row : oracle_rows()) {
    CodeBleuScore s = codebleu(row.candidate, row.reference);
    EXPECT_NEAR(s.ngram, row.expected["ngram_match_score"].get<double>(), 1e-4)
        << row.name;
    EXPECT_NEAR(s.weighted_ngram,
                row.expected["weighted_ngram_match_score"].get<double>(), 1e-4)
        << row.name;
  }
}

TEST(CodeBleuTest, DisjointPairScoresLow) {
  OracleRow row = oracle_rows()[3];
  CodeBleuScore s = codebleu(row.candidate, row.reference);
  EXPECT_LT(s.ngram, 0.05);
  EXPECT_LT(s.weighted_ngram, 0.05);
  EXPECT_LT(s.score, 0.3);
}

TEST(CodeBleuTest, ParseFailureAndWeights) {
  CodeBleuScore s = codebleu("def (:", "def f():\n    return 1");
  EXPECT_TRUE(s.parse_failed);
  EXPECT_EQ(s.syntax, 0.0);
  EXPECT_EQ(s.dataflow, 0.0);
  CodeBleuScore d = codebleu("x = 1", "print(1)");
  EXPECT_TRUE(d.dataflow_degenerate);
  EXPECT_EQ(d.dataflow, 1.0);
  EXPECT_NO_THROW(validate_weights(CodeBleuWeights::without_dataflow()));
  EXPECT_THROW(validate_weights({0.5, 0.5, 0.5, 0.0}), ContractError);
  EXPECT_THROW(validate_weights({-0.25, 0.5, 0.5, 0.25}), ContractError);
  CodeBleuScore nd = codebleu("def f():\n    return 1", "def f():\n    return 1",
                              CodeBleuWeights::without_dataflow());
  EXPECT_NEAR(nd.score, 1.0, 1e-9);
}

TEST(LabelsTest, ParsesAndRejects) {
  std::vector<ReuseVector> l = parse_labels("# c\n1 0 1\n\n0 1 0\n", "labels");
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], (ReuseVector{true, false, true}));
  EXPECT_EQ(l[1], (ReuseVector{false, true, false}));
  EXPECT_THROW(parse_labels("1 0\n", "labels"), ParseError);
  EXPECT_THROW(parse_labels("1 0 2\n", "labels"), ParseError);
}

// Records for the fixture repository with placeholder summaries.
class ReuseTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ParsedRepository repo = parse_repository(fixture_repo());
    std::vector<FunctionRecord> recs;
    for (const ParsedFile& f : repo.files) {
      for (const RawFunction& r : extract_functions(f.file_path, f.module)) {
        recs.emplace_back(r, "s", Vector{1.0}, Vector{1.0});
      }
      if (f.file_path == "unstructured/documents/html.py") html_ = f.module;
    }
    base_ = FunctionBase(std::move(recs), 1, "test");
    libs_ = build_library_base(repo);
    local_ = mine_local_context("unstructured/documents/html.py", html_, base_);
  }
  FunctionBase base_{1, "test"};
  LibraryBase libs_;
  py::Module html_;
  LocalContext local_;
};

TEST_F(ReuseTest, A3AnswerReusesAllThree) {
  std::string code = slurp(fixture_dir() / "scenario/a3_answer.py");
  ReuseDetection d = detect_reuse(code, local_, base_, libs_);
  EXPECT_FALSE(d.parse_failed);
  EXPECT_EQ(d.reuse, (ReuseVector{true, true, true}));
  EXPECT_EQ(library_coverage(code, libs_, repo_modules_of(base_)), 1.0);
}

TEST_F(ReuseTest, DirectAnswerReusesNothingFromTheRepository) {
  std::string code = slurp(fixture_dir() / "scenario/direct_answer.py");
  ReuseDetection d = detect_reuse(code, local_, base_, libs_);
  EXPECT_FALSE(d.reuse.local);
  EXPECT_FALSE(d.reuse.global);
  EXPECT_FALSE(libs_.contains("bs4"));
  EXPECT_EQ(library_coverage(code, libs_, repo_modules_of(base_)), 0.0);
}

TEST_F(ReuseTest, ImportsOfTheTargetFileAreNotGlobal) {
  ReuseDetection d = detect_reuse(
      "from unstructured.documents.html import _parse_tag\n"
      "def f(t):\n    return _parse_tag(t)\n",
      local_, base_, libs_);
  EXPECT_FALSE(d.reuse.global);
  EXPECT_TRUE(d.reuse.local);
}

TEST_F(ReuseTest, AliasedModuleCallIsGlobal) {
  ReuseDetection d = detect_reuse(
      "import unstructured.cleaners.core as core\n"
      "def f(t):\n    return core.clean_bullets(t)\n",
      local_, base_, libs_);
  EXPECT_TRUE(d.reuse.global);
  EXPECT_FALSE(d.reuse.library);
}

TEST_F(ReuseTest, LocallyRedefinedNameIsNotReuse) {
  ReuseDetection d = detect_reuse(
      "def _construct_text(x):\n    return str(x)\n"
      "def f(t):\n    return _construct_text(t)\n",
      local_, base_, libs_);
  EXPECT_FALSE(d.reuse.local);
}

TEST_F(ReuseTest, UnparseableCode) {
  ReuseDetection d = detect_reuse("def (:", local_, base_, libs_);
  EXPECT_TRUE(d.parse_failed);
  EXPECT_EQ(d.reuse, ReuseVector{});
}

TEST_F(ReuseTest, BatchAggregates) {
  EvalSample a{"a.py", slurp(fixture_dir() / "scenario/a3_answer.py"),
               slurp(fixture_dir() / "scenario/refs/is_bulleted.py"),
               ReuseVector{true, true, true}, local_};
  EvalSample b{"b.py", slurp(fixture_dir() / "scenario/direct_answer.py"),
               slurp(fixture_dir() / "scenario/refs/is_bulleted.py"),
               ReuseVector{true, true, true}, local_};
  EvalReport r = evaluate_batch({a, b}, base_, libs_);
  ASSERT_EQ(r.samples.size(), 2u);
  EXPECT_EQ(r.samples[0].loc, 7u);
  EXPECT_DOUBLE_EQ(r.avg_loc, (r.samples[0].loc + r.samples[1].loc) / 2.0);
  EXPECT_DOUBLE_EQ(*r.library_coverage, 0.5);
  ASSERT_TRUE(r.reuse.has_value());
  EXPECT_EQ(r.reuse->local.counts, (ConfusionCounts{1, 0, 0, 1}));
  EXPECT_EQ(r.predicted_positive[0], 1u);

  std::string paper = render_report(r, true);
  std::string plain = render_report(r, false);
  EXPECT_NE(plain.find("[codebleu]"), std::string::npos);
  EXPECT_EQ(render_report(r, true), paper);
  std::string jsonl = render_summary_jsonl(r, false);
  EXPECT_EQ(std::count(jsonl.begin(), jsonl.end(), '\n'), 3);
}

TEST_F(ReuseTest, BatchContracts) {
  EXPECT_THROW(evaluate_batch({}, base_, libs_), ContractError);
  EvalSample a{"a.py", "x = 1", "x = 1", ReuseVector{}, local_};
  EvalSample b{"b.py", "x = 1", "x = 1", std::nullopt, local_};
  EXPECT_THROW(evaluate_batch({a, b}, base_, libs_), ContractError);
}

TEST_F(ReuseTest, PaperConventionPrintsZeroForUndefined) {
  EvalSample a{"a.py", "x = 1", "x = 1", ReuseVector{}, local_};
  EvalReport r = evaluate_batch({a}, base_, libs_);
  EXPECT_NE(render_report(r, false).find("n/a"), std::string::npos);
  EXPECT_EQ(render_report(r, true).find("n/a"), std::string::npos);
}

}  // namespace
}  // namespace repoaware
