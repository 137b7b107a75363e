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

#include <map>
#include <random>
#include <string>

#include "gtest/gtest.h"
#include "property_checks.hpp"
#include "repoaware/evaluator.hpp"
#include "repoaware/extractor.hpp"
#include "repoaware/persistence.hpp"
#include "repoaware/promptgen.hpp"
#include "repoaware/retrieval.hpp"
#include "test_support.hpp"

namespace repoaware {
namespace {

using namespace repoaware::testing;

constexpr std::size_t kCases = 10000;

#define EXPECT_PROPERTY(result)                                      \
  do {                                                               \
    PropertyResult r_ = (result);                                    \
    EXPECT_TRUE(r_.ok()) << r_.counterexample.value_or("");          \
  } while (0)

TEST(PropertyTest, LocIgnoresAppendedComments) {
  EXPECT_PROPERTY(check_loc_comment_append(1, kCases));
}

TEST(PropertyTest, CoverageIsMonotoneInLibraries) {
  EXPECT_PROPERTY(check_coverage_monotone(2, kCases));
}

TEST(PropertyTest, CoverageIsOneWithoutThirdPartyImports) {
  EXPECT_PROPERTY(check_vacuous_coverage(3, kCases));
}

TEST(PropertyTest, CosineIsScaleInvariantAndSymmetric) {
  EXPECT_PROPERTY(check_cosine_scale(4, kCases));
}

TEST(PropertyTest, F1LiesBetweenPrecisionAndRecall) {
  EXPECT_PROPERTY(check_f1_bounds(5, kCases));
}

TEST(PropertyTest, CodeBleuComponentsStayInUnitInterval) {
  EXPECT_PROPERTY(check_codebleu_bounds(6, 2000));
}

TEST(PropertyTest, MergeIsCommutativeOnPairs) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    std::vector<RetrievalHit> a, b;
    for (std::size_t n = pick(rng, 8); n > 0; --n) {
      a.push_back({"f" + std::to_string(pick(rng, 10)), pick(rng, 5) / 4.0,
                   Channel::kDescription});
    }
    for (std::size_t n = pick(rng, 8); n > 0; --n) {
      b.push_back({"f" + std::to_string(pick(rng, 10)), pick(rng, 5) / 4.0,
                   Channel::kCode});
    }
    std::map<std::string, double> ab, ba;
    for (const RetrievalHit& h : merge_retrievals(a, b)) ab[h.fqn] = h.score;
    for (const RetrievalHit& h : merge_retrievals(b, a)) ba[h.fqn] = h.score;
    ASSERT_EQ(ab, ba);
  }
}

TEST(PropertyTest, RandomBasesSurviveSaveAndLoad) {
  std::mt19937_64 rng(8);
  OfflineHashEmbedder embedder(16);
  TempDir dir;
  for (int i = 0; i < 50; ++i) {
    FunctionBase base = random_base(rng, 1 + pick(rng, 40), embedder);
    save_function_base(base, dir.path());
    ASSERT_EQ(load_function_base(dir.path()), base);
    std::string text = slurp(dir / "functions.jsonl");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'),
              static_cast<long>(base.size()));
  }
}

TEST(PropertyTest, RetrievalHitsAreSortedAndOffTarget) {
  std::mt19937_64 rng(9);
  OfflineHashEmbedder embedder(16);
  for (int i = 0; i < 300; ++i) {
    FunctionBase base = random_base(rng, 1 + pick(rng, 60), embedder);
    auto hits = retrieve_by_summary(random_text(rng), base, 1 + pick(rng, 10),
                                    embedder, "pkg/m1.py");
    for (std::size_t j = 0; j < hits.size(); ++j) {
      EXPECT_NE(base.find(hits[j].fqn)->file_path, "pkg/m1.py");
      if (j) EXPECT_GE(hits[j - 1].score, hits[j].score);
    }
  }
}

TEST(PropertyTest, NoImportsNoCallsMeansNoReuse) {
  std::mt19937_64 rng(10);
  OfflineHashEmbedder embedder(8);
  for (int i = 0; i < 200; ++i) {
    FunctionBase base = random_base(rng, 1 + pick(rng, 50), embedder);
    LocalContext ctx;
    ctx.file_path = "pkg/m0.py";
    for (const FunctionRecord& r : base.records()) {
      if (r.file_path == ctx.file_path) {
        ctx.local_functions.push_back({r.fqn, r.summary, r.signature, r.class_name});
      }
    }
    std::string code = "def g(" + ident(rng) + "):\n    return " +
                       std::to_string(pick(rng, 100)) + "\n";
    ReuseDetection d = detect_reuse(code, ctx, base, random_libs(rng));
    EXPECT_EQ(d.reuse, ReuseVector{});
  }
}

TEST(PropertyTest, FencedCodeRoundTrips) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    std::string code = random_program(rng);
    while (!code.empty() && (code.back() == '\n')) code.pop_back();
    if (code.find_first_not_of(" \n") == std::string::npos) continue;
    EXPECT_EQ(extract_code("Answer:\n```python\n" + code + "\n```\n"), code);
  }
}

TEST(PropertyTest, PromptAssemblyIsPureAndVerbatim) {
  std::mt19937_64 rng(12);
  Requirement req{"do things", "def f(x)", "a.py"};
  for (int i = 0; i < 200; ++i) {
    std::string local = random_text(rng, 20), global = random_text(rng, 20),
                libs = random_text(rng, 5);
    PromptBundle a = assemble_a3_prompt(req, local, global, libs);
    PromptBundle b = assemble_a3_prompt(req, local, global, libs);
    EXPECT_EQ(a.user_text, b.user_text);
    EXPECT_EQ(a.system_text, b.system_text);
    for (const std::string* block : {&local, &global, &libs}) {
      EXPECT_NE(a.user_text.find(*block), std::string::npos);
    }
  }
}

TEST(PropertyTest, FixtureFqnsRoundTrip) {
  ParsedRepository repo = parse_repository(fixture_repo());
  for (const ParsedFile& f : repo.files) {
    for (const RawFunction& r : extract_functions(f.file_path, f.module)) {
      std::string name = r.fqn.substr(r.fqn.rfind('.') + 1);
      EXPECT_EQ(compute_fqn(r.file_path, r.class_name, name), r.fqn);
    }
  }
}

// Counts defs by indentation alone: column 0, or column 4 directly inside a
// column-0 class.
std::size_t count_defs_by_lines(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool in_class = false;
  std::size_t n = 0;
  auto is_def = [](std::string_view s) {
    return s.rfind("def ", 0) == 0 || s.rfind("async def ", 0) == 0;
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line[0] != ' ') {
      in_class = line.rfind("class ", 0) == 0;
      n += is_def(line);
    } else if (in_class && line.size() > 4 && line.rfind("    ", 0) == 0 &&
               line[4] != ' ') {
      n += is_def(std::string_view(line).substr(4));
    }
  }
  return n;
}

TEST(PropertyTest, FixtureFunctionCountMatchesLineCounter) {
  ParsedRepository repo = parse_repository(fixture_repo());
  for (const ParsedFile& f : repo.files) {
    EXPECT_EQ(extract_functions(f.file_path, f.module).size(),
              count_defs_by_lines(f.module.source))
        << f.file_path;
  }
}

TEST(PropertyTest, ThirdPartyNeverLocalOrStdlib) {
  ParsedRepository repo = parse_repository(fixture_repo());
  std::set<std::string> local = repo_local_modules(repo.all_paths);
  for (const std::string& n : build_library_base(repo).names()) {
    EXPECT_FALSE(local.count(n)) << n;
    EXPECT_FALSE(is_stdlib_module(n)) << n;
  }
}

}  // namespace
}  // namespace repoaware
