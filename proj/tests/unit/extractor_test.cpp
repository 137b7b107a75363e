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

#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "repoaware/errors.hpp"
#include "repoaware/extractor.hpp"
#include "repoaware/python/parser.hpp"
#include "test_support.hpp"

namespace repoaware {
namespace {

using Json = nlohmann::ordered_json;
using testing::fixture_dir;
using testing::fixture_repo;
using testing::slurp;
using testing::spit;
using testing::TempDir;

std::optional<std::string> opt(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::string>();
}

std::vector<RawFunction> expected_manifest() {
  std::vector<RawFunction> out;
  std::istringstream in(slurp(fixture_dir() / "expected/expected_manifest.jsonl"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j = Json::parse(line);
    RawFunction r;
    r.fqn = j["fqn"];
    r.file_path = j["file_path"];
    r.class_name = opt(j["class_name"]);
    r.signature = j["signature"];
    r.comment = opt(j["comment"]);
    r.source = j["source"];
    r.is_empty = j["is_empty"];
    out.push_back(r);
  }
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<RawFunction> extract_all(const ParsedRepository& repo) {
  std::vector<RawFunction> out;
  for (const ParsedFile& f : repo.files) {
    for (RawFunction& r : extract_functions(f.file_path, f.module)) {
      out.push_back(std::move(r));
    }
  }
  return out;
}

// Records with placeholder summaries and vectors.
FunctionBase base_from(const std::vector<RawFunction>& raws) {
  std::vector<FunctionRecord> recs;
  for (const RawFunction& r : raws) {
    recs.emplace_back(r, "summary of " + r.fqn, Vector{1.0}, Vector{1.0});
  }
  return FunctionBase(std::move(recs), 1, "test");
}

TEST(ExtractorTest, MatchesExpectedManifest) {
  ParsedRepository repo = parse_repository(fixture_repo());
  std::vector<RawFunction> got = extract_all(repo);
  std::vector<RawFunction> want = expected_manifest();
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    SCOPED_TRACE(want[i].fqn);
    EXPECT_EQ(got[i].fqn, want[i].fqn);
    EXPECT_EQ(got[i].file_path, want[i].file_path);
    EXPECT_EQ(got[i].class_name, want[i].class_name);
    EXPECT_EQ(got[i].signature, want[i].signature);
    EXPECT_EQ(got[i].comment, want[i].comment);
    EXPECT_EQ(got[i].source, want[i].source);
    EXPECT_EQ(got[i].is_empty, want[i].is_empty);
  }
}

TEST(ExtractorTest, ManifestCoversTheInterestingShapes) {
  std::vector<RawFunction> want = expected_manifest();
  std::set<std::string> packages;
  bool method = false, empty = false, decorated = false, async_fn = false;
  for (const RawFunction& r : want) {
    packages.insert(r.file_path.substr(0, r.file_path.rfind('/')));
    method |= r.class_name.has_value();
    empty |= r.is_empty;
    decorated |= r.source.rfind("@", 0) == 0;
    async_fn |= r.source.find("async def") != std::string::npos;
  }
  EXPECT_GE(want.size(), 20u);
  EXPECT_GE(packages.size(), 3u);
  EXPECT_TRUE(method && empty && decorated && async_fn);
}

TEST(ExtractorTest, LibraryBaseMatchesExpected) {
  LibraryBase libs = build_library_base(fixture_repo());
  std::vector<std::string> got(libs.names().begin(), libs.names().end());
  EXPECT_EQ(got, lines_of(slurp(fixture_dir() / "expected/expected_libraries.txt")));
}

TEST(ExtractorTest, ReportsUnparseableFiles) {
  ParsedRepository repo = parse_repository(fixture_repo());
  std::vector<std::string> skipped;
  for (const SkipReport& s : repo.skipped) {
    skipped.push_back(s.file_path);
    EXPECT_FALSE(s.reason.empty());
  }
  EXPECT_EQ(skipped, lines_of(slurp(fixture_dir() / "expected/expected_skipped.txt")));
}

TEST(ExtractorTest, ExcludedAndHiddenDirectoriesAreSkipped) {
  ParsedRepository repo = parse_repository(fixture_repo());
  for (const std::string& p : repo.all_paths) {
    EXPECT_EQ(p.find("venv/"), std::string::npos) << p;
    EXPECT_EQ(p.find(".cache/"), std::string::npos) << p;
  }
  // without the default excludes, venv is walked
  ParsedRepository all = parse_repository(fixture_repo(), {});
  bool saw_venv = false;
  for (const std::string& p : all.all_paths) saw_venv |= p == "venv/lib/site.py";
  EXPECT_TRUE(saw_venv);
}

TEST(ExtractorTest, MissingRootThrows) {
  EXPECT_THROW(parse_repository(fixture_dir() / "no_such_repo"), NotFoundError);
}

TEST(ExtractorTest, InvalidUtf8IsSkipped) {
  TempDir dir;
  spit(dir / "pkg/bad.py", "x = '\xff'\n");
  spit(dir / "pkg/good.py", "def f():\r\n    return 1\r\n");
  ParsedRepository repo = parse_repository(dir.path());
  ASSERT_EQ(repo.files.size(), 1u);
  ASSERT_EQ(repo.skipped.size(), 1u);
  EXPECT_EQ(repo.skipped[0].file_path, "pkg/bad.py");
  std::vector<RawFunction> fns = extract_all(repo);
  ASSERT_EQ(fns.size(), 1u);
  EXPECT_EQ(fns[0].source, "def f():\n    return 1");
}

TEST(ExtractorTest, ModulePathAndFqn) {
  EXPECT_EQ(module_path("a/b/c.py"), "a.b.c");
  EXPECT_EQ(module_path("a/b/__init__.py"), "a.b");
  EXPECT_EQ(module_path("top.py"), "top");
  EXPECT_EQ(compute_fqn("a/b.py", std::string("C"), "run"), "a.b.C.run");
  EXPECT_EQ(compute_fqn("a/__init__.py", std::nullopt, "f"), "a.f");
}

TEST(ExtractorTest, NestedFunctionsAreNotExtracted) {
  py::Module m = py::parse(
      "def outer():\n    def inner():\n        pass\n    return inner\n"
      "class A:\n    class B:\n        def deep(self): pass\n"
      "    def top(self): pass\n");
  std::vector<RawFunction> fns = extract_functions("m.py", m);
  ASSERT_EQ(fns.size(), 2u);
  EXPECT_EQ(fns[0].fqn, "m.outer");
  EXPECT_EQ(fns[1].fqn, "m.A.top");
}

TEST(ExtractorTest, EmptyBodies) {
  auto empty = [](const std::string& src) {
    py::Module m = py::parse(src);
    return is_empty_body(py::body_of(m.root.child(0)));
  };
  EXPECT_TRUE(empty("def f():\n    pass\n"));
  EXPECT_TRUE(empty("def f():\n    \"\"\"Doc.\"\"\"\n    ...\n"));
  EXPECT_FALSE(empty("def f():\n    return None\n"));
  EXPECT_FALSE(empty("def f():\n    raise NotImplementedError\n"));
}

TEST(ExtractorTest, StdlibAndImports) {
  EXPECT_TRUE(is_stdlib_module("os"));
  EXPECT_TRUE(is_stdlib_module("typing"));
  EXPECT_FALSE(is_stdlib_module("lxml"));
  py::Module m = py::parse(
      "import os.path, numpy as np\nfrom . import sib\n"
      "def f():\n    import pandas.io\n"
      "try:\n    import yaml\nexcept ImportError:\n    yaml = None\n");
  EXPECT_EQ(imported_top_levels(m),
            (std::set<std::string>{"numpy", "os", "pandas", "yaml"}));
  EXPECT_EQ(extract_third_party_imports("m.py", m, {"yaml"}),
            (std::set<std::string>{"numpy", "pandas"}));
}

TEST(ExtractorTest, RepoLocalModules) {
  std::set<std::string> names = repo_local_modules(
      {"setup.py", "pkg/__init__.py", "pkg/sub/__init__.py", "pkg/sub/m.py",
       "scripts/run.py"});
  EXPECT_TRUE(names.count("pkg"));
  EXPECT_TRUE(names.count("setup"));
  EXPECT_FALSE(names.count("sub"));
}

class LocalContextTest : public ::testing::Test {
 protected:
  void SetUp() override {
    repo_ = parse_repository(fixture_repo());
    base_ = base_from(extract_all(repo_));
    for (const ParsedFile& f : repo_.files) {
      if (f.file_path == "unstructured/documents/html.py") html_ = &f;
    }
    ASSERT_NE(html_, nullptr);
  }
  ParsedRepository repo_;
  FunctionBase base_{1, "test"};
  const ParsedFile* html_ = nullptr;
};

TEST_F(LocalContextTest, DefaultsCoverFunctionsAndInits) {
  LocalContext ctx = mine_local_context(html_->file_path, html_->module, base_);
  EXPECT_EQ(ctx.file_path, "unstructured/documents/html.py");
  std::vector<std::string> fqns;
  for (const LocalFunction& f : ctx.local_functions) fqns.push_back(f.fqn);
  EXPECT_EQ(fqns, (std::vector<std::string>{
                      "unstructured.documents.html.HTMLDocument.__init__",
                      "unstructured.documents.html.HTMLDocument._read",
                      "unstructured.documents.html.HTMLDocument.doc_after_cleaners",
                      "unstructured.documents.html._construct_text",
                      "unstructured.documents.html._parse_tag",
                      "unstructured.documents.html.is_narrative_tag",
                      "unstructured.documents.html.has_table_ancestor"}));
  EXPECT_EQ(ctx.local_functions[3].summary,
            "summary of unstructured.documents.html._construct_text");
  EXPECT_EQ(ctx.local_functions[0].class_name, "HTMLDocument");
  ASSERT_EQ(ctx.class_init_sources.size(), 1u);
  EXPECT_EQ(ctx.class_init_sources[0].class_name, "HTMLDocument");
  EXPECT_EQ(ctx.class_init_sources[0].source.rfind("    def __init__", 0), 0u);
  EXPECT_FALSE(ctx.module_fqn.has_value());
  EXPECT_FALSE(ctx.module_variables.has_value());
}

TEST_F(LocalContextTest, OptionalSections) {
  LocalKnowledgeConfig cfg{false, false, true, true};
  LocalContext ctx =
      mine_local_context(html_->file_path, html_->module, base_, cfg);
  EXPECT_TRUE(ctx.local_functions.empty());
  EXPECT_TRUE(ctx.class_init_sources.empty());
  EXPECT_EQ(ctx.module_fqn, "unstructured.documents.html");
  ASSERT_TRUE(ctx.module_variables.has_value());
  EXPECT_EQ(ctx.module_variables->rfind("TEXT_TAGS: List[str] = ", 0), 0u);
  EXPECT_EQ(lines_of(*ctx.module_variables).size(), 3u);
}

TEST_F(LocalContextTest, NoVariablesRendersNone) {
  py::Module m = py::parse("def f():\n    pass\n");
  RawFunction raw = extract_functions("solo.py", m)[0];
  FunctionBase base = base_from({raw});
  LocalContext ctx = mine_local_context("solo.py", m, base, {true, true, true, true});
  EXPECT_EQ(ctx.module_variables, "None");
  EXPECT_EQ(ctx.module_fqn, "solo");
}

TEST_F(LocalContextTest, FunctionMissingFromBaseThrows) {
  FunctionBase empty(1, "test");
  EXPECT_THROW(mine_local_context(html_->file_path, html_->module, empty),
               ConsistencyError);
}

}  // namespace
}  // namespace repoaware
