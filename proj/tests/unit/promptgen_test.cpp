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

#include <memory>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "repoaware/errors.hpp"
#include "repoaware/promptgen.hpp"
#include "repoaware/prompts.hpp"
#include "repoaware/providers.hpp"

namespace repoaware {
namespace {

const Requirement kReq{"checking to see if a tag contains bulleted text",
                       "def _is_bulleted(tag_elem: etree.Element) -> bool",
                       "unstructured/documents/html.py"};

LocalContext sample_context() {
  LocalContext ctx;
  ctx.file_path = "pkg/html.py";
  ctx.local_functions = {
      {"pkg.html.Doc.__init__", "Sets up.", "def __init__(self)", "Doc"},
      {"pkg.html.Doc.read", "Reads.", "def read(self)", "Doc"},
      {"pkg.html.helper", "Helps.", "def helper(x)", std::nullopt},
  };
  ctx.class_init_sources = {{"Doc", "    def __init__(self):\n        self.x = 1"}};
  return ctx;
}

TEST(LocalBlockTest, GroupsMembersUnderTheirClass) {
  EXPECT_EQ(render_local_block(sample_context()),
            "Local functions:\n"
            "class Doc:\n"
            "\t{FQN: pkg.html.Doc.__init__, Summary: Sets up., Signature: def __init__(self)}\n"
            "\t{FQN: pkg.html.Doc.read, Summary: Reads., Signature: def read(self)}\n"
            "{FQN: pkg.html.helper, Summary: Helps., Signature: def helper(x)}\n"
            "Class instance attributes:\n"
            "class Doc:\n"
            "    def __init__(self):\n"
            "        self.x = 1");
}

TEST(LocalBlockTest, EmptySectionsSayNone) {
  LocalContext ctx;
  ctx.enabled = {true, true, true, true};
  ctx.module_fqn = "pkg.html";
  ctx.module_variables = "None";
  EXPECT_EQ(render_local_block(ctx),
            "Local module FQN:\npkg.html\nLocal functions:\nNone\n"
            "Class instance attributes:\nNone\nModule variables:\nNone");
  ctx.enabled = {false, false, false, false};
  EXPECT_EQ(render_local_block(ctx), "None");
}

TEST(LibraryBlockTest, CommaJoinedOrNone) {
  EXPECT_EQ(render_library_block(LibraryBase({"nltk", "lxml"})), "lxml, nltk");
  EXPECT_EQ(render_library_block(LibraryBase()), "None");
}

TEST(AssembleTest, FillsEveryBlock) {
  PromptBundle b = assemble_a3_prompt(kReq, "LOCAL", "GLOBAL", "LIBS");
  EXPECT_EQ(b.system_text, a3_system_text());
  EXPECT_NE(b.user_text.find(render_requirement(kReq)), std::string::npos);
  EXPECT_NE(b.user_text.find("local_aware_knowledge:\nLOCAL"), std::string::npos);
  EXPECT_NE(b.user_text.find("global_aware_knowledge:\nGLOBAL"), std::string::npos);
  EXPECT_NE(b.user_text.find("library_aware_knowledge:\nLIBS"), std::string::npos);
  EXPECT_EQ(b.user_text.find('{'), std::string::npos);
  EXPECT_EQ(b.trace, (std::vector<BlockTrace>{{"local", true, 5},
                                              {"global", true, 6},
                                              {"libraries", true, 4}}));
}

TEST(AssembleTest, AblationsReplaceBlocksWithNone) {
  PromptBundle b = assemble_a3_prompt(kReq, "LOCAL", "GLOBAL", "LIBS",
                                      {true, false, true});
  EXPECT_EQ(b.user_text.find("LOCAL"), std::string::npos);
  EXPECT_EQ(b.user_text.find("LIBS"), std::string::npos);
  EXPECT_NE(b.user_text.find("GLOBAL"), std::string::npos);
  EXPECT_FALSE(b.trace[0].included);
  EXPECT_TRUE(b.trace[1].included);
  EXPECT_FALSE(b.trace[2].included);
}

TEST(AssembleTest, TooLongNamesTheLargestBlock) {
  std::string huge(20000, 'g');
  try {
    assemble_a3_prompt(kReq, "L", huge, "lib");
    FAIL();
  } catch (const PromptTooLongError& e) {
    EXPECT_EQ(e.limit(), kDefaultMaxPromptChars);
    EXPECT_GT(e.total(), 20000u);
    EXPECT_NE(std::string(e.what()).find("largest knowledge block: global"),
              std::string::npos);
    ASSERT_EQ(e.blocks().size(), 5u);
    EXPECT_EQ(e.blocks()[3].chars, 20000u);
  }
  // the same prompt fits once the block is ablated
  EXPECT_NO_THROW(assemble_a3_prompt(kReq, "L", huge, "lib", {false, true, false}));
}

TEST(AssembleTest, InvalidRequirement) {
  EXPECT_THROW(assemble_a3_prompt({"", "def f()", "a.py"}, "", "", ""),
               ContractError);
}

TEST(ExtractCodeTest, FenceRoundTrip) {
  std::string code = "import re\n\ndef f(x):\n    return re.sub('a', 'b', x)";
  EXPECT_EQ(extract_code("Here you go:\n```python\n" + code + "\n```\nDone."), code);
}

TEST(ExtractCodeTest, BareCodeAndProse) {
  std::string bare = "def f():\n    return 1\n";
  EXPECT_EQ(extract_code(bare), bare);
  std::string mixed =
      "Step 1: think.\nfrom a import b\ndef f():\n    return b()\nThat is all.";
  EXPECT_EQ(extract_code(mixed), "from a import b\ndef f():\n    return b()");
  EXPECT_THROW(extract_code("I cannot help with that."), DegenerateOutputError);
  EXPECT_THROW(extract_code("```\n\n```"), DegenerateOutputError);
}

MockChatProvider::Entry answer(std::string purpose, std::string response) {
  return {std::nullopt, std::nullopt, std::move(purpose), std::move(response)};
}

TEST(GenerateTest, FirstAnswerUsed) {
  MockChatProvider chat({answer("generate", "```python\ndef f():\n    return 2\n```")});
  GenerationResult r = generate_code(assemble_a3_prompt(kReq, "", "", ""), chat);
  EXPECT_EQ(r.code, "def f():\n    return 2");
  EXPECT_EQ(r.attempts, 1);
  EXPECT_EQ(r.bundle_trace.size(), 3u);
}

TEST(GenerateTest, StubTriggersOneRepair) {
  MockChatProvider chat({answer("generate", "```python\ndef f():\n    pass\n```"),
                         answer("repair", "def f():\n    return 3\n")});
  GenerationResult r = generate_code(assemble_a3_prompt(kReq, "", "", ""), chat);
  EXPECT_EQ(r.code, "def f():\n    return 3\n");
  EXPECT_EQ(r.attempts, 2);
  EXPECT_EQ(chat.calls(), 2u);
}

TEST(GenerateTest, GivesUpAfterRepair) {
  MockChatProvider chat({answer("generate", "Sorry."), answer("repair", "Still no.")});
  try {
    generate_code(assemble_a3_prompt(kReq, "", "", ""), chat);
    FAIL();
  } catch (const DegenerateOutputError& e) {
    EXPECT_EQ(e.raw_output(), "Still no.");
  }
  EXPECT_EQ(chat.calls(), 2u);
}

TEST(GenerateTest, OfflineDraftCountsAsABody) {
  // The offline drafter raises NotImplementedError, which counts as a body.
  OfflineChatProvider chat;
  GenerationResult r = generate_code(assemble_a3_prompt(kReq, "", "", ""), chat);
  EXPECT_NE(r.code.find("raise NotImplementedError"), std::string::npos);
}

}  // namespace
}  // namespace repoaware
