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

#include "repoaware/promptgen.hpp"

#include <algorithm>

#include "repoaware/errors.hpp"
#include "repoaware/prompts.hpp"
#include "repoaware/python/parser.hpp"

namespace repoaware {

namespace {

std::string function_entry(const LocalFunction& f) {
  return "{FQN: " + f.fqn + ", Summary: " + f.summary +
         ", Signature: " + f.signature + "}";
}

bool blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

bool has_function(const py::Module& m) {
  bool found = false;
  py::walk(m.root, [&](const py::Node& n) {
    if (n.kind == py::NodeKind::kFunctionDef) found = true;
    return !found;
  });
  return found;
}

bool parses_with_function(const std::string& text) {
  try {
    return has_function(py::parse(text));
  } catch (const py::SyntaxError&) {
    return false;
  }
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      if (pos < text.size()) lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, eol - pos));
    pos = eol + 1;
  }
  return lines;
}

bool code_start(std::string_view line) {
  for (std::string_view p : {"def ", "async def ", "@", "import ", "from ",
                             "class "}) {
    if (line.substr(0, p.size()) == p) return true;
  }
  return false;
}

constexpr std::size_t kMaxScanLines = 400;

std::optional<std::string> longest_code_run(std::string_view text) {
  std::vector<std::string_view> lines = lines_of(text);
  if (lines.size() > kMaxScanLines) lines.resize(kMaxScanLines);
  std::optional<std::string> best;
  std::size_t best_len = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!code_start(lines[i])) continue;
    for (std::size_t end = lines.size(); end > i && end - i > best_len; --end) {
      std::string candidate;
      for (std::size_t k = i; k < end; ++k) {
        candidate += lines[k];
        candidate += '\n';
      }
      if (parses_with_function(candidate)) {
        while (!candidate.empty() && (candidate.back() == '\n' ||
                                      candidate.back() == ' ')) {
          candidate.pop_back();
        }
        best = std::move(candidate);
        best_len = end - i;
        break;
      }
    }
  }
  return best;
}

// Usable unless it parses and holds no function with a real body.
bool usable_code(const std::string& code) {
  if (blank(code)) return false;
  py::Module m;
  try {
    m = py::parse(code);
  } catch (const py::SyntaxError&) {
    return true;
  }
  bool real = false;
  py::walk(m.root, [&](const py::Node& n) {
    if (n.kind == py::NodeKind::kFunctionDef &&
        !is_empty_body(py::body_of(n))) {
      real = true;
    }
    return !real;
  });
  return real;
}

}  // namespace

std::string render_local_block(const LocalContext& ctx) {
  std::string out;
  auto section = [&](const std::string& title, const std::string& body) {
    if (!out.empty()) out += '\n';
    out += title + ":\n" + body;
  };
  if (ctx.enabled.module_fqn) section("Local module FQN", ctx.module_fqn.value_or("None"));
  if (ctx.enabled.functions) {
    std::string body;
    std::optional<std::string> open_class;
    for (const LocalFunction& f : ctx.local_functions) {
      if (!body.empty()) body += '\n';
      if (f.class_name) {
        if (open_class != f.class_name) body += "class " + *f.class_name + ":\n";
        open_class = f.class_name;
        body += '\t';
      } else {
        open_class.reset();
      }
      body += function_entry(f);
    }
    section("Local functions", body.empty() ? "None" : body);
  }
  if (ctx.enabled.class_attrs) {
    std::string body;
    for (const ClassInit& c : ctx.class_init_sources) {
      if (!body.empty()) body += '\n';
      body += "class " + c.class_name + ":\n" + c.source;
    }
    section("Class instance attributes", body.empty() ? "None" : body);
  }
  if (ctx.enabled.module_vars) {
    section("Module variables", ctx.module_variables.value_or("None"));
  }
  return out.empty() ? "None" : out;
}

std::string render_library_block(const LibraryBase& libs) {
  std::string out;
  for (const std::string& n : libs.names()) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out.empty() ? "None" : out;
}

PromptBundle assemble_a3_prompt(const Requirement& req,
                                const std::string& local_block,
                                const std::string& global_block,
                                const std::string& lib_block,
                                const AblationFlags& flags,
                                std::size_t max_chars) {
  validate_requirement(req);
  const std::string none = "None";
  const std::string& local = flags.no_local ? none : local_block;
  const std::string& global = flags.no_global ? none : global_block;
  const std::string& libs = flags.no_libs ? none : lib_block;
  std::string requirement = render_requirement(req);

  PromptBundle bundle;
  bundle.system_text = a3_system_text();
  bundle.user_text = fill_template(a3_input_template(),
                                   {{"requirement", requirement},
                                    {"local", local},
                                    {"global", global},
                                    {"libraries", libs}});
  bundle.trace = {{"local", !flags.no_local, local.size()},
                  {"global", !flags.no_global, global.size()},
                  {"libraries", !flags.no_libs, libs.size()}};

  std::size_t total = bundle.system_text.size() + bundle.user_text.size();
  if (total > max_chars) {
    std::vector<PromptTooLongError::BlockSize> sizes = {
        {"system", bundle.system_text.size()},
        {"requirement", requirement.size()},
        {"local", local.size()},
        {"global", global.size()},
        {"libraries", libs.size()}};
    const auto* largest = &sizes[2];
    for (std::size_t i = 3; i < sizes.size(); ++i) {
      if (sizes[i].chars > largest->chars) largest = &sizes[i];
    }
    std::string detail;
    for (const auto& b : sizes) {
      detail += (detail.empty() ? "" : ", ") + b.name + "=" +
                std::to_string(b.chars);
    }
    throw PromptTooLongError(
        "prompt is " + std::to_string(total) + " chars, limit " +
            std::to_string(max_chars) + "; largest knowledge block: " +
            largest->name + " (" + detail + ")",
        max_chars, total, std::move(sizes));
  }
  return bundle;
}

std::string extract_code(const std::string& raw_output) {
  if (std::optional<std::string> fenced = extract_fenced(raw_output)) {
    if (!blank(*fenced)) return *fenced;
  }
  if (!blank(raw_output) && parses_with_function(raw_output)) return raw_output;
  if (std::optional<std::string> run = longest_code_run(raw_output)) return *run;
  throw DegenerateOutputError("no code found in model output", raw_output);
}

GenerationResult generate_code(const PromptBundle& bundle, ChatProvider& chat,
                               double temperature, const RetryPolicy& retry) {
  ChatRequest req;
  req.purpose = ChatPurpose::kGenerate;
  req.temperature = temperature;
  req.messages = {{"system", bundle.system_text}, {"user", bundle.user_text}};

  GenerationResult result;
  result.bundle_trace = bundle.trace;
  auto attempt = [&](const ChatRequest& r) -> bool {
    ++result.attempts;
    result.raw_output = complete_with_retry(chat, r, retry);
    try {
      result.code = extract_code(result.raw_output);
    } catch (const DegenerateOutputError&) {
      result.code.clear();
      return false;
    }
    return usable_code(result.code);
  };
  if (attempt(req)) return result;

  ChatRequest repair = req;
  repair.purpose = ChatPurpose::kRepair;
  repair.messages.push_back({"assistant", result.raw_output});
  repair.messages.push_back({"user", a3_repair_instruction()});
  if (attempt(repair)) return result;
  throw DegenerateOutputError("model output held no usable code after repair",
                              result.raw_output);
}

}  // namespace repoaware
