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

#include "repoaware/prompts.hpp"

#include "json.hpp"
#include "repoaware/resources.hpp"

namespace repoaware {

using Json = nlohmann::json;

namespace {

constexpr std::string_view kDescriptionLabel = "Function description: ";
constexpr std::string_view kDefinitionLabel = "Function definition: ";

const Json& prompt_data(const char* name) {
  // Parsed once per resource; the resources are immutable.
  static const Json summarizer = Json::parse(resource("summarizer_prompt.json"));
  static const Json what_if = Json::parse(resource("what_if_prompt.json"));
  static const Json a3 = Json::parse(resource("a3_prompt.json"));
  std::string_view n = name;
  if (n == "summarizer") return summarizer;
  if (n == "what_if") return what_if;
  return a3;
}

std::string line_after(std::string_view text, std::string_view label) {
  std::size_t pos = text.find(label);
  if (pos == std::string_view::npos) return {};
  pos += label.size();
  std::size_t eol = text.find('\n', pos);
  return std::string(text.substr(pos, eol == std::string_view::npos
                                          ? std::string_view::npos
                                          : eol - pos));
}

}  // namespace

std::string render_requirement(const Requirement& req) {
  std::string description = req.description;
  for (char& c : description) {
    if (c == '\n') c = ' ';
  }
  std::string definition = req.definition;
  for (char& c : definition) {
    if (c == '\n') c = ' ';
  }
  return std::string(kDescriptionLabel) + description + "\n" +
         std::string(kDefinitionLabel) + definition;
}

bool parse_requirement_text(std::string_view text, RequirementText& out) {
  std::string definition = line_after(text, kDefinitionLabel);
  if (definition.empty()) return false;
  out.definition = std::move(definition);
  out.description = line_after(text, kDescriptionLabel);
  return true;
}

std::optional<std::string> extract_fenced(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    std::size_t first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos && line.substr(first, 3) == "```") {
      if (eol == std::string_view::npos) return std::string();
      std::size_t start = eol + 1;
      std::size_t p = start;
      while (p < text.size()) {
        std::size_t e = text.find('\n', p);
        std::string_view l = text.substr(
            p, e == std::string_view::npos ? std::string_view::npos : e - p);
        std::size_t f = l.find_first_not_of(" \t");
        if (f != std::string_view::npos && l.substr(f, 3) == "```") {
          std::size_t end = p > start ? p - 1 : start;
          return std::string(text.substr(start, end - start));
        }
        if (e == std::string_view::npos) break;
        p = e + 1;
      }
      return std::string(text.substr(start));
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return std::nullopt;
}

std::string fill_template(
    std::string_view templ,
    std::initializer_list<std::pair<std::string_view, std::string_view>> values) {
  std::string out;
  std::size_t i = 0;
  while (i < templ.size()) {
    if (templ[i] == '{') {
      std::size_t close = templ.find('}', i);
      if (close != std::string_view::npos) {
        std::string_view key = templ.substr(i + 1, close - i - 1);
        bool replaced = false;
        for (const auto& [k, v] : values) {
          if (k == key) {
            out += v;
            replaced = true;
            break;
          }
        }
        if (replaced) {
          i = close + 1;
          continue;
        }
      }
    }
    out.push_back(templ[i++]);
  }
  return out;
}

ChatRequest build_summary_request(const std::string& source,
                                  double temperature) {
  const Json& d = prompt_data("summarizer");
  const std::string templ = d.at("input_template").get<std::string>();
  ChatRequest req;
  req.purpose = ChatPurpose::kSummarize;
  req.temperature = temperature;
  req.messages.push_back({"system", d.at("task").get<std::string>()});
  for (const Json& ex : d.at("examples")) {
    req.messages.push_back(
        {"user", fill_template(templ, {{"source", ex.at("source").get<std::string>()}})});
    req.messages.push_back({"assistant", ex.at("summary").get<std::string>()});
  }
  req.messages.push_back({"user", fill_template(templ, {{"source", source}})});
  return req;
}

ChatRequest build_what_if_request(const Requirement& requirement,
                                  double temperature) {
  const Json& d = prompt_data("what_if");
  const std::string templ = d.at("input_template").get<std::string>();
  ChatRequest req;
  req.purpose = ChatPurpose::kWhatIf;
  req.temperature = temperature;
  req.messages.push_back({"system", d.at("task").get<std::string>()});
  for (const Json& ex : d.at("examples")) {
    req.messages.push_back(
        {"user", fill_template(templ, {{"requirement",
                                        ex.at("requirement").get<std::string>()}})});
    req.messages.push_back({"assistant", ex.at("code").get<std::string>()});
  }
  req.messages.push_back(
      {"user", fill_template(templ, {{"requirement", render_requirement(requirement)}})});
  return req;
}

const std::string& a3_system_text() {
  static const std::string text = [] {
    const Json& d = prompt_data("a3");
    std::string s = d.at("task").get<std::string>();
    s += "\n\nExamples:";
    int n = 0;
    for (const Json& ex : d.at("examples")) {
      s += "\n\n### Example " + std::to_string(++n) + "\nInput:\n";
      s += ex.at("input").get<std::string>();
      s += "\nOutput:\n";
      s += ex.at("output").get<std::string>();
    }
    return s;
  }();
  return text;
}

const std::string& a3_input_template() {
  static const std::string text =
      prompt_data("a3").at("input_template").get<std::string>();
  return text;
}

const std::string& a3_repair_instruction() {
  static const std::string text =
      prompt_data("a3").at("repair_instruction").get<std::string>();
  return text;
}

}  // namespace repoaware
