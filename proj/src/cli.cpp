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

#include "repoaware/cli.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "repoaware/errors.hpp"
#include "repoaware/evaluator.hpp"
#include "repoaware/persistence.hpp"
#include "repoaware/python/parser.hpp"
#include "repoaware/retrieval.hpp"
#include "repoaware/semantic.hpp"

namespace repoaware {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ContractError("config " + key + ": expected a boolean, got '" + v + "'");
}

std::size_t parse_count(const std::string& key, const std::string& v) {
  std::size_t n = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty()) {
    throw ContractError("config " + key +
                        ": expected a non-negative integer, got '" + v + "'");
  }
  return n;
}

double parse_real(const std::string& key, const std::string& v) {
  char* end = nullptr;
  errno = 0;
  double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno != 0 || d < 0.0) {
    throw ContractError("config " + key +
                        ": expected a non-negative number, got '" + v + "'");
  }
  return d;
}

std::vector<std::string> parse_list(const std::string& v) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    std::size_t comma = v.find(',', start);
    std::string item = trim(std::string_view(v).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

using Setter = void (*)(Config&, const std::string&, const std::string&);

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"offline", [](Config& c, const std::string& k, const std::string& v) {
         c.offline = parse_bool(k, v);
       }},
      {"chat.base_url", [](Config& c, const std::string&, const std::string& v) {
         c.chat.base_url = v;
       }},
      {"chat.model", [](Config& c, const std::string&, const std::string& v) {
         c.chat.model = v;
       }},
      {"chat.api_key_env",
       [](Config& c, const std::string&, const std::string& v) {
         c.chat.api_key_env = v;
       }},
      {"embed.base_url", [](Config& c, const std::string&, const std::string& v) {
         c.embed.base_url = v;
       }},
      {"embed.model", [](Config& c, const std::string&, const std::string& v) {
         c.embed.model = v;
       }},
      {"embed.api_key_env",
       [](Config& c, const std::string&, const std::string& v) {
         c.embed.api_key_env = v;
       }},
      {"embed.dim", [](Config& c, const std::string& k, const std::string& v) {
         c.embed_dim = parse_count(k, v);
       }},
      {"offline.embed_dim",
       [](Config& c, const std::string& k, const std::string& v) {
         c.offline_embed_dim = parse_count(k, v);
       }},
      {"timeout_seconds",
       [](Config& c, const std::string& k, const std::string& v) {
         c.chat.timeout_seconds = c.embed.timeout_seconds = parse_real(k, v);
       }},
      {"k", [](Config& c, const std::string& k, const std::string& v) {
         c.k = parse_count(k, v);
       }},
      {"local.functions",
       [](Config& c, const std::string& k, const std::string& v) {
         c.local.functions = parse_bool(k, v);
       }},
      {"local.class_attrs",
       [](Config& c, const std::string& k, const std::string& v) {
         c.local.class_attrs = parse_bool(k, v);
       }},
      {"local.module_fqn",
       [](Config& c, const std::string& k, const std::string& v) {
         c.local.module_fqn = parse_bool(k, v);
       }},
      {"local.module_vars",
       [](Config& c, const std::string& k, const std::string& v) {
         c.local.module_vars = parse_bool(k, v);
       }},
      {"exclude", [](Config& c, const std::string&, const std::string& v) {
         c.excludes = parse_list(v);
       }},
      {"max_prompt_chars",
       [](Config& c, const std::string& k, const std::string& v) {
         c.max_prompt_chars = parse_count(k, v);
       }},
      {"max_in_flight",
       [](Config& c, const std::string& k, const std::string& v) {
         c.max_in_flight = std::max<std::size_t>(1, parse_count(k, v));
       }},
      {"temperature", [](Config& c, const std::string& k, const std::string& v) {
         c.temperature = parse_real(k, v);
       }},
      {"mock.transcript",
       [](Config& c, const std::string&, const std::string& v) {
         if (v.empty()) {
           c.mock_transcript.reset();
         } else {
           c.mock_transcript = v;
         }
       }},
      {"retry.max_retries",
       [](Config& c, const std::string& k, const std::string& v) {
         c.retry.max_retries = static_cast<int>(parse_count(k, v));
       }},
      {"retry.base_delay_ms",
       [](Config& c, const std::string& k, const std::string& v) {
         c.retry.base_delay = std::chrono::milliseconds(parse_count(k, v));
       }},
  };
  return table;
}

}  // namespace

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, fn] : setters()) keys.push_back(k);
  return keys;
}

void apply_setting(Config& config, const std::string& key,
                   const std::string& value) {
  for (const auto& [k, fn] : setters()) {
    if (k == key) {
      fn(config, key, value);
      return;
    }
  }
  std::string lower = key;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower.find("key") != std::string::npos ||
      lower.find("token") != std::string::npos ||
      lower.find("secret") != std::string::npos) {
    throw ContractError("config " + key +
                        ": credentials are read from environment variables; "
                        "name the variable with *.api_key_env instead");
  }
  throw ContractError("unknown config key: " + key);
}

void apply_config_text(Config& config, const std::string& text,
                       const std::string& file_name) {
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw = std::string_view(text).substr(
        pos, eol == std::string::npos ? std::string::npos : eol - pos);
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (!line.empty()) {
      std::size_t eq = line.find('=');
      if (eq == std::string::npos) {
        throw ParseError(file_name, line_no, "expected key=value");
      }
      std::string key = trim(std::string_view(line).substr(0, eq));
      std::string value = trim(std::string_view(line).substr(eq + 1));
      try {
        apply_setting(config, key, value);
      } catch (const ContractError& e) {
        throw ParseError(file_name, line_no, e.what());
      }
    }
    if (eol == std::string::npos) break;
    pos = eol + 1;
  }
}

void apply_env_overrides(
    Config& config,
    const std::function<std::optional<std::string>(const std::string&)>&
        getenv) {
  for (const auto& [key, fn] : setters()) {
    std::string var = "REPOAWARE_";
    for (char c : key) {
      var += c == '.' ? '_' : static_cast<char>(std::toupper(
                                  static_cast<unsigned char>(c)));
    }
    if (std::optional<std::string> v = getenv(var)) {
      try {
        fn(config, key, trim(*v));
      } catch (const ContractError& e) {
        throw ContractError(var + ": " + e.what());
      }
    }
  }
}

std::shared_ptr<ChatProvider> make_chat_provider(const Config& config) {
  std::shared_ptr<ChatProvider> base;
  if (config.offline) {
    base = std::make_shared<OfflineChatProvider>();
  } else {
    if (config.chat.base_url.empty()) {
      throw ContractError(
          "online mode needs chat.base_url (or run with --offline)");
    }
    base = std::make_shared<HttpChatProvider>(config.chat);
  }
  if (!config.mock_transcript) return base;
  return std::make_shared<MockChatProvider>(
      MockChatProvider::load_transcript(*config.mock_transcript), base);
}

std::shared_ptr<EmbeddingProvider> make_embedding_provider(
    const Config& config) {
  if (config.offline) {
    return std::make_shared<OfflineHashEmbedder>(config.offline_embed_dim);
  }
  if (config.embed.base_url.empty()) {
    throw ContractError(
        "online mode needs embed.base_url (or run with --offline)");
  }
  return std::make_shared<HttpEmbeddingProvider>(config.embed,
                                                 config.embed_dim);
}

namespace {

std::string path_string(const fs::path& p) { return p.generic_string(); }

Requirement load_requirement(const fs::path& path) {
  std::string text = read_file(path);
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(path_string(path), 0, e.what());
  }
  auto field = [&](const char* name) -> std::string {
    if (!j.is_object() || !j.contains(name) || !j[name].is_string()) {
      throw ParseError(path_string(path), 0,
                       std::string("missing string field '") + name + "'");
    }
    return j[name].get<std::string>();
  };
  Requirement req{field("description"), field("definition"),
                  field("target_file")};
  validate_requirement(req);
  return req;
}

FunctionBase load_base_for(const fs::path& kb, EmbeddingProvider& embedder) {
  FunctionBase base = load_function_base(kb);
  if (base.provider_id() != embedder.id()) {
    throw ConsistencyError(path_string(kb) + ": base was embedded with '" +
                           base.provider_id() + "' but the active embedder is '" +
                           embedder.id() + "'");
  }
  return base;
}

// Local knowledge of the target file, minus the function being written.
LocalContext local_context_for(const fs::path& repo, const Requirement& req,
                               const FunctionBase& base,
                               const LocalKnowledgeConfig& config) {
  py::Module module = py::parse("");
  fs::path file = repo / req.target_file;
  if (fs::exists(file)) {
    std::string reason;
    std::optional<std::string> src = read_source(file, reason);
    if (!src) throw ParseError(path_string(file), 0, reason);
    try {
      module = py::parse(std::move(*src));
    } catch (const py::SyntaxError& e) {
      throw ParseError(path_string(file), e.line(), e.what());
    }
  }
  LocalContext ctx = mine_local_context(req.target_file, module, base, config);
  std::string self = requirement_function_name(req);
  std::erase_if(ctx.local_functions, [&](const LocalFunction& f) {
    return !f.class_name && f.fqn.substr(f.fqn.rfind('.') + 1) == self;
  });
  return ctx;
}

std::string format_score(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

ordered_json hit_json(const RetrievalHit& h) {
  return {{"fqn", h.fqn},
          {"score", format_score(h.score)},
          {"channel", std::string(channel_name(h.channel))}};
}

std::string json_text(const ordered_json& j) {
  return j.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n";
}

std::vector<RetrievalHit> global_hits(const Requirement& req,
                                      const FunctionBase& base,
                                      const Config& config, bool what_if,
                                      ChatProvider* chat,
                                      EmbeddingProvider& embedder) {
  std::vector<RetrievalHit> hits = retrieve_by_summary(
      req.description, base, config.k, embedder, req.target_file);
  if (!what_if || config.k == 0 || chat == nullptr) return hits;
  std::string draft =
      generate_what_if_code(req, *chat, config.temperature, config.retry);
  std::vector<RetrievalHit> by_code =
      retrieve_by_code(draft, base, config.k, embedder, req.target_file);
  return merge_retrievals(hits, by_code);
}

struct CommonOptions {
  std::string config_file;
  bool offline = false;
  std::optional<std::size_t> k;
  std::vector<std::string> excludes;
  std::vector<std::string> settings;
};

Config resolve_config(const CommonOptions& o) {
  Config config;
  if (!o.config_file.empty()) {
    apply_config_text(config, read_file(o.config_file), o.config_file);
  }
  apply_env_overrides(config, [](const std::string& name)
                                  -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (v == nullptr) return std::nullopt;
    return std::string(v);
  });
  for (const std::string& s : o.settings) {
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) {
      throw ContractError("--set expects key=value, got '" + s + "'");
    }
    apply_setting(config, trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
  }
  if (o.offline) config.offline = true;
  if (o.k) config.k = *o.k;
  if (!o.excludes.empty()) {
    config.excludes.insert(config.excludes.end(), o.excludes.begin(),
                           o.excludes.end());
  }
  return config;
}

int cmd_index(const Config& config, const fs::path& repo, const fs::path& kb,
              std::optional<fs::path> cache_path, std::ostream& out,
              std::ostream& err) {
  ParsedRepository parsed = parse_repository(repo, config.excludes);
  for (const SkipReport& s : parsed.skipped) {
    err << "repoaware: warning: skipped " << s.file_path << ": " << s.reason
        << "\n";
  }
  std::shared_ptr<ChatProvider> chat = make_chat_provider(config);
  std::shared_ptr<EmbeddingProvider> embedder = make_embedding_provider(config);
  fs::path cache_file = cache_path.value_or(kb / "summary_cache.jsonl");
  SummaryCache cache;
  if (fs::exists(cache_file)) cache.load(cache_file);
  SemanticOptions options;
  options.temperature = config.temperature;
  options.retry = config.retry;
  options.max_in_flight = config.max_in_flight;
  FunctionBase base =
      build_function_base(parsed, *chat, *embedder, cache, options);
  LibraryBase libs = build_library_base(parsed);
  fs::create_directories(kb);
  save_function_base(base, kb);
  save_library_base(libs, kb);
  cache.save(cache_file);
  out << "files parsed: " << parsed.files.size() << "\n"
      << "files skipped: " << parsed.skipped.size() << "\n"
      << "functions indexed: " << base.size() << "\n"
      << "libraries found: " << libs.size() << "\n";
  return 0;
}

int cmd_retrieve(const Config& config, const fs::path& kb,
                 const fs::path& requirement_file, bool what_if,
                 std::ostream& out) {
  Requirement req = load_requirement(requirement_file);
  std::shared_ptr<EmbeddingProvider> embedder = make_embedding_provider(config);
  FunctionBase base = load_base_for(kb, *embedder);
  std::shared_ptr<ChatProvider> chat;
  if (what_if) chat = make_chat_provider(config);
  std::vector<RetrievalHit> hits =
      global_hits(req, base, config, what_if, chat.get(), *embedder);
  for (const RetrievalHit& h : hits) {
    out << h.fqn << "\t" << format_score(h.score) << "\t"
        << channel_name(h.channel) << "\n";
  }
  return 0;
}

struct GenerateArgs {
  fs::path kb;
  fs::path repo;
  fs::path requirement;
  fs::path out;
  AblationFlags flags;
  bool no_what_if = false;
};

fs::path trace_path_for(const fs::path& code_file) {
  fs::path p = code_file;
  return p.replace_filename(code_file.stem().string() + ".trace.json");
}

int cmd_generate(const Config& config, const GenerateArgs& a,
                 std::ostream& out) {
  Requirement req = load_requirement(a.requirement);
  std::shared_ptr<EmbeddingProvider> embedder = make_embedding_provider(config);
  FunctionBase base = load_base_for(a.kb, *embedder);
  LibraryBase libs = load_library_base(a.kb);
  std::shared_ptr<ChatProvider> chat = make_chat_provider(config);

  LocalContext local = local_context_for(a.repo, req, base, config.local);
  std::vector<RetrievalHit> hits;
  if (!a.flags.no_global) {
    hits = global_hits(req, base, config, !a.no_what_if, chat.get(), *embedder);
  }
  GlobalKnowledgeBlock global = unify_global_knowledge(hits, base);
  PromptBundle bundle = assemble_a3_prompt(
      req, render_local_block(local), global.rendered_text,
      render_library_block(libs), a.flags, config.max_prompt_chars);
  GenerationResult result =
      generate_code(bundle, *chat, config.temperature, config.retry);

  std::string code = result.code;
  if (code.empty() || code.back() != '\n') code += '\n';
  if (a.out.has_parent_path()) fs::create_directories(a.out.parent_path());
  write_file_atomic(a.out, code);

  ordered_json trace;
  trace["requirement"] = {{"description", req.description},
                          {"definition", req.definition},
                          {"target_file", req.target_file}};
  trace["function_name"] = requirement_function_name(req);
  trace["chat_provider"] = chat->id();
  trace["embedding_provider"] = embedder->id();
  trace["k"] = config.k;
  trace["attempts"] = result.attempts;
  ordered_json blocks = ordered_json::array();
  for (const BlockTrace& b : result.bundle_trace) {
    blocks.push_back(
        {{"name", b.name}, {"included", b.included}, {"chars", b.chars}});
  }
  trace["blocks"] = blocks;
  ordered_json hit_list = ordered_json::array();
  for (const RetrievalHit& h : hits) hit_list.push_back(hit_json(h));
  trace["global_hits"] = hit_list;
  trace["prompt_chars"] = bundle.system_text.size() + bundle.user_text.size();
  fs::path trace_file = trace_path_for(a.out);
  write_file_atomic(trace_file, json_text(trace));

  out << "wrote " << path_string(a.out) << "\n"
      << "wrote " << path_string(trace_file) << "\n";
  return 0;
}

struct EvaluateArgs {
  fs::path kb;
  std::optional<fs::path> repo;
  fs::path pred;
  fs::path refs;
  std::optional<fs::path> labels;
  fs::path report;
  bool paper_convention = false;
  bool no_dataflow = false;
};

int cmd_evaluate(const Config& config, const EvaluateArgs& a,
                 std::ostream& out) {
  FunctionBase base = load_function_base(a.kb);
  LibraryBase libs = load_library_base(a.kb);
  if (!fs::is_directory(a.pred)) throw NotFoundError(path_string(a.pred));
  std::vector<fs::path> files;
  for (const fs::directory_entry& e : fs::directory_iterator(a.pred)) {
    if (e.is_regular_file() && e.path().extension() == ".py") {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw ContractError(path_string(a.pred) + ": no generated *.py files");
  }

  std::vector<ReuseVector> labels;
  if (a.labels) {
    labels = parse_labels(read_file(*a.labels), path_string(*a.labels));
    if (labels.size() != files.size()) {
      throw ContractError(path_string(*a.labels) + ": " +
                          std::to_string(labels.size()) + " label lines for " +
                          std::to_string(files.size()) + " samples");
    }
  }

  std::vector<EvalSample> samples;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const fs::path& f = files[i];
    EvalSample s;
    s.id = f.filename().string();
    s.generated = read_file(f);
    s.reference = read_file(a.refs / f.filename());
    if (a.labels) s.label = labels[i];
    fs::path trace_file = trace_path_for(f);
    if (fs::exists(trace_file)) {
      ordered_json t = ordered_json::parse(read_file(trace_file));
      const ordered_json& r = t.at("requirement");
      Requirement req{r.at("description").get<std::string>(),
                      r.at("definition").get<std::string>(),
                      r.at("target_file").get<std::string>()};
      s.local.file_path = req.target_file;
      if (a.repo) {
        s.local = local_context_for(*a.repo, req, base, LocalKnowledgeConfig{});
      }
    }
    samples.push_back(std::move(s));
  }

  EvalOptions options;
  options.max_in_flight = config.max_in_flight;
  if (a.no_dataflow) options.weights = CodeBleuWeights::without_dataflow();
  EvalReport report = evaluate_batch(samples, base, libs, options);
  std::string text = render_report(report, a.paper_convention);
  fs::create_directories(a.report);
  write_file_atomic(a.report / "report.txt", text);
  write_file_atomic(a.report / "summary.jsonl",
                    render_summary_jsonl(report, a.paper_convention));
  out << text;
  return 0;
}

int cmd_summarize(const Config& config, const fs::path& repo,
                  const std::string& file, const std::string& function,
                  std::ostream& out) {
  std::string reason;
  std::optional<std::string> src = read_source(repo / file, reason);
  if (!src) {
    if (!fs::exists(repo / file)) throw NotFoundError(path_string(repo / file));
    throw ParseError(file, 0, reason);
  }
  py::Module module;
  try {
    module = py::parse(std::move(*src));
  } catch (const py::SyntaxError& e) {
    throw ParseError(file, e.line(), e.what());
  }
  for (const RawFunction& raw : extract_functions(file, module)) {
    // Full fqn, or any dotted suffix of it such as Class.method.
    bool suffix = raw.fqn.size() > function.size() &&
                  raw.fqn.compare(raw.fqn.size() - function.size(),
                                  function.size(), function) == 0 &&
                  raw.fqn[raw.fqn.size() - function.size() - 1] == '.';
    if (raw.fqn == function || suffix) {
      std::shared_ptr<ChatProvider> chat = make_chat_provider(config);
      SummaryCache cache;
      SemanticOptions options;
      options.temperature = config.temperature;
      options.retry = config.retry;
      out << summarize_function(raw, *chat, cache, options) << "\n";
      return 0;
    }
  }
  throw NotFoundError(file + ": function " + function);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Repository-aware code generation toolkit", "repoaware"};
  app.require_subcommand(1);
  CommonOptions common;
  app.add_option("--config", common.config_file, "key=value config file");
  app.add_flag("--offline", common.offline,
               "use the offline embedder and chat fallback");
  app.add_option("--k", common.k, "retrieval depth per channel");
  app.add_option("--exclude", common.excludes,
                 "extra directory name to skip (repeatable)");
  app.add_option("--set", common.settings, "override one config key=value");

  std::string repo, kb, requirement, out_path, pred, refs, labels, report,
      file, function, cache;
  bool what_if = false, paper = false, no_dataflow = false;
  GenerateArgs gen;

  CLI::App* index = app.add_subcommand("index", "build the knowledge bases");
  index->fallthrough();
  index->add_option("repo", repo, "repository root")->required();
  index->add_option("--out", kb, "knowledge base directory")->required();
  index->add_option("--cache", cache, "summary cache file");

  CLI::App* retrieve =
      app.add_subcommand("retrieve", "rank global functions for a requirement");
  retrieve->fallthrough();
  retrieve->add_option("--kb", kb, "knowledge base directory")->required();
  retrieve->add_option("--requirement", requirement, "requirement JSON file")
      ->required();
  retrieve->add_flag("--what-if", what_if,
                     "also query the code channel with a draft");

  CLI::App* generate = app.add_subcommand("generate", "generate a function");
  generate->fallthrough();
  generate->add_option("--kb", kb, "knowledge base directory")->required();
  generate->add_option("--repo", repo, "repository root")->required();
  generate->add_option("--requirement", requirement, "requirement JSON file")
      ->required();
  generate->add_option("--out", out_path, "output code file")->required();
  generate->add_flag("--no-local", gen.flags.no_local,
                     "render the local block as None");
  generate->add_flag("--no-global", gen.flags.no_global,
                     "render the global block as None");
  generate->add_flag("--no-libs", gen.flags.no_libs,
                     "render the library block as None");
  generate->add_flag("--no-what-if", gen.no_what_if,
                     "skip the draft-code retrieval channel");

  CLI::App* evaluate = app.add_subcommand("evaluate", "score generated code");
  evaluate->fallthrough();
  evaluate->add_option("--kb", kb, "knowledge base directory")->required();
  evaluate->add_option("--repo", repo, "repository root");
  evaluate->add_option("--pred", pred, "directory of generated *.py")
      ->required();
  evaluate->add_option("--refs", refs, "directory of reference *.py")
      ->required();
  evaluate->add_option("--labels", labels, "reuse label file");
  evaluate->add_option("--report", report, "report output directory")
      ->required();
  evaluate->add_flag("--paper-convention", paper,
                     "print undefined ratios as 0");
  evaluate->add_flag("--no-dataflow", no_dataflow,
                     "drop the dataflow component of CodeBLEU");

  CLI::App* summarize =
      app.add_subcommand("summarize", "summarize one function");
  summarize->fallthrough();
  summarize->add_option("--repo", repo, "repository root")->default_val(".");
  summarize->add_option("--file", file, "repository-relative file")
      ->required();
  summarize->add_option("--function", function, "function name or fqn")
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    Config config = resolve_config(common);
    if (*index) {
      return cmd_index(config, repo, kb,
                       cache.empty() ? std::nullopt
                                     : std::optional<fs::path>(cache),
                       out, err);
    }
    if (*retrieve) return cmd_retrieve(config, kb, requirement, what_if, out);
    if (*generate) {
      gen.kb = kb;
      gen.repo = repo;
      gen.requirement = requirement;
      gen.out = out_path;
      return cmd_generate(config, gen, out);
    }
    if (*evaluate) {
      EvaluateArgs a;
      a.kb = kb;
      if (!repo.empty()) a.repo = fs::path(repo);
      a.pred = pred;
      a.refs = refs;
      if (!labels.empty()) a.labels = fs::path(labels);
      a.report = report;
      a.paper_convention = paper;
      a.no_dataflow = no_dataflow;
      return cmd_evaluate(config, a, out);
    }
    if (*summarize) return cmd_summarize(config, repo, file, function, out);
  } catch (const PromptTooLongError& e) {
    err << "repoaware: error: " << e.what() << "\n";
    return 1;
  } catch (const DegenerateOutputError& e) {
    err << "repoaware: error: " << e.what() << "\n";
    if (!e.raw_output().empty()) {
      err << "--- raw model output ---\n" << e.raw_output() << "\n";
    }
    return 1;
  } catch (const std::exception& e) {
    err << "repoaware: error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace repoaware
