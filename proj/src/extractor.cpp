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

#include "repoaware/extractor.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <system_error>

#include "repoaware/errors.hpp"
#include "repoaware/python/parser.hpp"
#include "repoaware/resources.hpp"

namespace repoaware {

namespace fs = std::filesystem;
using py::Node;
using py::NodeKind;

namespace {

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t n;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      n = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      n = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      n = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + n >= s.size()) return false;
    for (std::size_t k = 1; k <= n; ++k) {
      unsigned char cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    static constexpr std::uint32_t kMin[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[n] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += n + 1;
  }
  return true;
}

bool excluded_dir(const std::string& name,
                  const std::vector<std::string>& excludes) {
  if (!name.empty() && name[0] == '.') return true;
  return std::find(excludes.begin(), excludes.end(), name) != excludes.end();
}

std::string strip_py(std::string_view path) {
  if (path.size() >= 3 && path.substr(path.size() - 3) == ".py") {
    path.remove_suffix(3);
  }
  return std::string(path);
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t slash = path.find('/', start);
    if (slash == std::string_view::npos) slash = path.size();
    if (slash > start) parts.emplace_back(path.substr(start, slash - start));
    start = slash + 1;
  }
  return parts;
}

// Source text from the start of the line holding `node` to its end.
std::string full_lines(const py::Module& module, const Node& node) {
  std::size_t begin = node.begin;
  while (begin > 0 && module.source[begin - 1] != '\n') --begin;
  return module.source.substr(begin, node.end - begin);
}

// Name of the first positional parameter of a def, or "".
std::string first_param(const Node& def) {
  for (const Node& p : def.child(1).children) {
    if (p.detail.empty()) return p.value;
    if (p.detail != "/") return "";
  }
  return "";
}

bool assigns_self_attribute(const Node& init) {
  std::string self = first_param(init);
  if (self.empty()) return false;
  bool found = false;
  auto is_self_attr = [&](const Node& target, auto&& recurse) -> bool {
    if (target.kind == NodeKind::kAttribute) {
      const Node& obj = target.child(0);
      return obj.kind == NodeKind::kName && obj.value == self;
    }
    if (target.kind == NodeKind::kTuple || target.kind == NodeKind::kList ||
        target.kind == NodeKind::kStarred) {
      for (const Node& c : target.children) {
        if (recurse(c, recurse)) return true;
      }
    }
    return false;
  };
  py::walk(py::body_of(init), [&](const Node& n) {
    if (found) return false;
    if (n.kind == NodeKind::kFunctionDef || n.kind == NodeKind::kClassDef ||
        n.kind == NodeKind::kLambda) {
      return false;
    }
    std::size_t targets = 0;
    if (n.kind == NodeKind::kAssign) {
      targets = n.children.size() - 1;
    } else if (n.kind == NodeKind::kAnnAssign ||
               n.kind == NodeKind::kAugAssign) {
      targets = 1;
    } else if (n.kind == NodeKind::kNamedExpr) {
      return true;
    }
    for (std::size_t i = 0; i < targets; ++i) {
      if (is_self_attr(n.children[i], is_self_attr)) found = true;
    }
    return true;
  });
  return found;
}

RawFunction make_raw(const std::string& file_path, const py::Module& module,
                     const Node& def, const std::optional<std::string>& cls) {
  RawFunction f;
  f.fqn = compute_fqn(file_path, cls, def.value);
  f.file_path = file_path;
  f.class_name = cls;
  f.signature = def.detail;
  std::string doc;
  if (py::docstring_of(def, doc)) f.comment = doc;
  f.source = std::string(py::source_segment(module, def));
  f.is_empty = is_empty_body(py::body_of(def));
  return f;
}

}  // namespace

const std::vector<std::string>& default_excludes() {
  static const std::vector<std::string> kDefaults = {
      "__pycache__", "venv", "env", "node_modules", "site-packages"};
  return kDefaults;
}

std::optional<std::string> read_source(const fs::path& path,
                                       std::string& reason) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    reason = "cannot open file";
    return std::nullopt;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string raw = ss.str();
  if (!valid_utf8(raw)) {
    reason = "not valid UTF-8";
    return std::nullopt;
  }
  std::string text;
  text.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '\r') {
      text.push_back('\n');
      if (i + 1 < raw.size() && raw[i + 1] == '\n') ++i;
    } else {
      text.push_back(raw[i]);
    }
  }
  return text;
}

ParsedRepository parse_repository(const fs::path& root,
                                  const std::vector<std::string>& excludes) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw NotFoundError(root.string());
  std::vector<std::string> paths;
  fs::recursive_directory_iterator it(root, ec), end;
  if (ec) throw IoError(root.string(), ec.message());
  for (; it != end; it.increment(ec)) {
    if (ec) throw IoError(root.string(), ec.message());
    const fs::directory_entry& entry = *it;
    std::string name = entry.path().filename().string();
    if (entry.is_directory(ec)) {
      if (excluded_dir(name, excludes)) it.disable_recursion_pending();
      continue;
    }
    if (entry.path().extension() == ".py" && entry.is_regular_file(ec)) {
      paths.push_back(fs::relative(entry.path(), root).generic_string());
    }
  }
  std::sort(paths.begin(), paths.end());

  ParsedRepository repo;
  repo.all_paths = paths;
  for (const std::string& rel : paths) {
    std::string reason;
    std::optional<std::string> text = read_source(root / rel, reason);
    if (!text) {
      repo.skipped.push_back({rel, reason});
      continue;
    }
    try {
      repo.files.push_back({rel, py::parse(std::move(*text))});
    } catch (const py::SyntaxError& e) {
      repo.skipped.push_back({rel, e.what()});
    }
  }
  return repo;
}

bool is_empty_body(const Node& block) {
  for (const Node& stmt : block.children) {
    if (stmt.kind == NodeKind::kPass) continue;
    if (stmt.kind == NodeKind::kExprStmt) {
      NodeKind k = stmt.child(0).kind;
      if (k == NodeKind::kStr || k == NodeKind::kEllipsis) continue;
    }
    return false;
  }
  return true;
}

std::vector<RawFunction> extract_functions(const std::string& file_path,
                                           const py::Module& module) {
  std::vector<RawFunction> out;
  for (const Node& stmt : module.root.children) {
    if (stmt.kind == NodeKind::kFunctionDef) {
      out.push_back(make_raw(file_path, module, stmt, std::nullopt));
    } else if (stmt.kind == NodeKind::kClassDef) {
      for (const Node& member : py::body_of(stmt).children) {
        if (member.kind == NodeKind::kFunctionDef) {
          out.push_back(make_raw(file_path, module, member, stmt.value));
        }
      }
    }
  }
  return out;
}

std::string module_path(std::string_view file_path) {
  std::vector<std::string> parts = split_path(strip_py(file_path));
  if (!parts.empty() && parts.back() == "__init__") parts.pop_back();
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += '.';
    out += p;
  }
  return out;
}

std::string compute_fqn(std::string_view file_path,
                        const std::optional<std::string>& class_name,
                        std::string_view name) {
  std::string fqn = module_path(file_path);
  if (class_name) {
    if (!fqn.empty()) fqn += '.';
    fqn += *class_name;
  }
  if (!fqn.empty()) fqn += '.';
  fqn += name;
  return fqn;
}

const std::set<std::string, std::less<>>& stdlib_modules() {
  static const std::set<std::string, std::less<>> kNames = [] {
    std::set<std::string, std::less<>> names;
    std::istringstream in{std::string(resource("stdlib_modules.txt"))};
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line[0] != '#') names.insert(line);
    }
    return names;
  }();
  return kNames;
}

bool is_stdlib_module(std::string_view top_level) {
  return stdlib_modules().count(top_level) > 0;
}

std::set<std::string> repo_local_modules(const std::vector<std::string>& paths) {
  std::set<std::string> packages;  // directories holding __init__.py
  for (const std::string& p : paths) {
    std::size_t slash = p.rfind('/');
    if (slash != std::string::npos && p.substr(slash + 1) == "__init__.py") {
      packages.insert(p.substr(0, slash));
    }
  }
  std::set<std::string> names;
  for (const std::string& p : paths) {
    std::vector<std::string> parts = split_path(p);
    if (parts.empty()) continue;
    names.insert(parts.size() == 1 ? strip_py(parts[0]) : parts[0]);
    // Climb to the top-most package that contains the file.
    std::string dir = p.substr(0, p.rfind('/') == std::string::npos
                                      ? 0
                                      : p.rfind('/'));
    std::string top;
    while (!dir.empty() && packages.count(dir)) {
      std::size_t s = dir.rfind('/');
      top = s == std::string::npos ? dir : dir.substr(s + 1);
      dir = s == std::string::npos ? "" : dir.substr(0, s);
    }
    if (!top.empty()) {
      names.insert(top);
    } else {
      std::string stem = strip_py(parts.back());
      if (stem != "__init__") names.insert(stem);
    }
  }
  return names;
}

std::set<std::string> imported_top_levels(const py::Module& module) {
  std::set<std::string> names;
  auto top = [](const std::string& dotted) {
    return dotted.substr(0, dotted.find('.'));
  };
  py::walk(module.root, [&](const Node& n) {
    if (n.kind == NodeKind::kImport) {
      for (const Node& alias : n.children) names.insert(top(alias.value));
      return false;
    }
    if (n.kind == NodeKind::kImportFrom) {
      if (n.level == 0) names.insert(top(n.value));
      return false;
    }
    return true;
  });
  return names;
}

std::set<std::string> extract_third_party_imports(
    const std::string& /*file_path*/, const py::Module& module,
    const std::set<std::string>& repo_local) {
  std::set<std::string> out;
  for (const std::string& name : imported_top_levels(module)) {
    if (!is_stdlib_module(name) && !repo_local.count(name)) out.insert(name);
  }
  return out;
}

LibraryBase build_library_base(const ParsedRepository& repo) {
  std::set<std::string> local = repo_local_modules(repo.all_paths);
  LibraryBase libs;
  for (const ParsedFile& f : repo.files) {
    for (const std::string& name :
         extract_third_party_imports(f.file_path, f.module, local)) {
      libs.add(name);
    }
  }
  return libs;
}

LibraryBase build_library_base(const fs::path& root,
                               const std::vector<std::string>& excludes) {
  return build_library_base(parse_repository(root, excludes));
}

LocalContext mine_local_context(const std::string& file_path,
                                const py::Module& module,
                                const FunctionBase& base,
                                const LocalKnowledgeConfig& config) {
  LocalContext ctx;
  ctx.file_path = file_path;
  ctx.enabled = config;
  std::vector<RawFunction> raws = extract_functions(file_path, module);
  for (const RawFunction& raw : raws) {
    const FunctionRecord* rec = base.find(raw.fqn);
    if (rec == nullptr || rec->file_path != file_path) {
      throw ConsistencyError(file_path + ": function " + raw.fqn +
                             " is not in the function base");
    }
    if (config.functions) {
      ctx.local_functions.push_back(
          {rec->fqn, rec->summary, rec->signature, rec->class_name});
    }
  }
  if (config.class_attrs) {
    for (const Node& stmt : module.root.children) {
      if (stmt.kind != NodeKind::kClassDef) continue;
      for (const Node& member : py::body_of(stmt).children) {
        if (member.kind == NodeKind::kFunctionDef &&
            member.value == "__init__" && assigns_self_attribute(member)) {
          ctx.class_init_sources.push_back(
              {stmt.value, full_lines(module, member)});
        }
      }
    }
  }
  if (config.module_fqn) ctx.module_fqn = module_path(file_path);
  if (config.module_vars) {
    std::string vars;
    for (const Node& stmt : module.root.children) {
      if (stmt.kind == NodeKind::kAssign || stmt.kind == NodeKind::kAnnAssign ||
          stmt.kind == NodeKind::kAugAssign ||
          stmt.kind == NodeKind::kTypeAlias) {
        if (!vars.empty()) vars += '\n';
        vars += py::source_segment(module, stmt);
      }
    }
    ctx.module_variables = vars.empty() ? "None" : vars;
  }
  return ctx;
}

}  // namespace repoaware
