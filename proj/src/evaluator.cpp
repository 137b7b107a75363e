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

#include "repoaware/evaluator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "repoaware/errors.hpp"
#include "repoaware/python/lexer.hpp"
#include "repoaware/python/parser.hpp"

namespace repoaware {

using py::Node;
using py::NodeKind;

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string join(const std::vector<std::string>& parts, std::size_t n,
                 char sep) {
  std::string out;
  for (std::size_t i = 0; i < n && i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

bool is_string_kind(NodeKind k) {
  return k == NodeKind::kStr || k == NodeKind::kBytes ||
         k == NodeKind::kFString;
}

bool is_lone_string(const Node& n) {
  return n.kind == NodeKind::kExprStmt && n.children.size() == 1 &&
         is_string_kind(n.children[0].kind);
}

// "a.b.c" for a chain of attribute accesses on a name, else empty.
std::string dotted_name(const Node& n) {
  if (n.kind == NodeKind::kName) return n.value;
  if (n.kind == NodeKind::kAttribute) {
    std::string base = dotted_name(n.child(0));
    if (!base.empty()) return base + "." + n.value;
  }
  return {};
}

// Package that a relative import of the given level starts from.
std::vector<std::string> relative_base(const std::string& file_path,
                                       int level) {
  std::string mod = module_path(file_path);
  std::vector<std::string> parts =
      mod.empty() ? std::vector<std::string>{} : split(mod, '.');
  std::string_view fp = file_path;
  bool is_init = fp.size() >= 11 && fp.substr(fp.size() - 11) == "__init__.py";
  int drop = level - (is_init ? 1 : 0);
  for (int i = 0; i < drop && !parts.empty(); ++i) parts.pop_back();
  return parts;
}

struct ImportBinding {
  std::string bound;  // name visible in the code
  std::string target;  // dotted path it stands for
};

std::vector<ImportBinding> import_bindings(const Node& root,
                                           const std::string& file_path) {
  std::vector<ImportBinding> out;
  py::walk(root, [&](const Node& n) {
    if (n.kind == NodeKind::kImport) {
      for (const Node& a : n.children) {
        if (!a.detail.empty()) {
          out.push_back({a.detail, a.value});
        } else {
          std::string first = a.value.substr(0, a.value.find('.'));
          out.push_back({first, first});
        }
      }
    } else if (n.kind == NodeKind::kImportFrom) {
      std::string module = n.value;
      if (n.level > 0) {
        std::vector<std::string> base = relative_base(file_path, n.level);
        std::string prefix = join(base, base.size(), '.');
        module = prefix.empty() ? module
                 : module.empty() ? prefix
                                  : prefix + "." + module;
      }
      for (const Node& a : n.children) {
        if (a.value == "*") continue;
        std::string target = module.empty() ? a.value : module + "." + a.value;
        out.push_back({a.detail.empty() ? a.value : a.detail, target});
      }
    }
    return true;
  });
  return out;
}

// True when the path names a function of the base, or a class holding one,
// declared outside the target file.
bool resolves_globally(const std::string& path, const FunctionBase& base,
                       const std::string& target_file) {
  if (const FunctionRecord* r = base.find(path)) {
    return r->file_path != target_file;
  }
  std::string prefix = path + ".";
  for (const FunctionRecord& r : base.records()) {
    if (r.class_name && r.file_path != target_file &&
        r.fqn.compare(0, prefix.size(), prefix) == 0 &&
        r.fqn.size() > prefix.size() &&
        r.fqn.find('.', prefix.size()) == std::string::npos) {
      return true;
    }
  }
  return false;
}

std::set<std::string> third_party_of(const py::Module& m,
                                     const std::set<std::string>& repo) {
  std::set<std::string> out;
  for (const std::string& name : imported_top_levels(m)) {
    if (!is_stdlib_module(name) && !repo.count(name)) out.insert(name);
  }
  return out;
}

}  // namespace

std::set<std::string> repo_modules_of(const FunctionBase& base) {
  std::vector<std::string> paths;
  for (const FunctionRecord& r : base.records()) paths.push_back(r.file_path);
  return repo_local_modules(paths);
}

ReuseDetection detect_reuse(const std::string& code, const LocalContext& local,
                            const FunctionBase& base, const LibraryBase& libs) {
  (void)libs;
  ReuseDetection out;
  py::Module m;
  try {
    m = py::parse(code);
  } catch (const py::SyntaxError&) {
    out.parse_failed = true;
    return out;
  }

  std::set<std::string, std::less<>> local_names;
  for (const LocalFunction& f : local.local_functions) {
    local_names.insert(f.fqn.substr(f.fqn.rfind('.') + 1));
  }
  std::set<std::string, std::less<>> defined;
  py::walk(m.root, [&](const Node& n) {
    if (n.kind == NodeKind::kFunctionDef) defined.insert(n.value);
    return true;
  });

  std::vector<ImportBinding> imports = import_bindings(m.root, local.file_path);
  std::map<std::string, std::string, std::less<>> alias;
  for (const ImportBinding& b : imports) {
    alias[b.bound] = b.target;
    if (resolves_globally(b.target, base, local.file_path)) {
      out.reuse.global = true;
    }
  }

  py::walk(m.root, [&](const Node& n) {
    if (n.kind != NodeKind::kCall) return true;
    const Node& func = n.child(0);
    if (func.kind == NodeKind::kName) {
      if (local_names.count(func.value) && !defined.count(func.value)) {
        out.reuse.local = true;
      }
    } else if (func.kind == NodeKind::kAttribute) {
      if (local_names.count(func.value)) out.reuse.local = true;
    }
    std::string dotted = dotted_name(func);
    if (!dotted.empty()) {
      std::size_t dot = dotted.find('.');
      auto it = alias.find(dotted.substr(0, dot));
      if (it != alias.end()) {
        std::string full = it->second;
        if (dot != std::string::npos) full += dotted.substr(dot);
        if (resolves_globally(full, base, local.file_path)) {
          out.reuse.global = true;
        }
      }
    }
    return true;
  });

  out.reuse.library = !third_party_of(m, repo_modules_of(base)).empty();
  return out;
}

double f1(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

AspectMetrics metrics_from_counts(const ConfusionCounts& c) {
  AspectMetrics m;
  m.counts = c;
  auto ratio = [](std::size_t num, std::size_t den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  m.precision = ratio(c.tp, c.tp + c.fp);
  m.recall = ratio(c.tp, c.tp + c.fn);
  // Same as the harmonic mean whenever both ratios exist.
  m.f1 = ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn);
  m.accuracy = ratio(c.tp + c.tn, c.total());
  return m;
}

ReuseScores score_reuse(const std::vector<ReuseVector>& predictions,
                        const std::vector<ReuseVector>& labels) {
  if (predictions.size() != labels.size()) {
    throw ContractError("score_reuse: " + std::to_string(predictions.size()) +
                        " predictions but " + std::to_string(labels.size()) +
                        " labels");
  }
  ConfusionCounts counts[3];
  auto tally = [](ConfusionCounts& c, bool pred, bool label) {
    if (pred && label) ++c.tp;
    else if (pred) ++c.fp;
    else if (label) ++c.fn;
    else ++c.tn;
  };
  for (std::size_t i = 0; i < labels.size(); ++i) {
    tally(counts[0], predictions[i].local, labels[i].local);
    tally(counts[1], predictions[i].global, labels[i].global);
    tally(counts[2], predictions[i].library, labels[i].library);
  }
  return {metrics_from_counts(counts[0]), metrics_from_counts(counts[1]),
          metrics_from_counts(counts[2])};
}

std::set<std::string> third_party_names(
    const std::string& code, const std::set<std::string>& repo_modules) {
  return third_party_of(py::parse(code), repo_modules);
}

std::optional<double> library_coverage(
    const std::string& code, const LibraryBase& libs,
    const std::set<std::string>& repo_modules) {
  std::set<std::string> used;
  try {
    used = third_party_names(code, repo_modules);
  } catch (const py::SyntaxError&) {
    return std::nullopt;
  }
  if (used.empty()) return 1.0;
  std::size_t hit = 0;
  for (const std::string& name : used) hit += libs.contains(name) ? 1 : 0;
  return static_cast<double>(hit) / static_cast<double>(used.size());
}

std::size_t count_loc(const std::string& code) {
  std::vector<py::Token> tokens;
  std::vector<std::pair<std::size_t, std::size_t>> strings;
  try {
    tokens = py::tokenize(code);
    py::Module m = py::parse(code);
    py::walk(m.root, [&](const Node& n) {
      if (is_lone_string(n)) strings.emplace_back(n.begin, n.end);
      return true;
    });
  } catch (const py::SyntaxError&) {
    // Unparseable: fall back to a plain line scan.
    std::size_t loc = 0;
    for (const std::string& line : split(code, '\n')) {
      std::size_t i = line.find_first_not_of(" \t\r\f");
      if (i != std::string::npos && line[i] != '#') ++loc;
    }
    return loc;
  }
  std::set<std::uint32_t> lines;
  for (const py::Token& t : tokens) {
    switch (t.kind) {
      case py::TokenKind::kNewline:
      case py::TokenKind::kNl:
      case py::TokenKind::kComment:
      case py::TokenKind::kIndent:
      case py::TokenKind::kDedent:
      case py::TokenKind::kEndMarker:
        continue;
      default:
        break;
    }
    bool in_doc = std::any_of(strings.begin(), strings.end(), [&](auto& r) {
      return t.begin >= r.first && t.end <= r.second;
    });
    if (in_doc) continue;
    for (std::uint32_t l = t.line; l <= t.end_line; ++l) lines.insert(l);
  }
  return lines.size();
}

// CodeBLEU.

CodeBleuWeights CodeBleuWeights::without_dataflow() {
  return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0};
}

void validate_weights(const CodeBleuWeights& w) {
  for (double x : {w.ngram, w.weighted_ngram, w.syntax, w.dataflow}) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw ContractError("codebleu weights must lie in [0,1]");
    }
  }
  double sum = w.ngram + w.weighted_ngram + w.syntax + w.dataflow;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ContractError("codebleu weights must sum to 1, got " +
                        std::to_string(sum));
  }
}

namespace {

using Tokens = std::vector<std::string>;
using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

Tokens whitespace_tokens(std::string_view s) {
  Tokens out;
  std::size_t i = 0;
  auto space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  };
  while (i < s.size()) {
    while (i < s.size() && space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !space(s[j])) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

NgramCounts ngram_counts(const Tokens& t, std::size_t n) {
  NgramCounts out;
  if (t.size() < n) return out;
  for (std::size_t i = 0; i + n <= t.size(); ++i) {
    ++out[Tokens(t.begin() + static_cast<std::ptrdiff_t>(i),
                 t.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return out;
}

struct Fraction {
  double num = 0.0;
  double den = 0.0;
};

// Shared tail of both BLEU variants: brevity penalty, method1 smoothing
// (epsilon 0.1 on zero numerators), uniform weights over orders 1 to 4.
double bleu_from(const std::array<Fraction, 4>& p, std::size_t hyp_len,
                 std::size_t ref_len) {
  if (p[0].num == 0.0) return 0.0;
  double bp = 1.0;
  if (hyp_len == 0) {
    bp = 0.0;
  } else if (hyp_len <= ref_len) {
    bp = std::exp(1.0 - static_cast<double>(ref_len) /
                            static_cast<double>(hyp_len));
  }
  double s = 0.0;
  for (const Fraction& f : p) {
    double num = f.num == 0.0 ? 0.1 : f.num;
    s += 0.25 * std::log(num / f.den);
  }
  return bp * std::exp(s);
}

double bleu4(const Tokens& ref, const Tokens& hyp) {
  std::array<Fraction, 4> p;
  for (std::size_t n = 1; n <= 4; ++n) {
    NgramCounts h = ngram_counts(hyp, n);
    NgramCounts r = ngram_counts(ref, n);
    std::size_t clipped = 0, total = 0;
    for (const auto& [g, c] : h) {
      auto it = r.find(g);
      clipped += std::min(c, it == r.end() ? 0 : it->second);
      total += c;
    }
    p[n - 1] = {static_cast<double>(clipped),
                static_cast<double>(std::max<std::size_t>(1, total))};
  }
  return bleu_from(p, hyp.size(), ref.size());
}

bool codebleu_keyword(std::string_view t) {
  return py::is_keyword(t) || t == "match" || t == "case" || t == "type";
}

// Recall-oriented variant: unigrams weighted 1 for keywords, 0.2 otherwise.
double weighted_bleu4(const Tokens& ref, const Tokens& hyp) {
  std::array<Fraction, 4> p;
  for (std::size_t n = 1; n <= 4; ++n) {
    NgramCounts h = ngram_counts(hyp, n);
    NgramCounts r = ngram_counts(ref, n);
    double num = 0.0, den = 0.0;
    for (const auto& [g, c] : r) {
      auto it = h.find(g);
      std::size_t clipped = std::min(c, it == h.end() ? 0 : it->second);
      double w = n == 1 ? (codebleu_keyword(g[0]) ? 1.0 : 0.2) : 1.0;
      num += static_cast<double>(clipped) * w;
      den += static_cast<double>(c) * w;
    }
    p[n - 1] = {num, std::max(1.0, den)};
  }
  // The reference scorer measures the (tokens, weights) pair instead of the
  // token list here, so its reference length is always 2. Kept for parity.
  constexpr std::size_t kReferenceQuirkLength = 2;
  return bleu_from(p, hyp.size(), kReferenceQuirkLength);
}

constexpr int kSubtreeDepth = 3;

void subtree_text(const Node& n, int depth, std::string& out) {
  out += '(';
  out += py::kind_name(n.kind);
  if (depth > 1) {
    for (const Node& c : n.children) {
      if (is_lone_string(c)) continue;
      out += ' ';
      subtree_text(c, depth - 1, out);
    }
  }
  out += ')';
}

void collect_subtrees(const Node& n, bool is_root, std::vector<std::string>& out) {
  if (is_lone_string(n)) return;
  if (is_root || !n.children.empty()) {
    std::string s;
    subtree_text(n, kSubtreeDepth, s);
    out.push_back(std::move(s));
  }
  for (const Node& c : n.children) collect_subtrees(c, false, out);
}

// Share of candidate subtrees (depth at most 3) that also occur in the
// reference.
double syntax_match(const py::Module& cand, const py::Module& ref) {
  std::vector<std::string> c, r;
  collect_subtrees(cand.root, true, c);
  collect_subtrees(ref.root, true, r);
  std::unordered_set<std::string> rs(r.begin(), r.end());
  std::size_t hit = 0;
  for (const std::string& s : c) hit += rs.count(s);
  return static_cast<double>(hit) / static_cast<double>(c.size());
}

struct FlowItem {
  std::size_t pos = 0;
  std::size_t id = 0;
  std::string var;
  bool computed = false;  // computedFrom, else comesFrom
  std::vector<std::string> parents;
  std::vector<std::size_t> parent_ids;
};

// Def-use pairs in the spirit of the reference data-flow graph: every
// variable occurrence either comes from its last definition or is computed
// from the names on the right-hand side.
class FlowBuilder {
 public:
  std::vector<FlowItem> build(const Node& root) {
    visit(root);
    std::sort(items_.begin(), items_.end(),
              [](const FlowItem& a, const FlowItem& b) { return a.pos < b.pos; });
    std::set<std::size_t> keep;
    for (const FlowItem& it : items_) {
      if (!it.parents.empty()) {
        keep.insert(it.id);
        keep.insert(it.parent_ids.begin(), it.parent_ids.end());
      }
    }
    std::vector<FlowItem> out;
    for (FlowItem& it : items_) {
      if (keep.count(it.id)) out.push_back(std::move(it));
    }
    return out;
  }

 private:
  struct Use {
    std::string name;
    std::size_t id;
  };

  std::size_t add(std::size_t pos, std::string var, bool computed,
                  std::vector<Use> parents) {
    FlowItem it;
    it.pos = pos;
    it.id = items_.size();
    it.var = std::move(var);
    it.computed = computed;
    for (Use& u : parents) {
      it.parents.push_back(std::move(u.name));
      it.parent_ids.push_back(u.id);
    }
    items_.push_back(std::move(it));
    return items_.back().id;
  }

  // Records a read; returns the uses it produced.
  std::vector<Use> load(const Node& n) {
    std::vector<Use> uses;
    load_into(n, uses);
    return uses;
  }

  void load_into(const Node& n, std::vector<Use>& uses) {
    if (n.kind == NodeKind::kName) {
      auto it = last_def_.find(n.value);
      std::size_t id;
      if (it != last_def_.end()) {
        id = add(n.begin, n.value, false, {{n.value, it->second}});
      } else {
        id = add(n.begin, n.value, false, {});
      }
      last_def_[n.value] = id;
      uses.push_back({n.value, id});
      return;
    }
    if (n.kind == NodeKind::kLambda || n.kind == NodeKind::kListComp ||
        n.kind == NodeKind::kSetComp || n.kind == NodeKind::kDictComp ||
        n.kind == NodeKind::kGeneratorExp || n.kind == NodeKind::kNamedExpr) {
      visit(n);
      return;
    }
    if (n.kind == NodeKind::kKeyword) {
      for (const Node& c : n.children) load_into(c, uses);
      return;
    }
    for (const Node& c : n.children) load_into(c, uses);
  }

  void bind(const Node& target, const std::vector<Use>& from) {
    switch (target.kind) {
      case NodeKind::kName:
        last_def_[target.value] = add(target.begin, target.value, true, from);
        break;
      case NodeKind::kTuple:
      case NodeKind::kList:
      case NodeKind::kStarred:
        for (const Node& c : target.children) bind(c, from);
        break;
      default:
        load(target);
        break;
    }
  }

  void define(std::size_t pos, const std::string& name) {
    last_def_[name] = add(pos, name, false, {});
  }

  void visit_params(const Node& params) {
    for (const Node& p : params.children) {
      if (p.children.size() > 1 && !p.child(1).empty()) load(p.child(1));
    }
    for (const Node& p : params.children) {
      if (!p.value.empty()) define(p.begin, p.value);
    }
  }

  void visit_comprehension(const Node& n, std::size_t head) {
    for (std::size_t i = head; i < n.children.size(); ++i) {
      const Node& c = n.child(i);
      std::vector<Use> it = load(c.child(1));
      bind(c.child(0), it);
      for (std::size_t k = 2; k < c.children.size(); ++k) load(c.child(k));
    }
    for (std::size_t i = 0; i < head; ++i) load(n.child(i));
  }

  void visit(const Node& n) {
    switch (n.kind) {
      case NodeKind::kAssign: {
        std::vector<Use> from = load(n.children.back());
        for (std::size_t i = 0; i + 1 < n.children.size(); ++i) {
          bind(n.child(i), from);
        }
        return;
      }
      case NodeKind::kAugAssign: {
        std::vector<Use> from = load(n.child(1));
        std::vector<Use> self = load(n.child(0));
        from.insert(from.end(), self.begin(), self.end());
        bind(n.child(0), from);
        return;
      }
      case NodeKind::kAnnAssign:
        if (n.children.size() > 2) bind(n.child(0), load(n.child(2)));
        return;
      case NodeKind::kNamedExpr:
        bind(n.child(0), load(n.child(1)));
        return;
      case NodeKind::kFor: {
        bind(n.child(0), load(n.child(1)));
        for (std::size_t i = 2; i < n.children.size(); ++i) visit(n.child(i));
        return;
      }
      case NodeKind::kWithItem:
        if (!n.child(1).empty()) {
          bind(n.child(1), load(n.child(0)));
        } else {
          load(n.child(0));
        }
        return;
      case NodeKind::kFunctionDef:
        for (const Node& d : n.child(0).children) load(d);
        if (!n.child(2).empty()) load(n.child(2));
        visit_params(n.child(1));
        visit(n.child(3));
        return;
      case NodeKind::kLambda:
        visit_params(n.child(0));
        load(n.child(1));
        return;
      case NodeKind::kClassDef:
        for (const Node& d : n.child(0).children) load(d);
        load(n.child(1));
        visit(n.child(2));
        return;
      case NodeKind::kExceptHandler: {
        std::vector<Use> from;
        if (!n.child(0).empty()) from = load(n.child(0));
        if (!n.value.empty()) {
          last_def_[n.value] = add(n.begin, n.value, true, from);
        }
        visit(n.child(1));
        return;
      }
      case NodeKind::kListComp:
      case NodeKind::kSetComp:
      case NodeKind::kGeneratorExp:
        visit_comprehension(n, 1);
        return;
      case NodeKind::kDictComp:
        visit_comprehension(n, 2);
        return;
      case NodeKind::kImport:
      case NodeKind::kImportFrom:
        for (const Node& a : n.children) {
          std::string name = a.detail.empty() ? a.value : a.detail;
          if (name != "*") define(a.begin, name.substr(0, name.find('.')));
        }
        return;
      case NodeKind::kGlobal:
      case NodeKind::kNonlocal:
      case NodeKind::kDelete:
        return;
      case NodeKind::kModule:
      case NodeKind::kBlock:
      case NodeKind::kIf:
      case NodeKind::kElse:
      case NodeKind::kWhile:
      case NodeKind::kWith:
      case NodeKind::kTry:
      case NodeKind::kFinally:
      case NodeKind::kMatch:
      case NodeKind::kMatchCase:
        for (const Node& c : n.children) {
          if (is_statement_container(c.kind)) {
            visit(c);
          } else {
            load(c);
          }
        }
        return;
      default:
        if (is_lone_string(n)) return;
        load(n);
        return;
    }
  }

  static bool is_statement_container(NodeKind k) {
    switch (k) {
      case NodeKind::kName:
      case NodeKind::kAttribute:
      case NodeKind::kSubscript:
      case NodeKind::kCall:
      case NodeKind::kBinOp:
      case NodeKind::kBoolOp:
      case NodeKind::kUnaryOp:
      case NodeKind::kCompare:
      case NodeKind::kIfExp:
      case NodeKind::kTuple:
      case NodeKind::kList:
      case NodeKind::kDict:
      case NodeKind::kSet:
      case NodeKind::kStr:
      case NodeKind::kNumber:
      case NodeKind::kAwait:
        return false;
      default:
        return true;
    }
  }

  std::vector<FlowItem> items_;
  std::unordered_map<std::string, std::size_t> last_def_;
};

struct NormalizedFlow {
  std::string var;
  bool computed;
  std::vector<std::string> parents;

  bool operator==(const NormalizedFlow&) const = default;
};

// Variables renamed var_0, var_1, ... in order of first appearance.
std::vector<NormalizedFlow> normalize(const std::vector<FlowItem>& items) {
  std::unordered_map<std::string, std::string> names;
  auto norm = [&](const std::string& v) {
    auto it = names.find(v);
    if (it != names.end()) return it->second;
    std::string n = "var_" + std::to_string(names.size());
    names.emplace(v, n);
    return n;
  };
  std::vector<NormalizedFlow> out;
  for (const FlowItem& it : items) {
    NormalizedFlow f;
    for (const std::string& p : it.parents) f.parents.push_back(norm(p));
    f.var = norm(it.var);
    f.computed = it.computed;
    out.push_back(std::move(f));
  }
  return out;
}

// Fraction of reference flows matched by candidate flows, each candidate
// flow used once. Empty when the reference has none.
std::optional<double> dataflow_match(const py::Module& cand,
                                     const py::Module& ref) {
  std::vector<NormalizedFlow> r = normalize(FlowBuilder().build(ref.root));
  if (r.empty()) return std::nullopt;
  std::vector<NormalizedFlow> c = normalize(FlowBuilder().build(cand.root));
  std::size_t hit = 0;
  for (const NormalizedFlow& f : r) {
    auto it = std::find(c.begin(), c.end(), f);
    if (it != c.end()) {
      ++hit;
      c.erase(it);
    }
  }
  return static_cast<double>(hit) / static_cast<double>(r.size());
}

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n\f\v");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n\f\v");
  return s.substr(b, e - b + 1);
}

}  // namespace

CodeBleuScore codebleu(const std::string& candidate,
                       const std::string& reference,
                       const CodeBleuWeights& weights) {
  validate_weights(weights);
  std::string cand = strip(candidate);
  std::string ref = strip(reference);
  CodeBleuScore s;
  Tokens ct = whitespace_tokens(cand);
  Tokens rt = whitespace_tokens(ref);
  s.ngram = bleu4(rt, ct);
  s.weighted_ngram = weighted_bleu4(rt, ct);
  try {
    py::Module cm = py::parse(cand);
    py::Module rm = py::parse(ref);
    s.syntax = syntax_match(cm, rm);
    std::optional<double> df = dataflow_match(cm, rm);
    s.dataflow_degenerate = !df.has_value();
    s.dataflow = df.value_or(1.0);
  } catch (const py::SyntaxError&) {
    s.parse_failed = true;
    s.syntax = 0.0;
    s.dataflow = 0.0;
  }
  s.score = weights.ngram * s.ngram + weights.weighted_ngram * s.weighted_ngram +
            weights.syntax * s.syntax + weights.dataflow * s.dataflow;
  s.score = std::clamp(s.score, 0.0, 1.0);
  return s;
}

EvalReport evaluate_batch(const std::vector<EvalSample>& samples,
                          const FunctionBase& base, const LibraryBase& libs,
                          const EvalOptions& options) {
  if (samples.empty()) throw ContractError("evaluate_batch: no samples");
  validate_weights(options.weights);
  std::size_t labeled = 0;
  for (const EvalSample& s : samples) labeled += s.label ? 1 : 0;
  if (labeled != 0 && labeled != samples.size()) {
    throw ContractError("evaluate_batch: " + std::to_string(labeled) + " of " +
                        std::to_string(samples.size()) +
                        " samples carry labels");
  }

  std::set<std::string> repo = repo_modules_of(base);
  EvalReport report;
  report.samples.resize(samples.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(samples.size());
  auto worker = [&] {
    for (std::size_t i; (i = next++) < samples.size();) {
      try {
        const EvalSample& s = samples[i];
        SampleResult& r = report.samples[i];
        r.id = s.id;
        r.detection = detect_reuse(s.generated, s.local, base, libs);
        r.library_coverage = library_coverage(s.generated, libs, repo);
        r.loc = count_loc(s.generated);
        r.codebleu = codebleu(s.generated, s.reference, options.weights);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::size_t n = std::clamp<std::size_t>(options.max_in_flight, 1,
                                          samples.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  double loc_sum = 0.0, cov_sum = 0.0;
  std::size_t cov_n = 0;
  std::vector<ReuseVector> predictions, labels;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const SampleResult& r = report.samples[i];
    const ReuseVector& p = r.detection.reuse;
    predictions.push_back(p);
    if (samples[i].label) labels.push_back(*samples[i].label);
    report.predicted_positive[0] += p.local;
    report.predicted_positive[1] += p.global;
    report.predicted_positive[2] += p.library;
    report.parse_failures += r.detection.parse_failed;
    loc_sum += static_cast<double>(r.loc);
    if (r.library_coverage) {
      cov_sum += *r.library_coverage;
      ++cov_n;
    }
    report.codebleu.score += r.codebleu.score;
    report.codebleu.ngram += r.codebleu.ngram;
    report.codebleu.weighted_ngram += r.codebleu.weighted_ngram;
    report.codebleu.syntax += r.codebleu.syntax;
    report.codebleu.dataflow += r.codebleu.dataflow;
    report.codebleu.parse_failed |= r.codebleu.parse_failed;
    report.codebleu.dataflow_degenerate |= r.codebleu.dataflow_degenerate;
  }
  double count = static_cast<double>(samples.size());
  report.avg_loc = loc_sum / count;
  if (cov_n) report.library_coverage = cov_sum / static_cast<double>(cov_n);
  report.codebleu.score /= count;
  report.codebleu.ngram /= count;
  report.codebleu.weighted_ngram /= count;
  report.codebleu.syntax /= count;
  report.codebleu.dataflow /= count;
  if (labeled) report.reuse = score_reuse(predictions, labels);
  return report;
}

namespace {

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string ratio_text(const std::optional<double>& v, bool paper) {
  if (v) return fixed4(*v);
  return paper ? fixed4(0.0) : "n/a";
}

nlohmann::ordered_json ratio_json(const std::optional<double>& v, bool paper) {
  if (v) return *v;
  if (paper) return 0.0;
  return nullptr;
}

const char* const kAspects[] = {"local", "global", "library"};

const AspectMetrics& aspect(const ReuseScores& s, int i) {
  return i == 0 ? s.local : i == 1 ? s.global : s.library;
}

void pad(std::string& line, std::size_t width) {
  if (line.size() < width) line.append(width - line.size(), ' ');
}

}  // namespace

std::string render_report(const EvalReport& report, bool paper_convention) {
  std::string out;
  out += "samples: " + std::to_string(report.samples.size()) + "\n";
  out += "parse failures: " + std::to_string(report.parse_failures) + "\n";

  out += "\n[reuse]\n";
  if (report.reuse) {
    out += "aspect   tp    fp    tn    fn    precision recall    f1        accuracy\n";
    for (int i = 0; i < 3; ++i) {
      const AspectMetrics& m = aspect(*report.reuse, i);
      std::string line = kAspects[i];
      for (std::size_t v : {m.counts.tp, m.counts.fp, m.counts.tn, m.counts.fn}) {
        pad(line, line.size() < 9 ? 9 : line.size() + 1);
        std::string num = std::to_string(v);
        line += num;
        line.append(num.size() < 5 ? 5 - num.size() : 0, ' ');
      }
      for (const auto& r : {m.precision, m.recall, m.f1, m.accuracy}) {
        line += ' ';
        std::string t = ratio_text(r, paper_convention);
        line += t;
        line.append(t.size() < 9 ? 9 - t.size() : 0, ' ');
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out += line + "\n";
    }
  } else {
    out += "no labels; predicted positives:\n";
    for (int i = 0; i < 3; ++i) {
      out += std::string(kAspects[i]) + ": " +
             std::to_string(report.predicted_positive[i]) + "\n";
    }
  }

  out += "\n[library coverage]\n";
  out += "mean: " + ratio_text(report.library_coverage, paper_convention) + "\n";

  out += "\n[loc]\n";
  out += "average: " + fixed4(report.avg_loc) + "\n";

  out += "\n[codebleu]\n";
  out += "score: " + fixed4(report.codebleu.score) + "\n";
  out += "ngram: " + fixed4(report.codebleu.ngram) + "\n";
  out += "weighted_ngram: " + fixed4(report.codebleu.weighted_ngram) + "\n";
  out += "syntax: " + fixed4(report.codebleu.syntax) + "\n";
  out += "dataflow: " + fixed4(report.codebleu.dataflow) + "\n";

  out += "\n[samples]\n";
  for (const SampleResult& r : report.samples) {
    const ReuseVector& v = r.detection.reuse;
    out += r.id + ": reuse=" + (v.local ? "1" : "0") + (v.global ? "1" : "0") +
           (v.library ? "1" : "0") +
           " coverage=" + ratio_text(r.library_coverage, paper_convention) +
           " loc=" + std::to_string(r.loc) +
           " codebleu=" + fixed4(r.codebleu.score);
    if (r.detection.parse_failed) out += " parse_failed";
    if (r.codebleu.dataflow_degenerate) out += " dataflow_degenerate";
    out += "\n";
  }
  return out;
}

std::string render_summary_jsonl(const EvalReport& report,
                                 bool paper_convention) {
  using nlohmann::ordered_json;
  auto line = [](const ordered_json& j) {
    return j.dump(-1, ' ', false, ordered_json::error_handler_t::replace) +
           "\n";
  };
  ordered_json summary;
  summary["kind"] = "summary";
  summary["samples"] = report.samples.size();
  summary["parse_failures"] = report.parse_failures;
  if (report.reuse) {
    ordered_json reuse;
    for (int i = 0; i < 3; ++i) {
      const AspectMetrics& m = aspect(*report.reuse, i);
      reuse[kAspects[i]] = {
          {"tp", m.counts.tp},
          {"fp", m.counts.fp},
          {"tn", m.counts.tn},
          {"fn", m.counts.fn},
          {"precision", ratio_json(m.precision, paper_convention)},
          {"recall", ratio_json(m.recall, paper_convention)},
          {"f1", ratio_json(m.f1, paper_convention)},
          {"accuracy", ratio_json(m.accuracy, paper_convention)}};
    }
    summary["reuse"] = reuse;
  } else {
    summary["reuse"] = nullptr;
  }
  summary["predicted_positive"] = {{"local", report.predicted_positive[0]},
                                   {"global", report.predicted_positive[1]},
                                   {"library", report.predicted_positive[2]}};
  summary["library_coverage"] =
      ratio_json(report.library_coverage, paper_convention);
  summary["avg_loc"] = report.avg_loc;
  summary["codebleu"] = {{"score", report.codebleu.score},
                         {"ngram", report.codebleu.ngram},
                         {"weighted_ngram", report.codebleu.weighted_ngram},
                         {"syntax", report.codebleu.syntax},
                         {"dataflow", report.codebleu.dataflow}};
  std::string out = line(summary);
  for (const SampleResult& r : report.samples) {
    ordered_json j;
    j["kind"] = "sample";
    j["id"] = r.id;
    j["reuse"] = {{"local", r.detection.reuse.local},
                  {"global", r.detection.reuse.global},
                  {"library", r.detection.reuse.library}};
    j["parse_failed"] = r.detection.parse_failed;
    j["library_coverage"] = ratio_json(r.library_coverage, paper_convention);
    j["loc"] = r.loc;
    j["codebleu"] = {{"score", r.codebleu.score},
                     {"ngram", r.codebleu.ngram},
                     {"weighted_ngram", r.codebleu.weighted_ngram},
                     {"syntax", r.codebleu.syntax},
                     {"dataflow", r.codebleu.dataflow},
                     {"dataflow_degenerate", r.codebleu.dataflow_degenerate}};
    out += line(j);
  }
  return out;
}

std::vector<ReuseVector> parse_labels(const std::string& text,
                                      const std::string& file_name) {
  std::vector<ReuseVector> out;
  std::uint32_t line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    std::string line = strip(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    Tokens fields = whitespace_tokens(line);
    if (fields.size() != 3) {
      throw ParseError(file_name, line_no, "expected three 0/1 fields");
    }
    bool v[3];
    for (int i = 0; i < 3; ++i) {
      if (fields[i] != "0" && fields[i] != "1") {
        throw ParseError(file_name, line_no,
                         "label field is not 0 or 1: " + fields[i]);
      }
      v[i] = fields[i] == "1";
    }
    out.push_back({v[0], v[1], v[2]});
  }
  return out;
}

}  // namespace repoaware
