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

#ifndef REPOAWARE_TESTS_PROPERTY_CHECKS_HPP_
#define REPOAWARE_TESTS_PROPERTY_CHECKS_HPP_

// Hand-rolled generators and property loops shared by the unit suite and the
// acceptance runner. Each check returns the first counterexample, if any.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "repoaware/evaluator.hpp"
#include "repoaware/model.hpp"
#include "repoaware/providers.hpp"

namespace repoaware::testing {

struct PropertyResult {
  std::size_t cases = 0;
  std::optional<std::string> counterexample;
  bool ok() const { return !counterexample; }
};

inline const std::vector<std::string>& import_pool() {
  static const std::vector<std::string> kPool = {
      "os",   "re",     "json",  "typing", "lxml",  "numpy", "pandas",
      "bs4",  "nltk",   "yaml",  "requests", "collections", "torch", "scipy"};
  return kPool;
}

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline std::string ident(std::mt19937_64& rng) {
  static const char* kNames[] = {"x", "y", "total", "text", "item", "node",
                                 "count", "result", "value", "data"};
  return kNames[pick(rng, 10)];
}

// Small Python programs: imports, assignments, comments, blank lines,
// functions with optional docstrings, an occasional broken line.
inline std::string random_program(std::mt19937_64& rng) {
  std::ostringstream out;
  std::size_t lines = 1 + pick(rng, 12);
  for (std::size_t i = 0; i < lines; ++i) {
    switch (pick(rng, 9)) {
      case 0: out << "import " << import_pool()[pick(rng, import_pool().size())] << "\n"; break;
      case 1:
        out << "from " << import_pool()[pick(rng, import_pool().size())]
            << " import " << ident(rng) << "\n";
        break;
      case 2: out << ident(rng) << " = " << pick(rng, 100) << "  # note\n"; break;
      case 3: out << "# " << ident(rng) << " comment\n"; break;
      case 4: out << "\n"; break;
      case 5:
        out << "def f" << i << "(" << ident(rng) << "):\n";
        if (pick(rng, 2)) out << "    \"\"\"Doc line.\n\n    More doc.\n    \"\"\"\n";
        out << "    return " << ident(rng) << "\n";
        break;
      case 6:
        out << "if " << ident(rng) << ":\n    " << ident(rng) << " = (1,\n        2)\n";
        break;
      case 7: out << "print(" << ident(rng) << ", '''a\nb''')\n"; break;
      default:
        if (pick(rng, 4) == 0) {
          out << "def broken(:\n";
        } else {
          out << ident(rng) << ".append(" << ident(rng) << ")\n";
        }
    }
  }
  std::string s = out.str();
  if (pick(rng, 3) == 0 && !s.empty()) s.pop_back();  // no final newline
  return s;
}

inline std::string random_trailer(std::mt19937_64& rng) {
  std::string t = "\n";
  for (std::size_t i = 1 + pick(rng, 4); i > 0; --i) {
    switch (pick(rng, 3)) {
      case 0: t += "# trailing comment\n"; break;
      case 1: t += "\n"; break;
      default: t += "    # indented comment\n";
    }
  }
  return t;
}

inline PropertyResult check_loc_comment_append(std::uint64_t seed, std::size_t cases) {
  std::mt19937_64 rng(seed);
  PropertyResult r;
  for (; r.cases < cases; ++r.cases) {
    std::string code = random_program(rng);
    std::string longer = code + random_trailer(rng);
    if (count_loc(code) != count_loc(longer)) {
      r.counterexample = "count_loc changed after appending comments to:\n" + code;
      break;
    }
  }
  return r;
}

inline LibraryBase random_libs(std::mt19937_64& rng) {
  LibraryBase libs;
  for (const std::string& n : import_pool()) {
    if (pick(rng, 2)) libs.add(n);
  }
  return libs;
}

inline PropertyResult check_coverage_monotone(std::uint64_t seed, std::size_t cases) {
  std::mt19937_64 rng(seed);
  PropertyResult r;
  for (; r.cases < cases; ++r.cases) {
    std::string code = random_program(rng);
    LibraryBase small = random_libs(rng);
    LibraryBase big = small;
    for (const std::string& n : import_pool()) {
      if (pick(rng, 3) == 0) big.add(n);
    }
    std::optional<double> a = library_coverage(code, small);
    std::optional<double> b = library_coverage(code, big);
    if (a.has_value() != b.has_value() || (a && (*a > *b || *a < 0 || *b > 1))) {
      r.counterexample = "coverage dropped when libraries were added for:\n" + code;
      break;
    }
  }
  return r;
}

inline PropertyResult check_vacuous_coverage(std::uint64_t seed, std::size_t cases) {
  std::mt19937_64 rng(seed);
  PropertyResult r;
  static const std::vector<std::string> kStd = {"os", "re", "json", "typing",
                                                "collections", "itertools"};
  for (; r.cases < cases; ++r.cases) {
    std::string code;
    for (std::size_t i = pick(rng, 4); i > 0; --i) {
      code += "import " + kStd[pick(rng, kStd.size())] + "\n";
    }
    code += ident(rng) + " = " + std::to_string(pick(rng, 9)) + "\n";
    if (library_coverage(code, random_libs(rng)) != 1.0) {
      r.counterexample = "coverage of code without third-party imports is not 1:\n" + code;
      break;
    }
  }
  return r;
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(dim);
  do {
    for (double& x : v) x = u(rng);
  } while (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; }));
  return v;
}

inline PropertyResult check_cosine_scale(std::uint64_t seed, std::size_t cases) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_alpha(-3.0, 3.0);
  PropertyResult r;
  for (; r.cases < cases; ++r.cases) {
    std::size_t dim = 1 + pick(rng, 64);
    Vector a = random_vector(rng, dim), b = random_vector(rng, dim);
    double alpha = std::pow(10.0, log_alpha(rng));
    Vector scaled = a;
    for (double& x : scaled) x *= alpha;
    double c = cosine_similarity(a, b);
    if (std::abs(cosine_similarity(scaled, b) - c) > 1e-9 ||
        std::abs(cosine_similarity(b, a) - c) > 1e-9 || std::abs(c) > 1.0 + 1e-9) {
      std::ostringstream msg;
      msg << "cosine not scale invariant or symmetric, dim " << dim << " alpha "
          << alpha;
      r.counterexample = msg.str();
      break;
    }
  }
  return r;
}

inline PropertyResult check_f1_bounds(std::uint64_t seed, std::size_t cases) {
  std::mt19937_64 rng(seed);
  PropertyResult r;
  for (; r.cases < cases; ++r.cases) {
    ConfusionCounts c{pick(rng, 20), pick(rng, 20), pick(rng, 20), pick(rng, 20)};
    AspectMetrics m = metrics_from_counts(c);
    bool ok = true;
    if (m.f1) ok &= (*m.f1 == 0.0) == (c.tp == 0);
    if (m.f1 && m.precision && m.recall) {
      double lo = std::min(*m.precision, *m.recall);
      double hi = std::max(*m.precision, *m.recall);
      ok &= *m.f1 >= lo - 1e-12 && *m.f1 <= hi + 1e-12;
    }
    if (!ok) {
      std::ostringstream msg;
      msg << "f1 out of bounds for tp=" << c.tp << " fp=" << c.fp << " fn=" << c.fn;
      r.counterexample = msg.str();
      break;
    }
  }
  return r;
}

inline PropertyResult check_codebleu_bounds(std::uint64_t seed, std::size_t cases) {
  std::mt19937_64 rng(seed);
  PropertyResult r;
  auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
  for (; r.cases < cases; ++r.cases) {
    std::string a = random_program(rng), b = random_program(rng);
    CodeBleuScore s = codebleu(a, b);
    if (!in01(s.score) || !in01(s.ngram) || !in01(s.weighted_ngram) ||
        !in01(s.syntax) || !in01(s.dataflow)) {
      r.counterexample = "codebleu out of [0,1] for:\n" + a + "\n---\n" + b;
      break;
    }
  }
  return r;
}

}  // namespace repoaware::testing

#endif  // REPOAWARE_TESTS_PROPERTY_CHECKS_HPP_
