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

#include "repoaware/persistence.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "repoaware/errors.hpp"

namespace repoaware {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

Json optional_text(const std::optional<std::string>& v) {
  return v ? Json(*v) : Json(nullptr);
}

class RecordReader {
 public:
  RecordReader(const Json& j, const std::string& file, std::size_t line)
      : j_(j), file_(file), line_(line) {}

  const Json& field(const char* key) const {
    auto it = j_.find(key);
    if (it == j_.end()) fail(std::string("missing field '") + key + "'");
    return *it;
  }

  std::string text(const char* key) const {
    const Json& v = field(key);
    if (!v.is_string()) fail(std::string("field '") + key + "' is not a string");
    return v.get<std::string>();
  }

  std::optional<std::string> optional_text(const char* key) const {
    const Json& v = field(key);
    if (v.is_null()) return std::nullopt;
    return text(key);
  }

  bool boolean(const char* key) const {
    const Json& v = field(key);
    if (!v.is_boolean()) fail(std::string("field '") + key + "' is not a boolean");
    return v.get<bool>();
  }

  Vector vector(const char* key) const {
    const Json& v = field(key);
    if (!v.is_array()) fail(std::string("field '") + key + "' is not an array");
    Vector out;
    out.reserve(v.size());
    for (const Json& x : v) {
      if (!x.is_number()) {
        fail(std::string("field '") + key + "' holds a non-number");
      }
      out.push_back(x.get<double>());
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(file_, line_, what);
  }

 private:
  const Json& j_;
  const std::string& file_;
  std::size_t line_;
};

std::map<std::string, std::string> read_meta(const fs::path& path) {
  std::string content = read_file(path);
  std::map<std::string, std::string> meta;
  std::istringstream in(content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ParseError(path.string(), line_no, "expected key=value");
    }
    meta[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return meta;
}

std::size_t meta_number(const std::map<std::string, std::string>& meta,
                        const std::string& key, const fs::path& path) {
  auto it = meta.find(key);
  if (it == meta.end()) {
    throw ParseError(path.string(), 0, "missing key '" + key + "'");
  }
  std::size_t value = 0;
  const std::string& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(path.string(), 0, "key '" + key + "' is not a number");
  }
  return value;
}

}  // namespace

std::string read_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) throw NotFoundError(path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string(), "cannot open for writing");
    out << content;
    out.flush();
    if (!out) throw IoError(path.string(), "write failed");
  }
  fs::rename(tmp, path, ec);
  if (ec) throw IoError(path.string(), ec.message());
}

std::string record_to_json_line(const FunctionRecord& r) {
  Json j;
  j["fqn"] = r.fqn;
  j["file_path"] = r.file_path;
  j["class_name"] = optional_text(r.class_name);
  j["signature"] = r.signature;
  j["comment"] = optional_text(r.comment);
  j["source"] = r.source;
  j["is_empty"] = r.is_empty;
  j["summary"] = r.summary;
  j["summary_vector"] = r.summary_vector;
  j["code_vector"] = r.code_vector;
  return j.dump(-1, ' ', false, Json::error_handler_t::replace);
}

FunctionRecord record_from_json_line(const std::string& line,
                                     const std::string& file,
                                     std::size_t line_no) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw ParseError(file, line_no, e.what());
  }
  if (!j.is_object()) throw ParseError(file, line_no, "expected an object");
  RecordReader rd(j, file, line_no);
  FunctionRecord r;
  r.fqn = rd.text("fqn");
  r.file_path = rd.text("file_path");
  r.class_name = rd.optional_text("class_name");
  r.signature = rd.text("signature");
  r.comment = rd.optional_text("comment");
  r.source = rd.text("source");
  r.is_empty = rd.boolean("is_empty");
  r.summary = rd.text("summary");
  r.summary_vector = rd.vector("summary_vector");
  r.code_vector = rd.vector("code_vector");
  return r;
}

void save_function_base(const FunctionBase& base, const fs::path& out) {
  std::string lines;
  for (const FunctionRecord& r : base.records()) {
    lines += record_to_json_line(r);
    lines += '\n';
  }
  std::string meta = "format_version=" + std::to_string(kFormatVersion) +
                     "\nembed_dim=" + std::to_string(base.embed_dim()) +
                     "\nprovider_id=" + base.provider_id() +
                     "\nrecord_count=" + std::to_string(base.size()) + "\n";
  write_file_atomic(out / kFunctionsFile, lines);
  write_file_atomic(out / kMetaFile, meta);
}

FunctionBase load_function_base(const fs::path& dir) {
  fs::path meta_path = dir / kMetaFile;
  fs::path data_path = dir / kFunctionsFile;
  auto meta = read_meta(meta_path);
  std::size_t version = meta_number(meta, "format_version", meta_path);
  if (version != static_cast<std::size_t>(kFormatVersion)) {
    throw ParseError(meta_path.string(), 0,
                     "unsupported format_version " + std::to_string(version));
  }
  std::size_t dim = meta_number(meta, "embed_dim", meta_path);
  if (dim == 0) throw ParseError(meta_path.string(), 0, "embed_dim is zero");
  std::string provider = meta.count("provider_id") ? meta["provider_id"] : "";

  std::string content = read_file(data_path);
  std::vector<FunctionRecord> records;
  std::size_t line_no = 0;
  std::size_t start = 0;
  const std::string file = data_path.string();
  while (start < content.size()) {
    std::size_t nl = content.find('\n', start);
    if (nl == std::string::npos) nl = content.size();
    ++line_no;
    std::string line = content.substr(start, nl - start);
    start = nl + 1;
    FunctionRecord r = record_from_json_line(line, file, line_no);
    if (r.summary_vector.size() != dim || r.code_vector.size() != dim) {
      throw ConsistencyError(file + ":" + std::to_string(line_no) + ": " +
                             r.fqn + " has vector dimension " +
                             std::to_string(r.summary_vector.size() != dim
                                                ? r.summary_vector.size()
                                                : r.code_vector.size()) +
                             ", meta says " + std::to_string(dim));
    }
    records.push_back(std::move(r));
  }
  if (meta.count("record_count") &&
      meta_number(meta, "record_count", meta_path) != records.size()) {
    throw ConsistencyError(file + ": record count differs from meta");
  }
  return FunctionBase(std::move(records), dim, provider);
}

void save_library_base(const LibraryBase& libs, const fs::path& out) {
  std::string content;
  for (const std::string& n : libs.names()) {
    content += n;
    content += '\n';
  }
  write_file_atomic(out / kLibrariesFile, content);
}

LibraryBase load_library_base(const fs::path& dir) {
  fs::path path = dir / kLibrariesFile;
  std::string content = read_file(path);
  LibraryBase libs;
  std::istringstream in(content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (libs.contains(line)) {
      throw ConsistencyError(path.string() + ":" + std::to_string(line_no) +
                             ": duplicate library '" + line + "'");
    }
    try {
      libs.add(line);
    } catch (const ConsistencyError& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
  }
  return libs;
}

}  // namespace repoaware
