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

#ifndef REPOAWARE_ERRORS_HPP_
#define REPOAWARE_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace repoaware {

// Base of every error raised by the library. The CLI maps any of these to a
// nonzero exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class NotFoundError : public Error {
 public:
  explicit NotFoundError(const std::string& path)
      : Error(path + ": not found"), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Malformed persisted data. `line` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + (line ? ":" + std::to_string(line) : std::string()) +
              ": " + what),
        file_(file),
        line_(line) {}
  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

// Data that is well-formed but violates a cross-field invariant.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Precondition violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

// A chat or embedding endpoint failed after all retries.
class ProviderError : public Error {
 public:
  explicit ProviderError(const std::string& what, int attempts = 1)
      : Error(what), attempts_(attempts) {}
  int attempts() const noexcept { return attempts_; }

 private:
  int attempts_;
};

// The model answered, but with nothing usable.
class DegenerateOutputError : public Error {
 public:
  explicit DegenerateOutputError(const std::string& what,
                                 std::string raw_output = {})
      : Error(what), raw_output_(std::move(raw_output)) {}
  const std::string& raw_output() const noexcept { return raw_output_; }

 private:
  std::string raw_output_;
};

class PromptTooLongError : public Error {
 public:
  struct BlockSize {
    std::string name;
    std::size_t chars;
  };

  PromptTooLongError(const std::string& what, std::size_t limit,
                     std::size_t total, std::vector<BlockSize> blocks)
      : Error(what), limit_(limit), total_(total), blocks_(std::move(blocks)) {}

  std::size_t limit() const noexcept { return limit_; }
  std::size_t total() const noexcept { return total_; }
  const std::vector<BlockSize>& blocks() const noexcept { return blocks_; }

 private:
  std::size_t limit_;
  std::size_t total_;
  std::vector<BlockSize> blocks_;
};

}  // namespace repoaware

#endif  // REPOAWARE_ERRORS_HPP_
