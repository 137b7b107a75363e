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

#ifndef REPOAWARE_HASHING_HPP_
#define REPOAWARE_HASHING_HPP_

#include <string>
#include <string_view>

namespace repoaware {

// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

}  // namespace repoaware

#endif  // REPOAWARE_HASHING_HPP_
