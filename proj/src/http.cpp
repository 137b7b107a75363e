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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include "repoaware/errors.hpp"
#include "repoaware/http.hpp"

namespace repoaware {

HttpResult http_post_json(
    const std::string& url, const std::string& body,
    const std::vector<std::pair<std::string, std::string>>& headers,
    double timeout_seconds) {
  std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ProviderError("malformed endpoint URL: " + url);
  }
  std::size_t path_begin = url.find('/', scheme_end + 3);
  std::string origin = url.substr(0, path_begin);
  std::string path =
      path_begin == std::string::npos ? "/" : url.substr(path_begin);

  httplib::Client client(origin);
  if (!client.is_valid()) {
    throw ProviderError("unsupported endpoint URL: " + url);
  }
  auto seconds = static_cast<time_t>(timeout_seconds);
  auto usec = static_cast<time_t>((timeout_seconds - seconds) * 1e6);
  client.set_connection_timeout(seconds, usec);
  client.set_read_timeout(seconds, usec);
  client.set_write_timeout(seconds, usec);

  httplib::Headers h;
  for (const auto& [k, v] : headers) h.emplace(k, v);
  httplib::Result res = client.Post(path, h, body, "application/json");
  if (!res) {
    throw ProviderError("POST " + url + " failed: " +
                        httplib::to_string(res.error()));
  }
  return {res->status, res->body};
}

}  // namespace repoaware
