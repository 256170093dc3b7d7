// Copyright 2026 The mms-toolkit Authors
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

#include "mms/http_embedding.hpp"

#include "httplib.h"
#include "nlohmann/json.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

namespace mms
{

struct HttpEmbeddingProvider::Connection
{
  explicit Connection(const std::string & scheme_host_port) : client(scheme_host_port)
  {
    client.set_connection_timeout(5, 0);
    client.set_read_timeout(30, 0);
  }

  httplib::Client client;
};

HttpEmbeddingProvider::HttpEmbeddingProvider(const std::string & endpoint, std::string model)
: model_(std::move(model))
{
  std::string rest = endpoint;
  std::string scheme = "http";
  if (const auto pos = rest.find("://"); pos != std::string::npos) {
    scheme = rest.substr(0, pos);
    rest = rest.substr(pos + 3);
  }
  if (scheme != "http") {
    throw Error(ErrorCode::kProviderUnavailable, "unsupported scheme " + scheme);
  }
  std::string authority = rest;
  path_ = "/";
  if (const auto slash = rest.find('/'); slash != std::string::npos) {
    authority = rest.substr(0, slash);
    path_ = rest.substr(slash);
  }
  if (authority.empty()) {
    throw Error(ErrorCode::kProviderUnavailable, "endpoint has no host: " + endpoint);
  }
  connection_ = std::make_unique<Connection>(scheme + "://" + authority);
}

HttpEmbeddingProvider::~HttpEmbeddingProvider() = default;

std::optional<std::string> HttpEmbeddingProvider::endpoint_from_environment()
{
  const char * value = std::getenv(kEmbeddingEndpointEnv);
  if (value == nullptr || *value == '\0') {
    return std::nullopt;
  }
  return std::string(value);
}

Embedding HttpEmbeddingProvider::embed(const std::string & text)
{
  if (text.empty()) {
    throw Error(ErrorCode::kZeroVector, "text has no content to embed");
  }

  const nlohmann::json request = {{"text", text}, {"model", model_}};
  const auto response = connection_->client.Post(path_, request.dump(), "application/json");
  if (!response) {
    throw Error(
      ErrorCode::kProviderUnavailable,
      std::string("request failed: ") + httplib::to_string(response.error()));
  }
  if (response->status != 200) {
    throw Error(
      ErrorCode::kProviderUnavailable, "server returned status " +
                                         std::to_string(response->status));
  }

  nlohmann::json body;
  try {
    body = nlohmann::json::parse(response->body);
  } catch (const nlohmann::json::exception & e) {
    throw Error(ErrorCode::kProviderUnavailable, std::string("malformed response: ") + e.what());
  }
  if (!body.is_object() || !body.contains("vector") || !body["vector"].is_array()) {
    throw Error(ErrorCode::kProviderUnavailable, "response lacks a vector array");
  }

  std::vector<double> values;
  values.reserve(body["vector"].size());
  for (const auto & element : body["vector"]) {
    if (!element.is_number()) {
      throw Error(ErrorCode::kProviderUnavailable, "vector holds a non-numeric element");
    }
    const double value = element.get<double>();
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::kProviderUnavailable, "vector holds a non-finite element");
    }
    values.push_back(value);
  }
  if (values.empty()) {
    throw Error(ErrorCode::kProviderUnavailable, "vector is empty");
  }

  if (dimension_ == 0) {
    dimension_ = values.size();
  } else if (values.size() != dimension_) {
    throw Error(
      ErrorCode::kDimensionMismatch, "server changed dimension from " +
                                       std::to_string(dimension_) + " to " +
                                       std::to_string(values.size()));
  }
  return Embedding(std::move(values));
}

}  // namespace mms
