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

#ifndef MMS__HTTP_EMBEDDING_HPP_
#define MMS__HTTP_EMBEDDING_HPP_

#include "mms/coherence.hpp"

#include <memory>
#include <optional>
#include <string>

namespace mms
{

// Name of the environment variable holding the default endpoint URL.
inline constexpr const char * kEmbeddingEndpointEnv = "MMS_EMBEDDING_ENDPOINT";

// Talks to an embedding server over HTTP: POST {"text", "model"} to the
// endpoint path, expecting {"vector": [...]} back. The first response fixes
// the embedding dimension for the rest of the session. Not safe for
// concurrent use from multiple threads; give each worker its own instance.
class HttpEmbeddingProvider : public EmbeddingProvider
{
public:
  // endpoint: http://host:port/path (scheme optional, path defaults to /).
  explicit HttpEmbeddingProvider(const std::string & endpoint, std::string model = "default");
  ~HttpEmbeddingProvider() override;

  HttpEmbeddingProvider(const HttpEmbeddingProvider &) = delete;
  HttpEmbeddingProvider & operator=(const HttpEmbeddingProvider &) = delete;

  // Reads the endpoint from MMS_EMBEDDING_ENDPOINT; nullopt when unset.
  static std::optional<std::string> endpoint_from_environment();

  Embedding embed(const std::string & text) override;
  std::string model_id() const override { return model_; }

private:
  struct Connection;

  std::string model_;
  std::string path_;
  std::unique_ptr<Connection> connection_;
  std::size_t dimension_{0};
};

}  // namespace mms

#endif  // MMS__HTTP_EMBEDDING_HPP_
