// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include <httplib.h>
#include <json.hpp>

#include <cstdlib>
#include <regex>

#include "videomerge/error.hpp"
#include "videomerge/prompt_refine.hpp"

namespace videomerge {

namespace {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_endpoint(const std::string& url) {
  static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)", std::regex::icase);
  std::smatch m;
  if (!std::regex_match(url, m, re)) {
    throw Error(Errc::refiner_failure, "malformed endpoint URL '" + url + "'");
  }
  return {m[1].str(), m[2].matched ? m[2].str() : std::string("/")};
}

}  // namespace

HttpRefinerClient::HttpRefinerClient(HttpRefinerOptions options)
    : options_(std::move(options)) {}

std::string HttpRefinerClient::complete(const RefineRequest& request) {
  const Endpoint ep = split_endpoint(options_.endpoint);
  httplib::Client client(ep.origin);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(
      options_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  nlohmann::json body = {{"model", options_.model},
                         {"input", request.text},
                         {"max_output_tokens", options_.max_output_tokens}};
  httplib::Headers headers;
  if (!options_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + options_.api_key);
  }
  auto res = client.Post(ep.path, headers, body.dump(), "application/json");
  if (!res) {
    throw Error(Errc::refiner_failure,
                "request to " + ep.origin + " failed: " +
                    httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw Error(Errc::refiner_failure,
                "endpoint answered HTTP " + std::to_string(res->status));
  }
  const auto doc = nlohmann::json::parse(res->body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(Errc::refiner_failure, "response is not a JSON object");
  }
  for (const char* key : {"output_text", "output", "text"}) {
    if (auto it = doc.find(key); it != doc.end() && it->is_string()) {
      std::string text = it->get<std::string>();
      if (text.empty()) break;
      return text;
    }
  }
  throw Error(Errc::refiner_failure, "response has no completion text");
}

std::optional<HttpRefinerOptions> http_options_from_env() {
  const char* endpoint = std::getenv("VIDEOMERGE_LLM_ENDPOINT");
  if (endpoint == nullptr || *endpoint == '\0') return std::nullopt;
  HttpRefinerOptions opts;
  opts.endpoint = endpoint;
  if (const char* key = std::getenv("VIDEOMERGE_LLM_KEY")) opts.api_key = key;
  return opts;
}

}  // namespace videomerge
