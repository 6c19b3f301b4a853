// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace videomerge {

enum class PromptCategory { human, animal, landscape };

std::string_view to_string(PromptCategory category) noexcept;
/// Throws invalid-input for anything but "human", "animal", "landscape".
PromptCategory parse_category(std::string_view text);

/// Instruction text with {prompt} and {category} slots plus the appearance
/// checklist that human prompts must be enriched with.
struct PromptTemplate {
  std::string instruction;
  std::string human_checklist_intro;
  std::string scene_instruction;
  std::vector<std::string> checklist;

  static PromptTemplate standard();
};

/// Renders the refinement request. The prompt appears verbatim. Throws
/// invalid-input for an empty prompt.
std::string build_request(std::string_view prompt, PromptCategory category,
                          const PromptTemplate& tmpl = PromptTemplate::standard());

enum class RefineSource { remote, stub, passthrough };
std::string_view to_string(RefineSource source) noexcept;

struct RefineRequest {
  std::string prompt;
  PromptCategory category;
  std::string text;
};

/// Text completion backend. complete() either returns nonempty text or
/// throws.
class RefinerClient {
 public:
  virtual ~RefinerClient() = default;
  virtual std::string complete(const RefineRequest& request) = 0;
  virtual RefineSource source() const noexcept = 0;
};

struct RefinedPrompt {
  std::string original;
  std::string refined;
  std::map<std::string, std::string> attributes;
  RefineSource source = RefineSource::passthrough;
  /// Set when refinement degraded to passthrough.
  std::string warning;
};

/// Never throws on client failure: falls back to the original prompt with
/// source = passthrough and a warning. Throws invalid-input only for an
/// empty prompt.
RefinedPrompt refine(std::string_view prompt, PromptCategory category,
                     RefinerClient& client,
                     const PromptTemplate& tmpl = PromptTemplate::standard());

/// Best-effort extraction of checklist attributes ("hair color", "age",
/// "clothing", "appearance") from refined text.
std::map<std::string, std::string> detect_attributes(std::string_view text);

/// Offline client: exact fixture hits, otherwise the prompt plus a fixed
/// attribute suffix. Immutable and shareable.
class StubClient final : public RefinerClient {
 public:
  explicit StubClient(std::map<std::string, std::string> fixtures = {});
  std::string complete(const RefineRequest& request) override;
  RefineSource source() const noexcept override { return RefineSource::stub; }

 private:
  std::map<std::string, std::string> fixtures_;
};

std::unique_ptr<RefinerClient> stub_client(
    std::map<std::string, std::string> fixtures = {});

struct HttpRefinerOptions {
  std::string endpoint;  // e.g. https://llm.example.com/v1/responses
  std::string api_key;
  std::string model = "default";
  std::size_t max_output_tokens = 256;
  std::chrono::milliseconds timeout{10000};
};

/// Remote client. POSTs {"model", "input", "max_output_tokens"} as JSON with
/// a bearer token and reads the completion from "output_text" (or "output"
/// / "text"). Any transport or protocol problem throws refiner-failure.
class HttpRefinerClient final : public RefinerClient {
 public:
  explicit HttpRefinerClient(HttpRefinerOptions options);
  std::string complete(const RefineRequest& request) override;
  RefineSource source() const noexcept override { return RefineSource::remote; }

 private:
  HttpRefinerOptions options_;
};

/// Reads VIDEOMERGE_LLM_ENDPOINT / VIDEOMERGE_LLM_KEY. Empty when no
/// endpoint is configured.
std::optional<HttpRefinerOptions> http_options_from_env();

}  // namespace videomerge
