// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include "videomerge/prompt_refine.hpp"

#include <regex>

#include "videomerge/error.hpp"

namespace videomerge {

namespace {

void replace_all(std::string& text, std::string_view slot,
                 std::string_view value) {
  std::size_t pos = 0;
  while ((pos = text.find(slot, pos)) != std::string::npos) {
    text.replace(pos, slot.size(), value);
    pos += value.size();
  }
}

constexpr std::string_view kHumanSuffix =
    ", a woman in her early thirties with shoulder-length brown hair, "
    "wearing a dark blue wool coat, with a calm and clearly visible face";
constexpr std::string_view kSceneSuffix =
    ", richly detailed, natural lighting, consistent colors throughout";

}  // namespace

std::string_view to_string(PromptCategory category) noexcept {
  switch (category) {
    case PromptCategory::human: return "human";
    case PromptCategory::animal: return "animal";
    case PromptCategory::landscape: return "landscape";
  }
  return "human";
}

PromptCategory parse_category(std::string_view text) {
  if (text == "human") return PromptCategory::human;
  if (text == "animal") return PromptCategory::animal;
  if (text == "landscape") return PromptCategory::landscape;
  throw Error(Errc::invalid_input,
              "unknown prompt category '" + std::string(text) +
                  "' (expected human, animal or landscape)");
}

std::string_view to_string(RefineSource source) noexcept {
  switch (source) {
    case RefineSource::remote: return "remote";
    case RefineSource::stub: return "stub";
    case RefineSource::passthrough: return "passthrough";
  }
  return "passthrough";
}

PromptTemplate PromptTemplate::standard() {
  PromptTemplate t;
  t.instruction =
      "You rewrite short text-to-video prompts ({category}) into one "
      "concrete, visual description. Keep every word of the original "
      "prompt, including any names, and only add detail.\n"
      "Original prompt: {prompt}\n";
  t.human_checklist_intro =
      "The video shows people. If the prompt does not already specify them, "
      "add each of the following for every person:\n";
  t.scene_instruction =
      "Enrich the scene with concrete visual details (subject appearance, "
      "setting, lighting, colors) that are not yet mentioned.\n";
  t.checklist = {"hair color", "age", "clothing", "appearance"};
  return t;
}

std::string build_request(std::string_view prompt, PromptCategory category,
                          const PromptTemplate& tmpl) {
  if (prompt.empty()) {
    throw Error(Errc::invalid_input, "prompt must not be empty");
  }
  // Slots are filled category first so a literal "{category}" inside the
  // user's prompt is left alone.
  std::string text = tmpl.instruction;
  replace_all(text, "{category}", to_string(category));
  const std::size_t slot = text.find("{prompt}");
  if (slot != std::string::npos) {
    text.replace(slot, 8, prompt);
  } else {
    text += "Original prompt: ";
    text += prompt;
    text += '\n';
  }
  if (category == PromptCategory::human) {
    text += tmpl.human_checklist_intro;
    for (const auto& item : tmpl.checklist) {
      text += "- ";
      text += item;
      text += '\n';
    }
  } else {
    text += tmpl.scene_instruction;
  }
  text += "Answer with the rewritten prompt only.";
  return text;
}

std::map<std::string, std::string> detect_attributes(std::string_view text) {
  static const std::regex hair(R"(((?:[a-z]+-)?[a-z]+(?: [a-z]+)?) hair)",
                               std::regex::icase);
  static const std::regex age(
      R"((\d+[- ]year[- ]old|in (?:his|her|their) (?:early |mid |late |mid-)?(?:teens|twenties|thirties|forties|fifties|sixties|seventies|eighties)|(?:young|elderly|middle-aged|teenage|old)))",
      std::regex::icase);
  static const std::regex clothing(R"(wearing ([^,.;]+))", std::regex::icase);
  static const std::regex appearance(R"(with (?:a |an )?([^,.;]*(?:face|eyes|skin|beard|build|features)))",
                                     std::regex::icase);
  std::map<std::string, std::string> out;
  const std::string s(text);
  std::smatch m;
  if (std::regex_search(s, m, hair)) out["hair color"] = m[1].str();
  if (std::regex_search(s, m, age)) out["age"] = m[1].str();
  if (std::regex_search(s, m, clothing)) out["clothing"] = m[1].str();
  if (std::regex_search(s, m, appearance)) out["appearance"] = m[1].str();
  return out;
}

RefinedPrompt refine(std::string_view prompt, PromptCategory category,
                     RefinerClient& client, const PromptTemplate& tmpl) {
  RefineRequest request{std::string(prompt), category,
                        build_request(prompt, category, tmpl)};
  RefinedPrompt result;
  result.original = request.prompt;
  try {
    std::string response = client.complete(request);
    if (response.find_first_not_of(" \t\r\n") == std::string::npos) {
      throw Error(Errc::refiner_failure, "empty completion");
    }
    result.refined = std::move(response);
    result.source = client.source();
  } catch (const std::exception& e) {
    result.refined = result.original;
    result.source = RefineSource::passthrough;
    result.warning = std::string("prompt refinement failed, using the original: ") + e.what();
  }
  result.attributes = detect_attributes(result.refined);
  return result;
}

StubClient::StubClient(std::map<std::string, std::string> fixtures)
    : fixtures_(std::move(fixtures)) {}

std::string StubClient::complete(const RefineRequest& request) {
  if (auto it = fixtures_.find(request.prompt); it != fixtures_.end()) {
    return it->second;
  }
  std::string out = request.prompt;
  out += request.category == PromptCategory::human ? kHumanSuffix : kSceneSuffix;
  return out;
}

std::unique_ptr<RefinerClient> stub_client(
    std::map<std::string, std::string> fixtures) {
  return std::make_unique<StubClient>(std::move(fixtures));
}

}  // namespace videomerge
