#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace decoynet {

enum class AnswerKind { MultiSelect, SingleSelect, FreeText };

struct SurveyQuestion {
  std::string id;  // "Q1".."Q9"
  std::string prompt;
  AnswerKind kind = AnswerKind::FreeText;
  std::vector<std::string> options;
  bool optional = false;
  /// Free-text follow-ups are required only when this question's answer
  /// includes "Other".
  std::string required_if_other_in;
};

const std::vector<SurveyQuestion>& post_survey();

nlohmann::json survey_to_json();

/// Returns one message per problem; empty means the answers are acceptable.
/// Answers are an object keyed by question id: arrays of option strings for
/// multi-select, one option string for single-select, a string for text.
std::vector<std::string> validate_survey(const nlohmann::json& answers);

}  // namespace decoynet
