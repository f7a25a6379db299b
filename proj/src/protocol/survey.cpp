#include "decoynet/protocol/survey.hpp"

#include <algorithm>
#include <set>

namespace decoynet {

namespace {

std::vector<SurveyQuestion> build() {
  const std::vector<std::string> costs{"worth it", "0", "2", "4", "8"};
  return {
      {"Q1", "Pick the factors that affect your decision on attack target (select all eligible options):",
       AnswerKind::MultiSelect,
       {"Operating system", "Disclosure date of exploits", "checkHS estimation", "Round trip time measurement", "Other"},
       false,
       ""},
      {"Q2", "If other, please let us know what else affected your decision.", AnswerKind::FreeText, {}, true, "Q1"},
      {"Q3",
       "Pick the factors that affect your decision on whether to fetch pin.txt file (select all eligible options):",
       AnswerKind::MultiSelect,
       {"Operating system", "Disclosure date of exploits", "checkHS estimation", "Round trip time measurement",
        "Number of trials to get the foothold", "Empty directories encountered", "Access of directories denied",
        "Virtual environment detected by checkVM", "Number of running process", "Other"},
       false,
       ""},
      {"Q4", "If other, please let us know what else affected your decision.", AnswerKind::FreeText, {}, true, "Q3"},
      {"Q5",
       "Do you think the option -rtt of nmap command worth the time it takes? If not, pick the largest acceptable "
       "time cost:",
       AnswerKind::SingleSelect, costs, false, ""},
      {"Q6",
       "Do you think checkHS command worth the time it takes? If not, pick the largest acceptable time cost:",
       AnswerKind::SingleSelect, costs, false, ""},
      {"Q7", "Pick the exploits with date that you find too obsolete:", AnswerKind::MultiSelect,
       {"HTTP/2 slow read, 2020-03-01", "LDAPS buffer overflow, 2017-04-11",
        "Java deserialize remote code execution, 2015-09-29", "Remote authentication, 2012-10-23",
        "DoS attack, 2010-01-26", "ASUS remote code execution, 2008-03-25", "Authentication bypass, 2006-05-15",
        "Remote buffer overflow, 2001-04-04"},
       false,
       ""},
      {"Q8",
       "Have you ever given up fetching pin.txt file with the system exploited? If so, pick the options that best "
       "describe your reason.",
       AnswerKind::MultiSelect,
       {"Can't locate pin.txt file", "I had no time to fetch pin.txt", "I discover that the system is honeypot.",
        "To avoid further penalty"},
       false,
       ""},
      {"Q9", "Please provide us with your feedback about the experiment (optional).", AnswerKind::FreeText, {}, true, ""},
  };
}

// Q7 and Q8 can legitimately have nothing selected.
bool may_be_empty(const SurveyQuestion& q) { return q.id == "Q7" || q.id == "Q8"; }

}  // namespace

const std::vector<SurveyQuestion>& post_survey() {
  static const auto questions = build();
  return questions;
}

nlohmann::json survey_to_json() {
  auto out = nlohmann::json::array();
  for (const auto& q : post_survey()) {
    const char* kind = q.kind == AnswerKind::MultiSelect    ? "multi"
                       : q.kind == AnswerKind::SingleSelect ? "single"
                                                            : "text";
    nlohmann::json item{{"id", q.id}, {"prompt", q.prompt}, {"kind", kind}, {"optional", q.optional}};
    if (!q.options.empty()) item["options"] = q.options;
    if (!q.required_if_other_in.empty()) item["required_if_other_in"] = q.required_if_other_in;
    out.push_back(std::move(item));
  }
  return out;
}

std::vector<std::string> validate_survey(const nlohmann::json& answers) {
  std::vector<std::string> problems;
  if (!answers.is_object()) return {"answers must be an object keyed by question id"};

  std::set<std::string> known;
  for (const auto& q : post_survey()) known.insert(q.id);
  for (const auto& [key, _] : answers.items()) {
    if (!known.contains(key)) problems.push_back(key + ": not a survey question");
  }

  auto picked_other = [&](const std::string& id) {
    if (!answers.contains(id) || !answers[id].is_array()) return false;
    return std::ranges::any_of(answers[id], [](const auto& v) { return v == "Other"; });
  };

  for (const auto& q : post_survey()) {
    const bool required = !q.optional || (!q.required_if_other_in.empty() && picked_other(q.required_if_other_in));
    if (!answers.contains(q.id)) {
      if (required) problems.push_back(q.id + ": required");
      continue;
    }
    const auto& a = answers[q.id];
    switch (q.kind) {
      case AnswerKind::FreeText:
        if (!a.is_string()) {
          problems.push_back(q.id + ": expected text");
        } else if (required && a.get<std::string>().empty()) {
          problems.push_back(q.id + ": required");
        }
        break;
      case AnswerKind::SingleSelect:
        if (!a.is_string() || std::ranges::find(q.options, a.get<std::string>()) == q.options.end()) {
          problems.push_back(q.id + ": expected one of the listed options");
        }
        break;
      case AnswerKind::MultiSelect: {
        if (!a.is_array()) {
          problems.push_back(q.id + ": expected a list of options");
          break;
        }
        std::set<std::string> seen;
        for (const auto& v : a) {
          if (!v.is_string() || std::ranges::find(q.options, v.get<std::string>()) == q.options.end()) {
            problems.push_back(q.id + ": unknown option " + v.dump());
          } else if (!seen.insert(v.get<std::string>()).second) {
            problems.push_back(q.id + ": duplicate option " + v.dump());
          }
        }
        if (a.empty() && !may_be_empty(q)) problems.push_back(q.id + ": pick at least one option");
        break;
      }
    }
  }
  return problems;
}

}  // namespace decoynet
