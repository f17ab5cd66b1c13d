// Copyright 2026 The stylegap Authors.
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

#include "stylegap/promptkit.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stylegap/error.hpp"

namespace stylegap::promptkit {
namespace {

using nlohmann::json;

constexpr std::string_view kJoin = ", ";

bool is_token_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == ' ';
}

bool has_alnum(std::string_view word) {
  return std::any_of(word.begin(), word.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
  });
}

const json& require_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw Error(ErrorCode::kSchemaError,
                std::string("bundle field '") + key + "' must be a string",
                {{"field", key}});
  }
  if (it->get_ref<const std::string&>().empty()) {
    throw Error(ErrorCode::kSchemaError,
                std::string("bundle field '") + key + "' is empty", {{"field", key}});
  }
  return *it;
}

}  // namespace

void validate_token(std::string_view token) {
  for (char c : token) {
    if (!is_token_char(c)) {
      throw Error(ErrorCode::kNonLowercaseAscii,
                  "token '" + std::string(token) +
                      "' must be lowercase ASCII letters, digits, hyphens and spaces",
                  {{"token", std::string(token)}});
    }
  }
  int words = 0;
  std::size_t start = 0;
  while (start <= token.size()) {
    std::size_t end = token.find(' ', start);
    if (end == std::string_view::npos) end = token.size();
    std::string_view word = token.substr(start, end - start);
    if (word.empty() || !has_alnum(word)) {
      throw Error(ErrorCode::kSchemaError,
                  "token '" + std::string(token) + "' contains an empty word",
                  {{"token", std::string(token)}});
    }
    ++words;
    start = end + 1;
  }
  if (words < kMinWordsPerToken) {
    throw Error(ErrorCode::kTokenTooShort,
                "token '" + std::string(token) + "' has " + std::to_string(words) +
                    " word(s), need at least 2",
                {{"token", std::string(token)}});
  }
  if (words > kMaxWordsPerToken) {
    throw Error(ErrorCode::kTokenTooLong,
                "token '" + std::string(token) + "' has " + std::to_string(words) +
                    " words, at most 4 allowed",
                {{"token", std::string(token)}});
  }
}

DescriptorBundle parse_bundle(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchemaError, std::string("bundle is not valid JSON: ") + e.what(),
                {{"byte", std::to_string(e.byte)}});
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kSchemaError, "bundle must be a JSON object");
  }
  for (const auto& [key, _] : doc.items()) {
    if (key != "artist_name" && key != "baseline" && key != "sets") {
      throw Error(ErrorCode::kSchemaError, "unexpected bundle field '" + key + "'",
                  {{"field", key}});
    }
  }

  DescriptorBundle bundle;
  bundle.artist_name = require_string(doc, "artist_name").get<std::string>();
  bundle.baseline = require_string(doc, "baseline").get<std::string>();

  auto sets = doc.find("sets");
  if (sets == doc.end() || !sets->is_array()) {
    throw Error(ErrorCode::kSchemaError, "bundle field 'sets' must be an array",
                {{"field", "sets"}});
  }
  if (sets->size() != kDescriptorSets) {
    throw Error(ErrorCode::kWrongSetCount,
                "expected 5 descriptor sets, found " + std::to_string(sets->size()),
                {{"field", "sets"}});
  }
  for (std::size_t i = 0; i < sets->size(); ++i) {
    const json& set = (*sets)[i];
    const std::string field = "sets[" + std::to_string(i) + "]";
    if (!set.is_array()) {
      throw Error(ErrorCode::kSchemaError, field + " must be an array", {{"field", field}});
    }
    if (set.size() != kTokensPerSet) {
      throw Error(ErrorCode::kWrongTokenCount,
                  field + " has " + std::to_string(set.size()) + " tokens, expected 3",
                  {{"field", field}});
    }
    for (std::size_t j = 0; j < set.size(); ++j) {
      const std::string token_field = field + "[" + std::to_string(j) + "]";
      if (!set[j].is_string()) {
        throw Error(ErrorCode::kSchemaError, token_field + " must be a string",
                    {{"field", token_field}});
      }
      std::string token = set[j].get<std::string>();
      try {
        validate_token(token);
      } catch (const Error& e) {
        throw e.with_context({{"field", token_field}});
      }
      bundle.sets[i][j] = std::move(token);
    }
  }

  for (std::size_t i = 0; i < bundle.sets.size(); ++i) {
    DescriptorSet a = bundle.sets[i];
    std::sort(a.begin(), a.end());
    for (std::size_t j = i + 1; j < bundle.sets.size(); ++j) {
      DescriptorSet b = bundle.sets[j];
      std::sort(b.begin(), b.end());
      if (a == b) {
        throw Error(ErrorCode::kDuplicateSet,
                    "descriptor sets " + std::to_string(i + 1) + " and " +
                        std::to_string(j + 1) + " contain the same tokens",
                    {{"field", "sets[" + std::to_string(j) + "]"}});
      }
    }
  }
  return bundle;
}

DescriptorBundle load_bundle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot open bundle " + path.string(),
                {{"path", path.string()}});
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_bundle(buf.str());
  } catch (const Error& e) {
    throw e.with_context({{"path", path.string()}});
  }
}

std::string serialize_bundle(const DescriptorBundle& bundle) {
  json sets = json::array();
  for (const auto& set : bundle.sets) sets.push_back(json(set));
  json doc = {{"artist_name", bundle.artist_name},
              {"baseline", bundle.baseline},
              {"sets", std::move(sets)}};
  return doc.dump(2) + "\n";
}

std::string artist_name_prompt(std::string_view baseline, std::string_view artist_name) {
  std::string out(baseline);
  out += " [";
  out += artist_name;
  out += "]";
  return out;
}

std::string styled_prompt(std::string_view baseline, const DescriptorSet& set) {
  std::string out(baseline);
  for (const auto& token : set) {
    out += kJoin;
    out += token;
  }
  return out;
}

PromptSet build_prompts(const DescriptorBundle& bundle) {
  PromptSet prompts;
  prompts.baseline_prompt = bundle.baseline;
  prompts.artist_name_prompt = artist_name_prompt(bundle.baseline, bundle.artist_name);
  for (std::size_t k = 0; k < bundle.sets.size(); ++k) {
    prompts.styled_prompts[k] = styled_prompt(bundle.baseline, bundle.sets[k]);
  }
  return prompts;
}

}  // namespace stylegap::promptkit
