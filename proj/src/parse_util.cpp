// Copyright 2026 The semival Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "semival/parse_util.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string>

namespace semival {

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

std::pair<std::string_view, std::string_view> split_head(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return {text, {}};
  return {text.substr(0, colon), text.substr(colon + 1)};
}

double parse_number(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

long long parse_integer(std::string_view text) {
  text = trim(text);
  long long value = 0;
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> parse_numbers(std::string_view text, char separator) {
  std::vector<double> out;
  std::size_t pos = 0;
  const auto is_sep = [separator](char c) {
    return c == separator || std::isspace(static_cast<unsigned char>(c));
  };
  while (pos < text.size()) {
    while (pos < text.size() && is_sep(text[pos])) ++pos;
    std::size_t end = pos;
    while (end < text.size() && !is_sep(text[end])) ++end;
    if (end > pos) out.push_back(parse_number(text.substr(pos, end - pos)));
    pos = end;
  }
  return out;
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return std::to_string(value);
  return std::string(buf, ptr);
}

}  // namespace semival
