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

#ifndef SEMIVAL_PARSE_UTIL_HPP_
#define SEMIVAL_PARSE_UTIL_HPP_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semival {

// Splits "head:args" into its two halves; args is empty without a colon.
std::pair<std::string_view, std::string_view> split_head(std::string_view text);

// Parses separator- or whitespace-delimited doubles. Throws
// std::invalid_argument on anything that is not a number.
std::vector<double> parse_numbers(std::string_view text, char separator);
double parse_number(std::string_view text);
long long parse_integer(std::string_view text);

std::string_view trim(std::string_view text);

// Shortest representation that round-trips.
std::string format_number(double value);

}  // namespace semival

#endif  // SEMIVAL_PARSE_UTIL_HPP_
