/*
   Copyright 2026 The fuzzylb Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
 */
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fuzzylb {

/// Malformed configuration text or out-of-range configuration value.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct KeyValue {
    std::string key;
    std::string value;
    int line = 0;
};

/// Reads `key = value` lines in file order; blank lines and '#' comments are skipped.
std::vector<KeyValue> parse_key_values(std::istream& in);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

double parse_double(std::string_view s);
long long parse_int(std::string_view s);
bool parse_bool(std::string_view s);
std::vector<double> parse_double_list(std::string_view s);
std::vector<int> parse_int_list(std::string_view s);

/// Shortest text that parses back to exactly x.
std::string format_double(double x);
std::string join(const std::vector<double>& xs, char sep = ',');
std::string join(const std::vector<int>& xs, char sep = ',');

}  // namespace fuzzylb
