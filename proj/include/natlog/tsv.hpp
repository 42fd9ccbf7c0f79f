// Copyright 2026 The natlog Authors.
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

// Small file and TSV helpers shared by the loaders and writers.

#ifndef NATLOG_TSV_HPP_
#define NATLOG_TSV_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "natlog/core.hpp"

namespace natlog {

class IoError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path);
// Writes to "<path>.tmp" and renames over path.
void write_file_atomic(const std::string& path, std::string_view content);

// Lines without trailing '\r'; the final empty line is dropped.
std::vector<std::string_view> split_lines(std::string_view text);
std::vector<std::string> split_tabs(std::string_view line);

// A data line is nonblank and does not start with '#'.
bool is_data_line(std::string_view line);

}  // namespace natlog

#endif  // NATLOG_TSV_HPP_
