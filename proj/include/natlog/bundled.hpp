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

#ifndef NATLOG_BUNDLED_HPP_
#define NATLOG_BUNDLED_HPP_

#include <string_view>

namespace natlog {

// Contents of the files under data/, embedded at build time.
std::string_view bundled_lexicon();
std::string_view bundled_resource();
std::string_view bundled_rewrites();
std::string_view bundled_mini_corpus();

}  // namespace natlog

#endif  // NATLOG_BUNDLED_HPP_
