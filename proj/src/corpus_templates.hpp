// Copyright 2026 The hlevel Authors
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

// Corpus templates compiled into the library (see cmake/embed_templates.cmake).

#ifndef HLEVEL_SRC_CORPUS_TEMPLATES_HPP_
#define HLEVEL_SRC_CORPUS_TEMPLATES_HPP_

#include <string_view>
#include <vector>

namespace hlevel::detail {

struct EmbeddedTemplate {
  std::string_view name;
  std::string_view text;
};

const std::vector<EmbeddedTemplate>& embedded_templates();

}  // namespace hlevel::detail

#endif  // HLEVEL_SRC_CORPUS_TEMPLATES_HPP_
