// Copyright 2026 The Anonmine Authors
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

// Bag-of-words tokenization of short social-media posts.

#ifndef ANONMINE_TOKENIZER_H_
#define ANONMINE_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace anonmine {

const std::unordered_set<std::string>& default_stopwords();

struct TokenizerConfig {
  std::size_t min_length = 3;
  bool drop_urls = true;
  bool drop_mentions = true;
  bool drop_retweet_marker = true;
  bool drop_numbers = true;
  std::unordered_set<std::string> stopwords = default_stopwords();
};

// Lowercases, drops URLs, @mentions and the "rt" marker, strips '#' from
// hashtags, deletes apostrophes and splits on every other character that
// is not an ASCII letter or digit. Short, numeric and stop-list tokens are
// removed.
std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizerConfig& config = {});

}  // namespace anonmine

#endif  // ANONMINE_TOKENIZER_H_
