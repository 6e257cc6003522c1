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

#include "anonmine/tokenizer.h"

#include <algorithm>

namespace anonmine {
namespace {

constexpr const char* kStopwords[] = {
    "a", "about", "above", "after", "again", "against", "all", "also", "am",
    "an", "and", "any", "are", "aren", "as", "at", "be", "because", "been",
    "before", "being", "below", "between", "both", "but", "by", "can", "cannot",
    "could", "couldn", "did", "didn", "do", "does", "doesn", "doing", "don",
    "down", "during", "each", "few", "for", "from", "further", "get", "got",
    "had", "hadn", "has", "hasn", "have", "haven", "having", "he", "her",
    "here", "hers", "herself", "him", "himself", "his", "how", "i", "if", "im",
    "in", "into", "is", "isn", "it", "its", "itself", "just", "let", "ll",
    "me", "more", "most", "mustn", "my", "myself", "no", "nor", "not", "now",
    "of", "off", "on", "once", "only", "or", "other", "ought", "our", "ours",
    "ourselves", "out", "over", "own", "same", "shan", "she", "should",
    "shouldn", "so", "some", "such", "than", "that", "thats", "the", "their",
    "theirs", "them", "themselves", "then", "there", "these", "they", "this",
    "those", "through", "to", "too", "under", "until", "up", "very", "was",
    "wasn", "we", "were", "weren", "what", "when", "where", "which", "while",
    "who", "whom", "why", "will", "with", "won", "would", "wouldn", "you",
    "your", "yours", "yourself", "yourselves", "youre", "ive", "dont", "cant",
    "wont", "isnt", "didnt", "doesnt", "amp", "via"};

bool is_alnum(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

char lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool is_whitespace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

const std::unordered_set<std::string>& default_stopwords() {
  static const std::unordered_set<std::string> words(std::begin(kStopwords),
                                                     std::end(kStopwords));
  return words;
}

std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizerConfig& config) {
  std::vector<std::string> out;
  auto emit = [&](std::string token) {
    if (token.size() < config.min_length) return;
    if (config.drop_retweet_marker && token == "rt") return;
    if (config.drop_numbers &&
        std::all_of(token.begin(), token.end(),
                    [](char c) { return c >= '0' && c <= '9'; })) {
      return;
    }
    if (config.stopwords.count(token)) return;
    out.push_back(std::move(token));
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && is_whitespace(text[pos])) ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && !is_whitespace(text[pos])) ++pos;
    if (start == pos) break;

    std::string word;
    word.reserve(pos - start);
    for (char c : text.substr(start, pos - start)) word.push_back(lower(c));
    if (config.drop_urls && (starts_with(word, "http://") ||
                             starts_with(word, "https://") ||
                             starts_with(word, "www."))) {
      continue;
    }
    if (config.drop_mentions && starts_with(word, "@")) continue;
    word.erase(std::remove(word.begin(), word.end(), '\''), word.end());

    // Hashtag marks, punctuation and non-ASCII bytes all act as separators.
    std::string token;
    for (char c : word) {
      if (is_alnum(static_cast<unsigned char>(c))) {
        token.push_back(c);
      } else if (!token.empty()) {
        emit(std::move(token));
        token.clear();
      }
    }
    if (!token.empty()) emit(std::move(token));
  }
  return out;
}

}  // namespace anonmine
