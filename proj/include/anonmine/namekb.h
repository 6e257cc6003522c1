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

// Name and word dictionaries, and the name detection used both by the
// name-list baseline and by feature extraction.

#ifndef ANONMINE_NAMEKB_H_
#define ANONMINE_NAMEKB_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "anonmine/ingest.h"

namespace anonmine {

using Rank = std::int64_t;

enum class AnonymityLabel {
  kAnonymous,
  kPartiallyAnonymous,
  kIdentifiable,
  kUnclassifiable,
};

inline constexpr AnonymityLabel kAllAnonymityLabels[] = {
    AnonymityLabel::kAnonymous, AnonymityLabel::kPartiallyAnonymous,
    AnonymityLabel::kIdentifiable, AnonymityLabel::kUnclassifiable};

std::string_view to_string(AnonymityLabel label);
// Accepts the to_string spellings; throws FormatError otherwise.
AnonymityLabel parse_anonymity_label(std::string_view text);

struct RankedToken {
  std::string token;
  Rank rank = 1;
};

// Immutable after construction; safe to share across threads.
class NameKnowledgeBase {
 public:
  // Tokens are lowercased; a token listed twice keeps its smallest rank.
  // Throws InvalidArgument for ranks < 1 or an empty first/last-name list.
  NameKnowledgeBase(const std::vector<RankedToken>& first_names,
                    const std::vector<RankedToken>& last_names,
                    const std::vector<std::string>& scrabble_words,
                    const std::vector<RankedToken>& word_frequencies);

  std::optional<Rank> first_name_rank(const std::string& token) const;
  std::optional<Rank> last_name_rank(const std::string& token) const;
  bool is_scrabble_word(const std::string& token) const;
  std::optional<Rank> word_frequency_rank(const std::string& token) const;

  std::size_t first_name_count() const { return first_names_.size(); }
  std::size_t last_name_count() const { return last_names_.size(); }
  std::size_t scrabble_word_count() const { return scrabble_words_.size(); }
  // Longest name in either list; bounds the substring scan.
  std::size_t max_name_length() const { return max_name_length_; }

 private:
  std::unordered_map<std::string, Rank> first_names_;
  std::unordered_map<std::string, Rank> last_names_;
  std::unordered_set<std::string> scrabble_words_;
  std::unordered_map<std::string, Rank> word_frequencies_;
  std::size_t max_name_length_ = 0;
};

// Name lists and the frequency list are `token,rank` CSV lines; the Scrabble
// list is one word per line. Blank lines and lines starting with '#' are
// ignored. Throws InputError for unreadable files and FormatError for bad
// lines or an empty name list.
NameKnowledgeBase load_knowledge_base(const std::filesystem::path& first_names,
                                      const std::filesystem::path& last_names,
                                      const std::filesystem::path& scrabble,
                                      const std::filesystem::path& frequencies);

std::vector<RankedToken> read_ranked_list(const std::filesystem::path& path);
std::vector<std::string> read_word_list(const std::filesystem::path& path);
void write_ranked_list(const std::filesystem::path& path,
                       const std::vector<RankedToken>& tokens);
void write_word_list(const std::filesystem::path& path,
                     const std::vector<std::string>& words);

struct NameMatch {
  std::string token;
  Rank rank = 1;
  bool matched_as_substring = false;
  // Index into NameDetection::parts of the part the name came from.
  std::size_t part_index = 0;

  friend bool operator==(const NameMatch&, const NameMatch&) = default;
};

struct NameDetection {
  std::optional<NameMatch> first_name;
  std::optional<NameMatch> last_name;
  std::size_t name_part_count = 0;
  std::size_t scrabble_word_count = 0;
  // Whitespace-separated parts, lowercased with non-alphabetic edge
  // characters stripped (a part may become empty).
  std::vector<std::string> parts;
  // Whether each part is an exact first-name list member.
  std::vector<bool> part_is_first_name;
};

enum class MatchMode {
  kExactAndSubstring,
  kExactOnly,
};

// Exact pass: picks the (first, last) pair of distinct parts that fills both
// slots, preferring first-before-last order, then lower first-name rank,
// then lower last-name rank; if no pair exists, the single best slot is
// filled. Substring pass (kExactAndSubstring only, for empty slots): scans
// parts not used by an exact match for list names of length >= 3; longest
// match wins, then lower rank, then lexicographic token. A substring match
// never overlaps the other slot's match.
NameDetection detect_names(const NameKnowledgeBase& kb,
                           std::string_view display_name,
                           MatchMode mode = MatchMode::kExactAndSubstring);

// FirstName LastName, FirstName MiddleInitial LastName or FirstName
// MiddleName LastName with both names matched exactly in the outer parts.
bool matches_structural_constraint(const NameDetection& detection);

// Exact-token name-list check only; see AnonymityLabel definitions.
AnonymityLabel baseline_namelist_label(const NameKnowledgeBase& kb,
                                       const AccountProfile& account);

inline constexpr std::size_t kMinSubstringMatch = 3;

}  // namespace anonmine

#endif  // ANONMINE_NAMEKB_H_
