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

#include "anonmine/namekb.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <tuple>

#include "anonmine/csv.h"
#include "anonmine/errors.h"

namespace anonmine {
namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

std::string normalize_part(std::string_view raw) {
  std::size_t begin = 0;
  std::size_t end = raw.size();
  while (begin < end && !is_alpha(raw[begin])) ++begin;
  while (end > begin && !is_alpha(raw[end - 1])) --end;
  return lowercase(raw.substr(begin, end - begin));
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) parts.push_back(s.substr(start, i - start));
  }
  return parts;
}

void insert_min_rank(std::unordered_map<std::string, Rank>& map,
                     const RankedToken& entry) {
  if (entry.rank < 1) {
    throw InvalidArgument("rank for '" + entry.token + "' must be >= 1");
  }
  const std::string key = lowercase(trim(entry.token));
  if (key.empty()) return;
  auto [it, inserted] = map.emplace(key, entry.rank);
  if (!inserted) it->second = std::min(it->second, entry.rank);
}

struct SubstringHit {
  std::size_t length;
  Rank rank;
  std::string token;
  std::size_t part;
  std::size_t offset;

  // Longest, then most popular, then lexicographic, then position.
  bool better_than(const SubstringHit& o) const {
    if (length != o.length) return length > o.length;
    if (rank != o.rank) return rank < o.rank;
    if (token != o.token) return token < o.token;
    return std::tie(part, offset) < std::tie(o.part, o.offset);
  }
};

}  // namespace

std::string_view to_string(AnonymityLabel label) {
  switch (label) {
    case AnonymityLabel::kAnonymous:
      return "Anonymous";
    case AnonymityLabel::kPartiallyAnonymous:
      return "PartiallyAnonymous";
    case AnonymityLabel::kIdentifiable:
      return "Identifiable";
    case AnonymityLabel::kUnclassifiable:
      return "Unclassifiable";
  }
  return "?";
}

AnonymityLabel parse_anonymity_label(std::string_view text) {
  for (auto label : kAllAnonymityLabels) {
    if (to_string(label) == text) return label;
  }
  throw FormatError("unknown anonymity label '" + std::string(text) + "'");
}

NameKnowledgeBase::NameKnowledgeBase(
    const std::vector<RankedToken>& first_names,
    const std::vector<RankedToken>& last_names,
    const std::vector<std::string>& scrabble_words,
    const std::vector<RankedToken>& word_frequencies) {
  for (const auto& e : first_names) insert_min_rank(first_names_, e);
  for (const auto& e : last_names) insert_min_rank(last_names_, e);
  for (const auto& e : word_frequencies) insert_min_rank(word_frequencies_, e);
  for (const auto& w : scrabble_words) {
    const std::string key = lowercase(trim(w));
    if (!key.empty()) scrabble_words_.insert(key);
  }
  if (first_names_.empty()) throw InvalidArgument("first-name list is empty");
  if (last_names_.empty()) throw InvalidArgument("last-name list is empty");
  for (const auto& [token, rank] : first_names_) {
    max_name_length_ = std::max(max_name_length_, token.size());
  }
  for (const auto& [token, rank] : last_names_) {
    max_name_length_ = std::max(max_name_length_, token.size());
  }
}

std::optional<Rank> NameKnowledgeBase::first_name_rank(const std::string& token) const {
  const auto it = first_names_.find(token);
  if (it == first_names_.end()) return std::nullopt;
  return it->second;
}

std::optional<Rank> NameKnowledgeBase::last_name_rank(const std::string& token) const {
  const auto it = last_names_.find(token);
  if (it == last_names_.end()) return std::nullopt;
  return it->second;
}

bool NameKnowledgeBase::is_scrabble_word(const std::string& token) const {
  return scrabble_words_.contains(token);
}

std::optional<Rank> NameKnowledgeBase::word_frequency_rank(const std::string& token) const {
  const auto it = word_frequencies_.find(token);
  if (it == word_frequencies_.end()) return std::nullopt;
  return it->second;
}

std::vector<RankedToken> read_ranked_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<RankedToken> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto comma = view.rfind(',');
    if (comma == std::string_view::npos) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": expected 'token,rank'");
    }
    const std::string_view rank_text = trim(view.substr(comma + 1));
    if (out.empty() && rank_text == "rank") continue;  // header
    RankedToken entry;
    entry.token = std::string(trim(view.substr(0, comma)));
    try {
      entry.rank = parse_int(rank_text);
    } catch (const FormatError&) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": rank is not an integer");
    }
    if (entry.rank < 1) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": rank must be >= 1");
    }
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<std::string> read_word_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    out.emplace_back(view);
  }
  return out;
}

void write_ranked_list(const std::filesystem::path& path,
                       const std::vector<RankedToken>& tokens) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  for (const auto& t : tokens) out << t.token << ',' << t.rank << '\n';
}

void write_word_list(const std::filesystem::path& path,
                     const std::vector<std::string>& words) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  for (const auto& w : words) out << w << '\n';
}

NameKnowledgeBase load_knowledge_base(const std::filesystem::path& first_names,
                                      const std::filesystem::path& last_names,
                                      const std::filesystem::path& scrabble,
                                      const std::filesystem::path& frequencies) {
  auto first = read_ranked_list(first_names);
  if (first.empty()) throw FormatError(first_names.string() + " has no names");
  auto last = read_ranked_list(last_names);
  if (last.empty()) throw FormatError(last_names.string() + " has no names");
  return NameKnowledgeBase(first, last, read_word_list(scrabble),
                           read_ranked_list(frequencies));
}

NameDetection detect_names(const NameKnowledgeBase& kb,
                           std::string_view display_name, MatchMode mode) {
  NameDetection d;
  const auto raw_parts = split_whitespace(display_name);
  d.name_part_count = raw_parts.size();
  d.parts.reserve(raw_parts.size());
  for (auto raw : raw_parts) d.parts.push_back(normalize_part(raw));

  const std::size_t n = d.parts.size();
  std::vector<std::optional<Rank>> first_rank(n);
  std::vector<std::optional<Rank>> last_rank(n);
  d.part_is_first_name.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (d.parts[i].empty()) continue;
    first_rank[i] = kb.first_name_rank(d.parts[i]);
    last_rank[i] = kb.last_name_rank(d.parts[i]);
    d.part_is_first_name[i] = first_rank[i].has_value();
    if (kb.is_scrabble_word(d.parts[i])) ++d.scrabble_word_count;
  }

  // Exact pass over ordered pairs of distinct parts.
  std::optional<std::tuple<bool, Rank, Rank, std::size_t, std::size_t>> best_pair;
  for (std::size_t i = 0; i < n; ++i) {
    if (!first_rank[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !last_rank[j]) continue;
      auto key = std::make_tuple(i > j, *first_rank[i], *last_rank[j], i, j);
      if (!best_pair || key < *best_pair) best_pair = key;
    }
  }
  if (best_pair) {
    const auto [unordered, fr, lr, i, j] = *best_pair;
    d.first_name = NameMatch{d.parts[i], fr, false, i};
    d.last_name = NameMatch{d.parts[j], lr, false, j};
  } else {
    std::optional<std::pair<Rank, std::size_t>> best_first;
    std::optional<std::pair<Rank, std::size_t>> best_last;
    for (std::size_t i = 0; i < n; ++i) {
      if (first_rank[i] && (!best_first || std::make_pair(*first_rank[i], i) < *best_first)) {
        best_first = std::make_pair(*first_rank[i], i);
      }
      if (last_rank[i] && (!best_last || std::make_pair(*last_rank[i], i) < *best_last)) {
        best_last = std::make_pair(*last_rank[i], i);
      }
    }
    // Without a pair, every candidate sits in the same part; keep the slot
    // with the more popular rank (first on ties).
    if (best_first && (!best_last || best_first->first <= best_last->first)) {
      d.first_name = NameMatch{d.parts[best_first->second], best_first->first,
                               false, best_first->second};
    } else if (best_last) {
      d.last_name = NameMatch{d.parts[best_last->second], best_last->first,
                              false, best_last->second};
    }
  }

  if (mode == MatchMode::kExactOnly) return d;

  // Substring pass for the empty slots. Offsets of a substring match are
  // tracked so the other slot cannot reuse the same characters.
  std::optional<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> taken;
  auto scan = [&](bool want_first, const std::optional<NameMatch>& other)
      -> std::optional<SubstringHit> {
    std::optional<SubstringHit> best;
    for (std::size_t p = 0; p < n; ++p) {
      if (other && !other->matched_as_substring && other->part_index == p) continue;
      const std::string& part = d.parts[p];
      for (std::size_t s = 0; s < part.size(); ++s) {
        const std::size_t max_len = std::min(kb.max_name_length(), part.size() - s);
        for (std::size_t len = max_len; len >= kMinSubstringMatch; --len) {
          if (taken && taken->first == p) {
            const auto [ts, te] = taken->second;
            if (s < te && ts < s + len) continue;
          }
          std::string sub = part.substr(s, len);
          const auto rank = want_first ? kb.first_name_rank(sub) : kb.last_name_rank(sub);
          if (!rank) continue;
          SubstringHit hit{len, *rank, std::move(sub), p, s};
          if (!best || hit.better_than(*best)) best = std::move(hit);
        }
      }
    }
    return best;
  };

  if (!d.first_name) {
    if (auto hit = scan(true, d.last_name)) {
      d.first_name = NameMatch{hit->token, hit->rank, true, hit->part};
      taken = {hit->part, {hit->offset, hit->offset + hit->length}};
    }
  }
  if (!d.last_name) {
    if (auto hit = scan(false, d.first_name)) {
      d.last_name = NameMatch{hit->token, hit->rank, true, hit->part};
    }
  }
  return d;
}

bool matches_structural_constraint(const NameDetection& d) {
  if (!d.first_name || !d.last_name) return false;
  if (d.first_name->matched_as_substring || d.last_name->matched_as_substring) {
    return false;
  }
  const std::size_t n = d.name_part_count;
  if (n != 2 && n != 3) return false;
  if (d.first_name->part_index != 0 || d.last_name->part_index != n - 1) {
    return false;
  }
  if (n == 3) {
    const bool initial = d.parts[1].size() == 1;
    const bool middle_name = d.part_is_first_name.size() > 1 && d.part_is_first_name[1];
    if (!initial && !middle_name) return false;
  }
  return true;
}

AnonymityLabel baseline_namelist_label(const NameKnowledgeBase& kb,
                                       const AccountProfile& account) {
  const NameDetection d = detect_names(kb, account.display_name, MatchMode::kExactOnly);
  if (d.first_name && d.last_name) return AnonymityLabel::kIdentifiable;
  if (d.first_name || d.last_name) return AnonymityLabel::kPartiallyAnonymous;
  return account.has_url() ? AnonymityLabel::kUnclassifiable
                           : AnonymityLabel::kAnonymous;
}

}  // namespace anonmine
