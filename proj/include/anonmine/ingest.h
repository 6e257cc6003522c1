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

// Account and tweet dumps: JSONL parsing, serialization and the sanitization
// filters (language, ephemeral, spam-like) applied before any analysis.

#ifndef ANONMINE_INGEST_H_
#define ANONMINE_INGEST_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace anonmine {

using Timestamp = std::chrono::sys_seconds;

// Accepts "YYYY-MM-DDTHH:MM:SSZ" (fractional seconds are truncated, a
// "+00:00" suffix is accepted in place of "Z"). Throws FormatError.
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

// Calendar-month arithmetic: the month advances, the time of day is kept and
// the day is clamped to the last day of the resulting month.
Timestamp add_calendar_months(Timestamp t, int months);

struct AccountProfile {
  std::string id;
  std::string screen_name;
  std::string display_name;
  std::string description;
  std::optional<std::string> url;
  std::string language;
  std::int64_t friends_count = 0;
  std::int64_t followers_count = 0;
  std::int64_t tweets_count = 0;
  std::int64_t favorites_count = 0;
  std::int64_t list_memberships = 0;
  bool is_protected = false;
  bool geo_enabled = false;
  Timestamp created_at{};
  std::optional<Timestamp> last_tweet_at;

  bool has_url() const { return url.has_value() && !url->empty(); }

  friend bool operator==(const AccountProfile&, const AccountProfile&) = default;
};

// Converts one JSONL object; throws FormatError on missing or ill-typed
// fields and on invariant violations (negative counts, empty id,
// last_tweet_at before created_at).
AccountProfile account_from_json(const nlohmann::json& object);
nlohmann::json account_to_json(const AccountProfile& account);
std::string serialize_account(const AccountProfile& account);

struct AccountParseResult {
  std::vector<AccountProfile> accounts;
  std::size_t skipped = 0;
};

// Reads the account JSONL dump. Blank lines are ignored; malformed lines and
// repeated ids are skipped and counted. Throws InputError if the file cannot
// be read and FormatError if more than half of the lines are malformed.
AccountParseResult parse_account_records(const std::filesystem::path& path);
void write_account_records(const std::filesystem::path& path,
                           std::span<const AccountProfile> accounts);

// Nonzero friends+followers and a tweet at least six calendar months after
// creation (boundary inclusive).
bool is_non_ephemeral(const AccountProfile& account);

// followers/friends < 0.1; an account with no friends is never spam-like.
bool is_spam_like(const AccountProfile& account);

inline constexpr std::string_view kEnglish = "en";

struct SanitizationReport {
  std::size_t input_count = 0;
  std::size_t removed_non_english = 0;
  std::size_t removed_ephemeral = 0;
  std::size_t removed_spam_like = 0;
  std::size_t output_count = 0;

  friend bool operator==(const SanitizationReport&,
                         const SanitizationReport&) = default;
};

struct SanitizedAccounts {
  std::vector<AccountProfile> accounts;
  SanitizationReport report;
};

// Keeps English, non-ephemeral, non-spam-like accounts in input order. Each
// removed account is tallied once, under the first failing filter in the
// order language, ephemeral, spam.
SanitizedAccounts sanitize(std::span<const AccountProfile> accounts);

struct TargetAccount {
  AccountProfile profile;
  std::int64_t active_follower_count = 0;
};

std::vector<TargetAccount> filter_target_accounts(
    std::span<const TargetAccount> targets, std::int64_t min_followers = 200);

struct Tweet {
  std::string account_id;
  Timestamp created_at{};
  std::string text;

  friend bool operator==(const Tweet&, const Tweet&) = default;
};

struct TweetParseResult {
  std::vector<Tweet> tweets;
  std::size_t skipped = 0;
};

// Tweets JSONL: {"account_id", "created_at", "text"} per line. Same error
// policy as parse_account_records.
TweetParseResult parse_tweet_records(const std::filesystem::path& path);
void write_tweet_records(const std::filesystem::path& path,
                         std::span<const Tweet> tweets);

}  // namespace anonmine

#endif  // ANONMINE_INGEST_H_
