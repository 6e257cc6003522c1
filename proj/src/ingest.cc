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

#include "anonmine/ingest.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <unordered_set>

#include "anonmine/errors.h"

namespace anonmine {
namespace {

using nlohmann::json;
using std::chrono::days;
using std::chrono::seconds;
using std::chrono::sys_days;
using std::chrono::year_month_day;

const json& require(const json& object, const char* key) {
  const auto it = object.find(key);
  if (it == object.end()) {
    throw FormatError(std::string("missing field '") + key + "'");
  }
  return *it;
}

std::string require_string(const json& object, const char* key) {
  const json& v = require(object, key);
  if (!v.is_string()) {
    throw FormatError(std::string("field '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& object,
                                           const char* key) {
  const json& v = require(object, key);
  if (v.is_null()) return std::nullopt;
  if (!v.is_string()) {
    throw FormatError(std::string("field '") + key +
                      "' must be a string or null");
  }
  return v.get<std::string>();
}

std::int64_t require_count(const json& object, const char* key) {
  const json& v = require(object, key);
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(INT64_MAX)) {
      throw FormatError(std::string("field '") + key + "' is out of range");
    }
    return static_cast<std::int64_t>(u);
  }
  if (v.is_number_integer()) {
    const auto i = v.get<std::int64_t>();
    if (i < 0) {
      throw FormatError(std::string("field '") + key + "' must be >= 0");
    }
    return i;
  }
  throw FormatError(std::string("field '") + key + "' must be an integer");
}

bool require_bool(const json& object, const char* key) {
  const json& v = require(object, key);
  if (!v.is_boolean()) {
    throw FormatError(std::string("field '") + key + "' must be a boolean");
  }
  return v.get<bool>();
}

std::string to_lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Shared JSONL driver: parse every nonblank line with `convert`, count
// failures, and enforce the majority-malformed rule.
template <typename T>
std::pair<std::vector<T>, std::size_t> read_jsonl(
    const std::filesystem::path& path,
    const std::function<T(const json&)>& convert,
    const std::function<bool(const T&)>& accept) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<T> records;
  std::size_t lines = 0;
  std::size_t skipped = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (std::all_of(line.begin(), line.end(),
                    [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    ++lines;
    const json object = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (object.is_discarded() || !object.is_object()) {
      ++skipped;
      continue;
    }
    try {
      T record = convert(object);
      if (!accept(record)) {
        ++skipped;
        continue;
      }
      records.push_back(std::move(record));
    } catch (const FormatError&) {
      ++skipped;
    }
  }
  if (in.bad()) throw InputError("read failed for " + path.string());
  if (lines > 0 && 2 * skipped > lines) {
    throw FormatError(path.string() + ": " + std::to_string(skipped) + " of " +
                      std::to_string(lines) +
                      " lines are malformed; is this the right file?");
  }
  return {std::move(records), skipped};
}

void write_lines(const std::filesystem::path& path,
                 const std::vector<std::string>& lines) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  for (const auto& l : lines) out << l << '\n';
  if (!out) throw InputError("write failed for " + path.string());
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
  int y = 0;
  unsigned mo = 0, d = 0, h = 0, mi = 0, s = 0;
  int consumed = 0;
  const std::string buf(text);
  if (std::sscanf(buf.c_str(), "%4d-%2u-%2uT%2u:%2u:%2u%n", &y, &mo, &d, &h,
                  &mi, &s, &consumed) != 6 ||
      consumed != 19) {
    throw FormatError("bad timestamp '" + buf + "'");
  }
  std::string_view rest = std::string_view(buf).substr(19);
  if (!rest.empty() && rest.front() == '.') {
    std::size_t i = 1;
    while (i < rest.size() && std::isdigit(static_cast<unsigned char>(rest[i]))) ++i;
    if (i == 1) throw FormatError("bad timestamp '" + buf + "'");
    rest.remove_prefix(i);
  }
  if (rest != "Z" && rest != "+00:00") {
    throw FormatError("timestamp must be UTC: '" + buf + "'");
  }
  const year_month_day ymd{std::chrono::year{y}, std::chrono::month{mo},
                           std::chrono::day{d}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59) {
    throw FormatError("invalid date in timestamp '" + buf + "'");
  }
  return Timestamp{sys_days{ymd}.time_since_epoch() + std::chrono::hours{h} +
                   std::chrono::minutes{mi} + seconds{s}};
}

std::string format_timestamp(Timestamp t) {
  const auto day = std::chrono::floor<days>(t);
  const year_month_day ymd{day};
  const std::chrono::hh_mm_ss tod{t - day};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<int>(tod.hours().count()),
                static_cast<int>(tod.minutes().count()),
                static_cast<int>(tod.seconds().count()));
  return buf;
}

Timestamp add_calendar_months(Timestamp t, int months) {
  const auto day = std::chrono::floor<days>(t);
  const auto time_of_day = t - day;
  year_month_day ymd{day};
  const auto target_ym =
      std::chrono::year_month{ymd.year(), ymd.month()} + std::chrono::months{months};
  const std::chrono::year_month_day_last last_day{
      target_ym.year(), std::chrono::month_day_last{target_ym.month()}};
  const auto clamped_day = std::min(ymd.day(), last_day.day());
  const year_month_day shifted{target_ym.year(), target_ym.month(), clamped_day};
  return Timestamp{sys_days{shifted}.time_since_epoch() + time_of_day};
}

AccountProfile account_from_json(const json& object) {
  AccountProfile p;
  p.id = require_string(object, "id");
  if (p.id.empty()) throw FormatError("empty account id");
  p.screen_name = require_string(object, "screen_name");
  p.display_name = require_string(object, "name");
  p.description = require_string(object, "description");
  p.url = optional_string(object, "url");
  p.language = to_lower(require_string(object, "lang"));
  p.friends_count = require_count(object, "friends_count");
  p.followers_count = require_count(object, "followers_count");
  p.tweets_count = require_count(object, "statuses_count");
  p.favorites_count = require_count(object, "favourites_count");
  p.list_memberships = require_count(object, "listed_count");
  p.is_protected = require_bool(object, "protected");
  p.geo_enabled = require_bool(object, "geo_enabled");
  p.created_at = parse_timestamp(require_string(object, "created_at"));
  if (const auto last = optional_string(object, "last_tweet_at")) {
    p.last_tweet_at = parse_timestamp(*last);
    if (*p.last_tweet_at < p.created_at) {
      throw FormatError("last_tweet_at precedes created_at for " + p.id);
    }
  }
  return p;
}

json account_to_json(const AccountProfile& p) {
  // nlohmann::json emits keys in sorted order.
  json object;
  object["id"] = p.id;
  object["screen_name"] = p.screen_name;
  object["name"] = p.display_name;
  object["description"] = p.description;
  object["url"] = p.url ? json(*p.url) : json(nullptr);
  object["lang"] = p.language;
  object["friends_count"] = p.friends_count;
  object["followers_count"] = p.followers_count;
  object["statuses_count"] = p.tweets_count;
  object["favourites_count"] = p.favorites_count;
  object["listed_count"] = p.list_memberships;
  object["protected"] = p.is_protected;
  object["geo_enabled"] = p.geo_enabled;
  object["created_at"] = format_timestamp(p.created_at);
  object["last_tweet_at"] =
      p.last_tweet_at ? json(format_timestamp(*p.last_tweet_at)) : json(nullptr);
  return object;
}

std::string serialize_account(const AccountProfile& account) {
  return account_to_json(account).dump();
}

AccountParseResult parse_account_records(const std::filesystem::path& path) {
  std::unordered_set<std::string> seen;
  auto [accounts, skipped] = read_jsonl<AccountProfile>(
      path, account_from_json,
      [&seen](const AccountProfile& p) { return seen.insert(p.id).second; });
  return {std::move(accounts), skipped};
}

void write_account_records(const std::filesystem::path& path,
                           std::span<const AccountProfile> accounts) {
  std::vector<std::string> lines;
  lines.reserve(accounts.size());
  for (const auto& a : accounts) lines.push_back(serialize_account(a));
  write_lines(path, lines);
}

bool is_non_ephemeral(const AccountProfile& account) {
  if (account.friends_count + account.followers_count <= 0) return false;
  if (!account.last_tweet_at) return false;
  return *account.last_tweet_at >= add_calendar_months(account.created_at, 6);
}

bool is_spam_like(const AccountProfile& account) {
  if (account.friends_count <= 0) return false;
  // followers / friends < 0.1, evaluated exactly in integers.
  return account.followers_count * 10 < account.friends_count;
}

SanitizedAccounts sanitize(std::span<const AccountProfile> accounts) {
  SanitizedAccounts out;
  out.report.input_count = accounts.size();
  for (const auto& a : accounts) {
    if (a.language != kEnglish) {
      ++out.report.removed_non_english;
    } else if (!is_non_ephemeral(a)) {
      ++out.report.removed_ephemeral;
    } else if (is_spam_like(a)) {
      ++out.report.removed_spam_like;
    } else {
      out.accounts.push_back(a);
    }
  }
  out.report.output_count = out.accounts.size();
  return out;
}

std::vector<TargetAccount> filter_target_accounts(
    std::span<const TargetAccount> targets, std::int64_t min_followers) {
  if (min_followers < 0) throw InvalidArgument("min_followers must be >= 0");
  std::vector<TargetAccount> kept;
  for (const auto& t : targets) {
    if (t.active_follower_count >= min_followers) kept.push_back(t);
  }
  return kept;
}

TweetParseResult parse_tweet_records(const std::filesystem::path& path) {
  auto [tweets, skipped] = read_jsonl<Tweet>(
      path,
      [](const json& object) {
        Tweet t;
        t.account_id = require_string(object, "account_id");
        if (t.account_id.empty()) throw FormatError("empty account_id");
        t.created_at = parse_timestamp(require_string(object, "created_at"));
        t.text = require_string(object, "text");
        return t;
      },
      [](const Tweet&) { return true; });
  return {std::move(tweets), skipped};
}

void write_tweet_records(const std::filesystem::path& path,
                         std::span<const Tweet> tweets) {
  std::vector<std::string> lines;
  lines.reserve(tweets.size());
  for (const auto& t : tweets) {
    json object;
    object["account_id"] = t.account_id;
    object["created_at"] = format_timestamp(t.created_at);
    object["text"] = t.text;
    lines.push_back(object.dump());
  }
  write_lines(path, lines);
}

}  // namespace anonmine
