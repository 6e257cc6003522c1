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

#include <gtest/gtest.h>

#include "anonmine/errors.h"
#include "test_util.h"

namespace anonmine {
namespace {

using testing::make_account;

Timestamp ts(const char* text) { return parse_timestamp(text); }

TEST(TimestampTest, ParsesAndFormatsUtc) {
  const Timestamp t = ts("2014-03-05T07:08:09Z");
  EXPECT_EQ(format_timestamp(t), "2014-03-05T07:08:09Z");
  EXPECT_THROW(parse_timestamp("2014-13-01T00:00:00Z"), FormatError);
  EXPECT_THROW(parse_timestamp("yesterday"), FormatError);
}

TEST(TimestampTest, CalendarMonthsClampDay) {
  EXPECT_EQ(add_calendar_months(ts("2014-08-31T12:00:00Z"), 6), ts("2015-02-28T12:00:00Z"));
  EXPECT_EQ(add_calendar_months(ts("2015-08-31T00:00:00Z"), 6), ts("2016-02-29T00:00:00Z"));
  EXPECT_EQ(add_calendar_months(ts("2014-01-15T00:00:00Z"), 6), ts("2014-07-15T00:00:00Z"));
}

TEST(ParseAccountsTest, EmptyFile) {
  testing::TempDir dir;
  testing::write_file(dir / "a.jsonl", "");
  const AccountParseResult r = parse_account_records(dir / "a.jsonl");
  EXPECT_TRUE(r.accounts.empty());
  EXPECT_EQ(r.skipped, 0u);
}

TEST(ParseAccountsTest, ThreeValidLinesInOrder) {
  testing::TempDir dir;
  std::vector<AccountProfile> in;
  for (const char* id : {"b", "a", "c"}) in.push_back(make_account(id, "Name " + std::string(id)));
  in[1].url = "http://example.org";
  in[2].last_tweet_at.reset();
  in[2].is_protected = true;
  write_account_records(dir / "a.jsonl", in);
  const AccountParseResult r = parse_account_records(dir / "a.jsonl");
  EXPECT_EQ(r.skipped, 0u);
  EXPECT_EQ(r.accounts, in);
}

TEST(ParseAccountsTest, TruncatedLineSkipped) {
  testing::TempDir dir;
  const std::string a = serialize_account(make_account("a"));
  const std::string b = serialize_account(make_account("b"));
  testing::write_file(dir / "a.jsonl", a + "\n" + b + "\n" + a.substr(0, a.size() / 2) + "\n");
  const AccountParseResult r = parse_account_records(dir / "a.jsonl");
  ASSERT_EQ(r.accounts.size(), 2u);
  EXPECT_EQ(r.accounts[1].id, "b");
  EXPECT_EQ(r.skipped, 1u);
}

TEST(ParseAccountsTest, MostlyMalformedIsFormatError) {
  testing::TempDir dir;
  testing::write_file(dir / "a.jsonl",
                      serialize_account(make_account("a")) + "\n{bad\nnot json\n");
  EXPECT_THROW(parse_account_records(dir / "a.jsonl"), FormatError);
}

TEST(ParseAccountsTest, MissingFileIsInputError) {
  EXPECT_THROW(parse_account_records("/nonexistent/accounts.jsonl"), InputError);
}

TEST(ParseAccountsTest, SerializeRoundTripIsExact) {
  AccountProfile a = make_account("x", "Ünïcode \"quoted\" name");
  a.description = "line\nbreak";
  a.url = "";
  a.favorites_count = 123456789012;
  const AccountProfile back = account_from_json(account_to_json(a));
  EXPECT_EQ(back, a);
  EXPECT_FALSE(back.has_url());
}

TEST(EphemeralTest, Examples) {
  AccountProfile a = make_account("a");
  a.friends_count = 0;
  a.followers_count = 0;
  EXPECT_FALSE(is_non_ephemeral(a));

  AccountProfile b = make_account("b");
  b.friends_count = 0;
  b.followers_count = 5;
  b.created_at = ts("2014-01-01T00:00:00Z");
  b.last_tweet_at = ts("2014-08-01T00:00:00Z");
  EXPECT_TRUE(is_non_ephemeral(b));
  b.last_tweet_at.reset();
  EXPECT_FALSE(is_non_ephemeral(b));
}

TEST(EphemeralTest, SixMonthBoundaryInclusive) {
  AccountProfile a = make_account("a");
  a.created_at = ts("2014-01-01T00:00:00Z");
  a.last_tweet_at = ts("2014-07-01T00:00:00Z");
  EXPECT_TRUE(is_non_ephemeral(a));
  a.last_tweet_at = ts("2014-06-30T23:59:59Z");
  EXPECT_FALSE(is_non_ephemeral(a));
}

TEST(SpamTest, RatioBoundary) {
  AccountProfile a = make_account("a");
  a.friends_count = 100;
  a.followers_count = 9;
  EXPECT_TRUE(is_spam_like(a));
  a.followers_count = 10;
  EXPECT_FALSE(is_spam_like(a));
  a.friends_count = 0;
  a.followers_count = 0;
  EXPECT_FALSE(is_spam_like(a));
}

TEST(SanitizeTest, EmptyInput) {
  const SanitizedAccounts s = sanitize({});
  EXPECT_TRUE(s.accounts.empty());
  EXPECT_EQ(s.report, SanitizationReport{});
}

TEST(SanitizeTest, CountsFirstFailingFilter) {
  std::vector<AccountProfile> in = {make_account("en1"), make_account("fr")};
  in[1].language = "fr";
  in[1].friends_count = 0;
  in[1].followers_count = 0;  // also ephemeral, counted as language
  AccountProfile spam = make_account("spam");
  spam.friends_count = 200;
  spam.followers_count = 5;
  in.push_back(spam);
  AccountProfile eph = make_account("eph");
  eph.last_tweet_at.reset();
  in.push_back(eph);
  in.push_back(make_account("en2"));

  const SanitizedAccounts s = sanitize(in);
  ASSERT_EQ(s.accounts.size(), 2u);
  EXPECT_EQ(s.accounts[0].id, "en1");
  EXPECT_EQ(s.accounts[1].id, "en2");
  EXPECT_EQ(s.report.input_count, 5u);
  EXPECT_EQ(s.report.removed_non_english, 1u);
  EXPECT_EQ(s.report.removed_ephemeral, 1u);
  EXPECT_EQ(s.report.removed_spam_like, 1u);
  EXPECT_EQ(s.report.output_count, 2u);
}

TEST(SanitizeTest, IdempotentAndConserving) {
  std::vector<AccountProfile> in;
  for (int i = 0; i < 60; ++i) {
    AccountProfile a = make_account("a" + std::to_string(i));
    if (i % 3 == 0) a.language = "es";
    if (i % 4 == 0) a.followers_count = i % 8;
    if (i % 5 == 0) a.last_tweet_at = a.created_at;
    in.push_back(a);
  }
  const SanitizedAccounts once = sanitize(in);
  const SanitizationReport& r = once.report;
  EXPECT_EQ(r.input_count, r.output_count + r.removed_non_english + r.removed_ephemeral +
                               r.removed_spam_like);
  EXPECT_EQ(sanitize(once.accounts).accounts, once.accounts);
}

TEST(FilterTargetsTest, MinFollowersBoundary) {
  const std::vector<TargetAccount> t = {{make_account("a"), 199}, {make_account("b"), 200}};
  const auto kept = filter_target_accounts(t, 200);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].profile.id, "b");
  EXPECT_EQ(filter_target_accounts(t, 0).size(), 2u);
}

TEST(TweetsTest, RoundTrip) {
  testing::TempDir dir;
  const std::vector<Tweet> tweets = {{"a", ts("2014-01-01T00:00:00Z"), "hello, world"},
                                     {"b", ts("2014-01-02T00:00:00Z"), "second\ttweet"}};
  write_tweet_records(dir / "t.jsonl", tweets);
  const TweetParseResult r = parse_tweet_records(dir / "t.jsonl");
  EXPECT_EQ(r.tweets, tweets);
  EXPECT_EQ(r.skipped, 0u);
}

}  // namespace
}  // namespace anonmine
