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

#ifndef ANONMINE_TESTS_TEST_UTIL_H_
#define ANONMINE_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>

#include "anonmine/ingest.h"
#include "anonmine/namekb.h"

namespace anonmine::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("anonmine_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << text;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Small hand-ranked knowledge base shared by the name tests.
inline NameKnowledgeBase fixture_kb() {
  return NameKnowledgeBase(
      {{"james", 1}, {"mary", 2}, {"adam", 5}, {"crystal", 40}, {"lee", 60}},
      {{"smith", 1}, {"lee", 7}, {"johnson", 2}, {"crystal", 90}},
      {"crystal", "dream", "dreamer", "hope", "the"},
      {{"the", 1}, {"hope", 300}, {"dream", 900}, {"crystal", 5000}});
}

inline AccountProfile make_account(const std::string& id, const std::string& name = "") {
  AccountProfile a;
  a.id = id;
  a.screen_name = id;
  a.display_name = name;
  a.language = "en";
  a.friends_count = 100;
  a.followers_count = 100;
  a.created_at = parse_timestamp("2014-01-01T00:00:00Z");
  a.last_tweet_at = parse_timestamp("2015-01-01T00:00:00Z");
  return a;
}

}  // namespace anonmine::testing

#endif  // ANONMINE_TESTS_TEST_UTIL_H_
