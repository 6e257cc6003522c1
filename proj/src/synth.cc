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

#include "anonmine/synth.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "anonmine/errors.h"
#include "anonmine/rng.h"

namespace anonmine {
namespace {

constexpr const char* kFirstNames[] = {
    "james", "mary", "john", "patricia", "robert", "jennifer", "michael",
    "linda", "david", "elizabeth", "william", "barbara", "richard", "susan",
    "joseph", "jessica", "thomas", "sarah", "charles", "karen", "christopher",
    "nancy", "daniel", "lisa", "matthew", "betty", "anthony", "margaret",
    "donald", "sandra", "steven", "ashley", "paul", "kimberly", "andrew",
    "emily", "joshua", "donna", "kenneth", "michelle", "kevin", "dorothy",
    "brian", "carol", "george", "amanda", "edward", "melissa", "ronald",
    "deborah", "timothy", "stephanie", "jason", "rebecca", "jeffrey", "sharon",
    "ryan", "laura", "jacob", "cynthia", "gary", "kathleen", "nicholas", "amy",
    "eric", "shirley", "jonathan", "angela", "stephen", "helen", "larry",
    "anna", "justin", "brenda", "scott", "pamela", "brandon", "nicole",
    "benjamin", "emma", "samuel", "samantha", "gregory", "katherine",
    "alexander", "christine", "patrick", "debra", "jack", "rachel", "dennis",
    "catherine", "jerry", "carolyn", "tyler", "janet", "aaron", "ruth", "jose",
    "maria", "adam", "heather", "nathan", "diane", "henry", "virginia",
    "douglas", "julie", "zachary", "joyce", "peter", "victoria", "kyle",
    "olivia", "walter", "kelly", "ethan", "christina", "jeremy", "lauren",
    "harold", "joan", "keith", "evelyn", "christian", "judith", "roger",
    "megan", "noah", "cheryl", "gerald", "andrea", "carl", "hannah", "terry",
    "martha", "sean", "jacqueline", "austin", "frances", "arthur", "gloria",
    "lawrence", "ann", "jesse", "teresa", "dylan", "kathryn", "bryan", "sara",
    "joe", "janice", "jordan", "jean", "billy", "alice", "bruce", "madison",
    "albert", "doris", "willie", "abigail", "gabriel", "julia", "logan",
    "judy", "alan", "grace", "juan", "denise", "wayne", "amber", "elijah",
    "marilyn", "randy", "beverly", "roy", "danielle", "vincent", "theresa",
    "ralph", "sophia", "eugene", "marie", "russell", "diana", "bobby",
    "brittany", "mason", "natalie", "philip", "isabella", "louis", "charlotte",
};

constexpr const char* kLastNames[] = {
    "smith", "johnson", "williams", "jones", "garcia", "miller", "davis",
    "rodriguez", "martinez", "hernandez", "lopez", "gonzalez", "wilson",
    "anderson", "thomas", "taylor", "moore", "jackson", "martin", "lee",
    "perez", "thompson", "harris", "sanchez", "clark", "ramirez", "lewis",
    "robinson", "walker", "allen", "wright", "scott", "torres", "nguyen",
    "flores", "adams", "nelson", "baker", "rivera", "campbell", "mitchell",
    "carter", "roberts", "gomez", "phillips", "evans", "turner", "diaz",
    "parker", "cruz", "edwards", "collins", "reyes", "stewart", "morris",
    "morales", "murphy", "rogers", "gutierrez", "ortiz", "morgan", "cooper",
    "peterson", "bailey", "reed", "kelly", "howard", "ramos", "kim", "cox",
    "ward", "richardson", "watson", "brooks", "chavez", "bennett", "gray",
    "mendoza", "ruiz", "hughes", "price", "alvarez", "castillo", "sanders",
    "patel", "myers", "long", "ross", "foster", "jimenez", "powell", "jenkins",
    "perry", "russell", "sullivan", "fisher", "henderson", "coleman",
    "simmons", "patterson", "jordan", "reynolds", "hamilton", "graham",
    "wallace", "gibson", "ellis", "stevens", "murray", "ford", "marshall",
    "owens", "mcdonald", "harrison", "fernandez", "woods", "washington",
    "kennedy", "wells", "vargas", "henry", "chen", "freeman", "webb", "tucker",
    "guzman", "burns", "crawford", "olson", "simpson", "porter", "hunter",
    "gordon", "mendez", "silva", "shaw", "snyder", "mason", "dixon", "munoz",
    "hunt", "hicks", "holmes", "palmer", "wagner", "robertson", "hayes",
    "warren", "black", "daniels", "stephens", "gardner", "payne", "grant",
    "dunn", "pierce", "arnold", "spencer", "stone", "hawkins", "hudson",
    "santos", "knight", "ferguson", "rose", "burke", "hansen", "riley",
    "harper", "carroll", "lane", "andrews", "ruiz", "fox", "armstrong",
};

// Ordinary English words that also occur as names.
constexpr const char* kCommonWordNames[] = {
    "crystal", "may", "love", "hope", "gay", "clay", "rose", "joy",
    "grant", "hunter", "mark", "frank", "summer", "dawn", "faith",
    "will", "guy", "rich", "king", "young", "green", "brown", "black",
    "white", "wood", "hill", "bell", "page", "cook", "ray", "sky",
    "storm", "river", "star", "grace", "hunt", "stone", "fox",
};

// Frequency-ordered common English words (no proper nouns).
constexpr const char* kEnglishWords[] = {
    "time", "year", "people", "way", "day", "man", "thing", "woman", "life",
    "child", "world", "school", "state", "family", "student", "group",
    "country", "problem", "hand", "part", "place", "case", "week", "company",
    "system", "program", "question", "work", "government", "number", "night",
    "point", "home", "water", "room", "mother", "area", "money", "story",
    "fact", "month", "lot", "right", "study", "book", "eye", "job", "word",
    "business", "issue", "side", "kind", "head", "house", "service", "friend",
    "father", "power", "hour", "game", "line", "end", "member", "law", "car",
    "city", "community", "name", "team", "minute", "idea", "kid", "body",
    "information", "back", "parent", "face", "others", "level", "office",
    "door", "health", "person", "art", "war", "history", "party", "result",
    "change", "morning", "reason", "research", "girl", "moment", "air",
    "teacher", "force", "education", "foot", "boy", "age", "policy",
    "music", "market", "sense", "nation", "plan", "college", "interest",
    "death", "experience", "effect", "class", "control", "care", "field",
    "development", "role", "effort", "rate", "heart", "drug", "show",
    "leader", "light", "voice", "wife", "police", "mind", "price", "report",
    "decision", "son", "view", "relationship", "town", "road", "arm",
    "difference", "value", "building", "action", "model", "season",
    "society", "tax", "director", "position", "player", "record", "paper",
    "space", "ground", "form", "event", "official", "matter", "center",
    "couple", "site", "project", "activity", "table", "need", "court",
    "oil", "situation", "cost", "industry", "figure", "street", "image",
    "phone", "data", "picture", "practice", "piece", "land", "product",
    "doctor", "wall", "patient", "worker", "news", "test", "movie", "north",
    "shadow", "dark", "wolf", "silent", "ghost", "dream", "night", "fire",
    "ice", "moon", "sun", "rain", "wind", "cloud", "blue", "red", "gold",
    "silver", "iron", "steel", "lion", "tiger", "eagle", "raven", "crow",
    "dragon", "knight", "angel", "devil", "demon", "secret", "hidden",
    "lost", "lonely", "wild", "free", "lucky", "happy", "crazy", "little",
    "big", "small", "quiet", "loud", "fast", "slow", "cold", "warm", "sweet",
    "bitter", "broken", "empty", "random", "simple", "strange", "mystery",
    "thunder", "ocean", "forest", "mountain", "desert", "island", "valley",
    "garden", "flower", "leaf", "tree", "root", "seed", "stick", "cat",
    "dog", "bird", "fish", "bear", "snake", "spider", "monkey", "panda",
    "coffee", "tea", "pizza", "cookie", "candy", "sugar", "honey", "pepper",
    "salt", "bread", "butter", "cheese", "apple", "lemon", "cherry", "peach",
    "music", "song", "dance", "rock", "punk", "metal", "jazz", "soul",
    "gamer", "player", "hacker", "coder", "writer", "reader", "dreamer",
    "rider", "runner", "walker", "watcher", "keeper", "seeker", "maker",
};

constexpr char kConsonants[] = "bdfgklmnprstvz";
constexpr char kVowels[] = "aeiou";

// Anonymous, PartiallyAnonymous, Identifiable, Unclassifiable.
struct CounterModel {
  double friends_mu, followers_mu, tweets_mu, favorites_mu, lists_mu;
  double p_protected, p_geo, p_url;
};

constexpr CounterModel kCounterModels[] = {
    {5.7, 5.0, 7.3, 5.6, 0.5, 0.22, 0.15, 0.0},
    {5.6, 5.3, 7.1, 5.1, 0.8, 0.12, 0.25, 0.25},
    {5.5, 5.5, 6.8, 4.8, 1.0, 0.06, 0.35, 0.35},
    {5.0, 6.6, 7.0, 3.0, 2.2, 0.02, 0.20, 1.0},
};

std::size_t label_index(AnonymityLabel label) {
  return static_cast<std::size_t>(label);
}

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 32);
  return s;
}

std::string random_syllables(Rng& rng, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    s.push_back(kConsonants[rng.below(sizeof(kConsonants) - 1)]);
    s.push_back(kVowels[rng.below(sizeof(kVowels) - 1)]);
    if (rng.bernoulli(0.3)) s.push_back(kConsonants[rng.below(sizeof(kConsonants) - 1)]);
  }
  return s;
}

bool is_listed_name(const NameKnowledgeBase& kb, const std::string& token) {
  return kb.first_name_rank(token).has_value() || kb.last_name_rank(token).has_value();
}

// Pronounceable token that is not an exact list name.
std::string pseudo_word(const NameKnowledgeBase& kb, Rng& rng) {
  for (;;) {
    std::string w = random_syllables(rng, 2 + rng.below(2));
    if (!is_listed_name(kb, w) && !kb.is_scrabble_word(w)) return w;
  }
}

struct NamePools {
  std::vector<double> first_weights;
  std::vector<double> last_weights;
  // Scrabble words that are also first / last names.
  std::vector<std::string> word_first_names;
  std::vector<std::string> word_last_names;
  // Scrabble words that are not names.
  std::vector<std::string> plain_words;
};

std::string english_non_name(const NamePools& pools, Rng& rng) {
  return pools.plain_words[rng.below(pools.plain_words.size())];
}

// Rank-weighted draw from a list sorted by rank.
const std::string& draw_ranked(const std::vector<RankedToken>& list,
                               const std::vector<double>& weights, Rng& rng) {
  return list[rng.categorical(weights)].token;
}

std::vector<double> zipf_weights(const std::vector<RankedToken>& list) {
  std::vector<double> w;
  for (const RankedToken& t : list) w.push_back(1.0 / std::pow(static_cast<double>(t.rank), 0.8));
  return w;
}

std::vector<RankedToken> ranked(std::span<const char* const> tokens) {
  std::vector<RankedToken> out;
  std::set<std::string> seen;
  for (const char* t : tokens) {
    if (seen.insert(t).second) {
      out.push_back({t, static_cast<Rank>(out.size() + 1)});
    }
  }
  return out;
}

std::int64_t lognormal_count(Rng& rng, double mu, double sigma) {
  return static_cast<std::int64_t>(std::floor(rng.lognormal(mu, sigma)));
}

std::string anonymous_name(const NameKnowledgeBase& kb, const NamePools& pools,
                           Rng& rng) {
  const double u = rng.uniform();
  if (u < 0.25) return pseudo_word(kb, rng) + std::to_string(rng.below(100));
  if (u < 0.5) return capitalize(pseudo_word(kb, rng)) + ' ' + capitalize(pseudo_word(kb, rng));
  if (u < 0.7) return capitalize(english_non_name(pools, rng)) + ' ' +
                      capitalize(english_non_name(pools, rng));
  if (u < 0.85) return english_non_name(pools, rng) + english_non_name(pools, rng);
  return capitalize(pseudo_word(kb, rng));
}

NamePools make_pools(const KnowledgeBaseLists& lists, const NameKnowledgeBase& kb) {
  NamePools pools;
  pools.first_weights = zipf_weights(lists.first_names);
  pools.last_weights = zipf_weights(lists.last_names);
  for (const RankedToken& t : lists.first_names) {
    if (kb.is_scrabble_word(t.token)) pools.word_first_names.push_back(t.token);
  }
  for (const RankedToken& t : lists.last_names) {
    if (kb.is_scrabble_word(t.token)) pools.word_last_names.push_back(t.token);
  }
  for (const std::string& w : lists.scrabble_words) {
    if (!is_listed_name(kb, w) && w.size() >= 3) pools.plain_words.push_back(w);
  }
  if (pools.plain_words.empty() || pools.word_first_names.empty() ||
      pools.word_last_names.empty()) {
    throw InvalidArgument(
        "knowledge base needs plain Scrabble words and word-names in both name lists");
  }
  return pools;
}

}  // namespace

std::span<const char* const> common_word_names() { return kCommonWordNames; }

KnowledgeBaseLists generate_knowledge_base_lists() {
  KnowledgeBaseLists lists;
  // Word-names take middling ranks: popular enough to be matched often.
  std::vector<const char*> first(std::begin(kFirstNames), std::end(kFirstNames));
  std::vector<const char*> last(std::begin(kLastNames), std::end(kLastNames));
  for (std::size_t i = 0; i < std::size(kCommonWordNames); ++i) {
    first.insert(first.begin() + static_cast<std::ptrdiff_t>(20 + 4 * i),
                 kCommonWordNames[i]);
    last.insert(last.begin() + static_cast<std::ptrdiff_t>(20 + 4 * i),
                kCommonWordNames[i]);
  }
  lists.first_names = ranked(first);
  lists.last_names = ranked(last);

  std::vector<const char*> words(std::begin(kEnglishWords), std::end(kEnglishWords));
  for (std::size_t i = 0; i < std::size(kCommonWordNames); ++i) {
    words.insert(words.begin() + static_cast<std::ptrdiff_t>(10 + 7 * i),
                 kCommonWordNames[i]);
  }
  lists.word_frequencies = ranked(words);
  for (const RankedToken& t : lists.word_frequencies) {
    lists.scrabble_words.push_back(t.token);
  }
  std::sort(lists.scrabble_words.begin(), lists.scrabble_words.end());
  return lists;
}

NameKnowledgeBase generate_knowledge_base() {
  const KnowledgeBaseLists l = generate_knowledge_base_lists();
  return NameKnowledgeBase(l.first_names, l.last_names, l.scrabble_words,
                           l.word_frequencies);
}

void ProfileConfig::validate() const {
  double sum = 0.0;
  for (double p : label_mix) {
    if (!(p >= 0.0)) throw InvalidArgument("label mix entries must be >= 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("label mix must sum to 1");
  for (double p : {adversarial_fraction, identifiable_noise_fraction, dirty_fraction}) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("fractions must lie in [0, 1]");
  }
}

std::vector<SynthProfile> generate_profiles(const KnowledgeBaseLists& lists,
                                            const ProfileConfig& cfg,
                                            std::uint64_t seed) {
  cfg.validate();
  const NameKnowledgeBase kb(lists.first_names, lists.last_names, lists.scrabble_words,
                             lists.word_frequencies);
  const NamePools pools = make_pools(lists, kb);

  Rng rng(seed);
  const auto epoch = parse_timestamp("2007-01-01T00:00:00Z");
  const std::size_t width = std::to_string(cfg.n_profiles).size();
  std::vector<SynthProfile> out;
  out.reserve(cfg.n_profiles);
  for (std::size_t i = 0; i < cfg.n_profiles; ++i) {
    SynthProfile sp;
    sp.label = kAllAnonymityLabels[rng.categorical(cfg.label_mix)];
    AccountProfile& p = sp.profile;
    std::string number = std::to_string(i);
    p.id = cfg.id_prefix + std::string(width - number.size(), '0') + number;
    p.language = std::string(kEnglish);

    auto first = [&] {
      return capitalize(draw_ranked(lists.first_names, pools.first_weights, rng));
    };
    auto last = [&] {
      return capitalize(draw_ranked(lists.last_names, pools.last_weights, rng));
    };
    switch (sp.label) {
      case AnonymityLabel::kAnonymous:
        if (rng.bernoulli(cfg.adversarial_fraction)) {
          sp.adversarial = true;
          p.display_name =
              capitalize(pools.word_first_names[rng.below(pools.word_first_names.size())]) +
              ' ' +
              capitalize(pools.word_last_names[rng.below(pools.word_last_names.size())]);
        } else {
          p.display_name = anonymous_name(kb, pools, rng);
        }
        break;
      case AnonymityLabel::kPartiallyAnonymous: {
        const std::string name = rng.bernoulli(0.6) ? first() : last();
        const double u = rng.uniform();
        if (u < 0.5) {
          p.display_name = name;
        } else if (u < 0.8) {
          p.display_name = name + ' ' + capitalize(pseudo_word(kb, rng));
        } else {
          p.display_name = capitalize(english_non_name(pools, rng)) + ' ' + name;
        }
        break;
      }
      case AnonymityLabel::kIdentifiable:
        if (rng.bernoulli(cfg.identifiable_noise_fraction)) {
          sp.adversarial = true;
          if (rng.bernoulli(0.3)) {
            std::string f = first(), l = last();
            std::transform(f.begin(), f.end(), f.begin(), ::tolower);
            std::transform(l.begin(), l.end(), l.begin(), ::tolower);
            p.display_name = f + l;
          } else {
            p.display_name =
                capitalize(pseudo_word(kb, rng)) + ' ' + capitalize(pseudo_word(kb, rng));
          }
        } else if (rng.bernoulli(0.15)) {
          p.display_name = first() + ' ' + std::string(1, static_cast<char>('A' + rng.below(26))) +
                           ' ' + last();
        } else {
          p.display_name = first() + ' ' + last();
        }
        break;
      case AnonymityLabel::kUnclassifiable:
        p.display_name = rng.bernoulli(0.5)
                             ? capitalize(english_non_name(pools, rng)) + ' ' +
                                   capitalize(english_non_name(pools, rng))
                             : capitalize(pseudo_word(kb, rng)) + " News";
        break;
    }

    const CounterModel& m = kCounterModels[label_index(sp.label)];
    p.friends_count = lognormal_count(rng, m.friends_mu, 1.0);
    p.followers_count = lognormal_count(rng, m.followers_mu, 1.2);
    p.tweets_count = lognormal_count(rng, m.tweets_mu, 1.4);
    p.favorites_count = lognormal_count(rng, m.favorites_mu, 1.5);
    p.list_memberships = std::max<std::int64_t>(0, lognormal_count(rng, m.lists_mu, 1.0) - 1);
    p.is_protected = rng.bernoulli(m.p_protected);
    p.geo_enabled = rng.bernoulli(m.p_geo);
    if (rng.bernoulli(m.p_url)) p.url = "http://example.com/" + p.id;
    p.screen_name = "user_" + p.id;

    p.created_at = epoch + std::chrono::days(rng.below(6 * 365));
    p.last_tweet_at = add_calendar_months(p.created_at, 6 + static_cast<int>(rng.below(48))) +
                      std::chrono::hours(rng.below(24 * 28));
    // Clean profiles satisfy every sanitization filter.
    p.friends_count = std::max<std::int64_t>(p.friends_count, 1);
    p.followers_count = std::max(p.followers_count, (p.friends_count + 9) / 10);

    if (rng.bernoulli(cfg.dirty_fraction)) {
      sp.dirty = true;
      switch (rng.below(3)) {
        case 0:
          p.language = rng.bernoulli(0.5) ? "es" : "ja";
          break;
        case 1:
          p.last_tweet_at = p.created_at + std::chrono::days(rng.below(150));
          break;
        default:
          p.friends_count = 1000 + static_cast<std::int64_t>(rng.below(4000));
          p.followers_count = static_cast<std::int64_t>(rng.below(50));
          break;
      }
    }
    out.push_back(std::move(sp));
  }
  return out;
}

void FollowGraphConfig::validate() const {
  if (followers_min < 1 || followers_min > followers_max) {
    throw InvalidArgument("follower range is empty");
  }
  for (double p : {sensitive_fraction, anonymity_bias}) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("probabilities must lie in [0, 1]");
  }
}

std::vector<SynthTarget> generate_follow_graph(std::span<const SynthProfile> population,
                                               const FollowGraphConfig& cfg,
                                               std::uint64_t seed) {
  cfg.validate();
  if (cfg.n_targets == 0) return {};
  if (cfg.followers_max > population.size()) {
    throw InvalidArgument("follower range exceeds the population of " +
                          std::to_string(population.size()));
  }
  const double tilt = 1.0 + 4.0 * cfg.anonymity_bias;
  Rng rng(seed);
  const std::size_t width = std::to_string(cfg.n_targets).size();
  const auto epoch = parse_timestamp("2008-01-01T00:00:00Z");

  // Exactly round(n * fraction) sensitive targets, in shuffled positions.
  std::vector<char> sensitive(cfg.n_targets, 0);
  const auto n_sensitive = static_cast<std::size_t>(
      std::llround(cfg.sensitive_fraction * static_cast<double>(cfg.n_targets)));
  std::fill_n(sensitive.begin(), n_sensitive, 1);
  rng.shuffle(sensitive);

  std::vector<SynthTarget> targets;
  targets.reserve(cfg.n_targets);
  std::vector<std::pair<double, std::size_t>> keys(population.size());
  for (std::size_t t = 0; t < cfg.n_targets; ++t) {
    SynthTarget target;
    target.sensitive = sensitive[t] != 0;
    AccountProfile& p = target.account.profile;
    const std::string number = std::to_string(t);
    p.id = "t" + std::string(width - number.size(), '0') + number;
    p.screen_name = "target_" + p.id;
    p.display_name = "Target " + p.id;
    p.language = std::string(kEnglish);
    p.friends_count = 1 + static_cast<std::int64_t>(rng.below(500));
    p.tweets_count = 100 + static_cast<std::int64_t>(rng.below(10000));
    p.created_at = epoch + std::chrono::days(rng.below(1000));
    p.last_tweet_at = add_calendar_months(p.created_at, 24);

    const auto n = static_cast<std::size_t>(
        rng.between(static_cast<std::int64_t>(cfg.followers_min),
                    static_cast<std::int64_t>(cfg.followers_max)));
    // Weighted sampling without replacement: largest u^(1/w) keys.
    for (std::size_t i = 0; i < population.size(); ++i) {
      double w = 1.0;
      if (population[i].label == AnonymityLabel::kAnonymous) {
        w = target.sensitive ? tilt : 1.0 / tilt;
      } else if (population[i].label == AnonymityLabel::kIdentifiable) {
        w = target.sensitive ? 1.0 / tilt : tilt;
      }
      const double u = std::max(rng.uniform(), 1e-300);
      keys[i] = {std::log(u) / w, i};
    }
    std::partial_sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(n),
                      keys.end(), [](const auto& a, const auto& b) {
                        return a.first != b.first ? a.first > b.first : a.second < b.second;
                      });
    std::vector<std::size_t> chosen;
    for (std::size_t k = 0; k < n; ++k) chosen.push_back(keys[k].second);
    std::sort(chosen.begin(), chosen.end());
    for (std::size_t i : chosen) target.follower_ids.push_back(population[i].profile.id);

    p.followers_count = static_cast<std::int64_t>(n);
    target.account.active_follower_count = static_cast<std::int64_t>(n);
    targets.push_back(std::move(target));
  }
  return targets;
}

void TopicCorpusConfig::validate() const {
  if (n_topics < 1) throw InvalidArgument("need at least one true topic");
  if (vocab_size < n_topics) throw InvalidArgument("vocabulary smaller than topic count");
  if (doc_length < 1) throw InvalidArgument("documents need at least one token");
  if (!(doc_alpha >= 0.0)) throw InvalidArgument("doc_alpha must be >= 0");
  if (!(group_skew >= 0.0 && group_skew <= 1.0)) {
    throw InvalidArgument("group_skew must lie in [0, 1]");
  }
}

std::string synthetic_word(std::size_t index) {
  constexpr std::size_t kC = sizeof(kConsonants) - 1;
  constexpr std::size_t kV = sizeof(kVowels) - 1;
  constexpr std::size_t kSyllables = kC * kV;
  constexpr std::size_t kSpace = kSyllables * kSyllables * kSyllables;
  std::size_t j = (index % kSpace * 104729 + 12345) % kSpace;
  std::string w;
  for (int s = 0; s < 3; ++s) {
    const std::size_t syl = j % kSyllables;
    j /= kSyllables;
    w.push_back(kConsonants[syl / kV]);
    w.push_back(kVowels[syl % kV]);
  }
  if (index >= kSpace) w += std::to_string(index / kSpace);
  return w;
}

SynthCorpus generate_topic_corpus(const TopicCorpusConfig& cfg, std::uint64_t seed) {
  std::vector<GroupedAccount> docs;
  const std::size_t width = std::to_string(cfg.n_docs).size();
  for (std::size_t d = 0; d < cfg.n_docs; ++d) {
    const std::string number = std::to_string(d);
    docs.push_back({"d" + std::string(width - number.size(), '0') + number,
                    d % 2 == 0 ? cfg.group_a : cfg.group_b});
  }
  return generate_topic_corpus(cfg, seed, docs);
}

SynthCorpus generate_topic_corpus(const TopicCorpusConfig& cfg, std::uint64_t seed,
                                  std::span<const GroupedAccount> documents) {
  cfg.validate();
  const std::size_t k = cfg.n_topics;
  const std::size_t v = cfg.vocab_size;
  Rng rng(seed);

  // Topic t owns words [t*v/k, (t+1)*v/k).
  SynthCorpus out;
  out.topic_word.assign(k * v, 0.0);
  std::vector<std::vector<double>> block_weights(k);
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t lo = t * v / k, hi = (t + 1) * v / k;
    for (std::size_t w = lo; w < hi; ++w) {
      out.topic_word[t * v + w] = 1.0 / static_cast<double>(hi - lo);
    }
    block_weights[t].assign(out.topic_word.begin() + static_cast<std::ptrdiff_t>(t * v),
                            out.topic_word.begin() + static_cast<std::ptrdiff_t>((t + 1) * v));
  }

  std::vector<double> pref_a(k), pref_b(k);
  for (std::size_t t = 0; t < k; ++t) {
    const bool even = t % 2 == 0;
    pref_a[t] = even ? 1.0 + cfg.group_skew : 1.0 - cfg.group_skew;
    pref_b[t] = even ? 1.0 - cfg.group_skew : 1.0 + cfg.group_skew;
  }
  // A single topic has nothing to skew.
  if (k == 1) pref_a[0] = pref_b[0] = 1.0;

  std::vector<std::vector<std::string>> token_lists;
  std::vector<std::string> ids, groups;
  out.doc_topic.assign(documents.size() * k, 0.0);
  for (std::size_t d = 0; d < documents.size(); ++d) {
    const std::vector<double>& pref = documents[d].group == cfg.group_a ? pref_a : pref_b;
    std::vector<double> theta(k, 0.0);
    if (cfg.doc_alpha == 0.0) {
      theta[rng.categorical(pref)] = 1.0;
    } else {
      const double total = std::accumulate(pref.begin(), pref.end(), 0.0);
      std::vector<double> alpha(k);
      for (std::size_t t = 0; t < k; ++t) {
        alpha[t] = std::max(1e-3, cfg.doc_alpha * static_cast<double>(k) * pref[t] / total);
      }
      theta = rng.dirichlet(alpha);
    }
    std::copy(theta.begin(), theta.end(),
              out.doc_topic.begin() + static_cast<std::ptrdiff_t>(d * k));
    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < cfg.doc_length; ++i) {
      const std::size_t t = rng.categorical(theta);
      tokens.push_back(synthetic_word(rng.categorical(block_weights[t])));
    }
    token_lists.push_back(std::move(tokens));
    ids.push_back(documents[d].id);
    groups.push_back(documents[d].group);
  }
  out.corpus = make_corpus(std::move(ids), std::move(groups), token_lists);

  // Re-express topic_word over the corpus vocabulary (sorted, words that
  // never occurred are absent).
  std::vector<double> remapped(k * out.corpus.vocabulary.size(), 0.0);
  for (std::size_t w = 0; w < v; ++w) {
    const auto it = std::lower_bound(out.corpus.vocabulary.begin(),
                                     out.corpus.vocabulary.end(), synthetic_word(w));
    if (it == out.corpus.vocabulary.end() || *it != synthetic_word(w)) continue;
    const auto idx = static_cast<std::size_t>(it - out.corpus.vocabulary.begin());
    for (std::size_t t = 0; t < k; ++t) {
      remapped[t * out.corpus.vocabulary.size() + idx] = out.topic_word[t * v + w];
    }
  }
  out.topic_word = std::move(remapped);
  return out;
}

std::vector<Tweet> render_tweets(const Corpus& corpus, Timestamp start,
                                 std::size_t words_per_tweet) {
  if (words_per_tweet == 0) throw InvalidArgument("words_per_tweet must be positive");
  std::vector<Tweet> tweets;
  for (const Document& doc : corpus.documents) {
    Timestamp at = start;
    for (std::size_t i = 0; i < doc.tokens.size(); i += words_per_tweet) {
      Tweet tweet{doc.id, at, {}};
      for (std::size_t j = i; j < std::min(doc.tokens.size(), i + words_per_tweet); ++j) {
        if (!tweet.text.empty()) tweet.text += ' ';
        tweet.text += corpus.vocabulary[doc.tokens[j]];
      }
      tweets.push_back(std::move(tweet));
      at += std::chrono::hours(1);
    }
  }
  return tweets;
}

}  // namespace anonmine
