#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "abusedet/fuzzyindex.hpp"

using namespace abusedet;

namespace {

std::string random_word(std::mt19937_64& rng, size_t min_len, size_t max_len) {
    std::uniform_int_distribution<size_t> len_d(min_len, max_len);
    std::uniform_int_distribution<int> ch_d(0, 25);
    std::string w;
    size_t n = len_d(rng);
    for (size_t i = 0; i < n; ++i) w.push_back(static_cast<char>('a' + ch_d(rng)));
    return w;
}

std::vector<std::string> make_dictionary(size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::set<std::string> dict;
    while (dict.size() < n) dict.insert(random_word(rng, 3, 10));
    return {dict.begin(), dict.end()};
}

}  // namespace

TEST_CASE("levenshtein basics") {
    CHECK(levenshtein("@ss", "ass") == 1);
    CHECK(levenshtein("abc", "abc") == 0);
    CHECK(levenshtein("kitten", "sitting") == 3);
    CHECK(levenshtein("", "abc") == 3);
    CHECK(levenshtein("", "") == 0);
    CHECK(levenshtein("héllo", "hello") == 1);
    CHECK(levenshtein("c0nnard", "connard") == 1);
}

TEST_CASE("levenshtein metric properties on random triples") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 10000; ++t) {
        std::string a = random_word(rng, 0, 8);
        std::string b = random_word(rng, 0, 8);
        std::string c = random_word(rng, 0, 8);
        size_t ab = levenshtein(a, b);
        size_t ba = levenshtein(b, a);
        REQUIRE(ab == ba);
        REQUIRE((ab == 0) == (a == b));
        REQUIRE(levenshtein(a, c) <= ab + levenshtein(b, c));
    }
}

TEST_CASE("bounded levenshtein") {
    CHECK(levenshtein_bounded("@ss", "ass", 2) == size_t(1));
    CHECK_FALSE(levenshtein_bounded("aaaa", "zzzz", 2).has_value());
    CHECK(levenshtein_bounded("abc", "abc", 0) == size_t(0));
    CHECK_FALSE(levenshtein_bounded("ab", "abcd", 1).has_value());
    CHECK(levenshtein_bounded("", "ab", 2) == size_t(2));

    std::mt19937_64 rng(11);
    for (int t = 0; t < 5000; ++t) {
        std::string a = random_word(rng, 0, 9);
        std::string b = random_word(rng, 0, 9);
        size_t d = levenshtein(a, b);
        auto bounded = levenshtein_bounded(a, b, 2);
        if (d <= 2) {
            REQUIRE(bounded == d);
        } else {
            REQUIRE_FALSE(bounded.has_value());
        }
        REQUIRE(levenshtein_bounded(a, b, 1000) == d);
    }
}

TEST_CASE("index basics") {
    EditDistanceIndex empty;
    CHECK(empty.size() == 0);
    CHECK(empty.query_within("x", 2).empty());

    auto index = EditDistanceIndex::build({"a", "a", "b"});
    CHECK(index.size() == 2);

    auto idx = EditDistanceIndex::build({"ass", "bass", "kiss"});
    auto hits = idx.query_within("@ss", 2);
    REQUIRE(hits.size() == 3);
    CHECK(hits[0].word == "ass");
    CHECK(hits[0].distance == 1);
    CHECK(hits[1].word == "bass");
    CHECK(hits[1].distance == 2);
    CHECK(hits[2].word == "kiss");
    CHECK(hits[2].distance == 2);

    auto self = idx.query_within("bass", 0);
    REQUIRE(self.size() == 1);
    CHECK(self[0].word == "bass");
    CHECK(self[0].distance == 0);

    CHECK(idx.query_within("zzzzzz", 1).empty());
}

TEST_CASE("index equals brute force on 20k dictionary") {
    auto dict = make_dictionary(20000, 42);
    auto index = EditDistanceIndex::build(dict);
    REQUIRE(index.size() == dict.size());

    std::mt19937_64 rng(43);
    std::uniform_int_distribution<size_t> pick(0, dict.size() - 1);
    index.reset_visits();
    const int n_queries = 1000;
    for (int q = 0; q < n_queries; ++q) {
        std::string query;
        if (q % 3 == 0) {
            query = random_word(rng, 3, 10);
        } else {
            query = dict[pick(rng)];
            std::uniform_int_distribution<size_t> pos(0, query.size() - 1);
            query[pos(rng)] = static_cast<char>('a' + (rng() % 26));
        }
        auto hits = index.query_within(query, 2);
        std::vector<EditDistanceIndex::Hit> brute;
        for (const auto& w : dict) {
            if (auto d = levenshtein_bounded(query, w, 2)) brute.push_back({w, *d});
        }
        std::sort(brute.begin(), brute.end(), [](const auto& a, const auto& b) {
            return a.distance != b.distance ? a.distance < b.distance : a.word < b.word;
        });
        REQUIRE(hits.size() == brute.size());
        for (size_t i = 0; i < hits.size(); ++i) {
            REQUIRE(hits[i].word == brute[i].word);
            REQUIRE(hits[i].distance == brute[i].distance);
        }
    }
    double mean_visits = double(index.visits()) / n_queries;
    CHECK(mean_visits < double(dict.size()));
}
