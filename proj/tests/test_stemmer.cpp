#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "abusedet/stemmer.hpp"

using namespace abusedet;

TEST_CASE("common forms reduce to shared stems") {
    CHECK(stem_french("continuer") == "continu");
    CHECK(stem_french("continuera") == "continu");
    CHECK(stem_french("majestueux") == "majestu");
    CHECK(stem_french("majestueuse") == "majestu");
    CHECK(stem_french("voler") == "vol");
    CHECK(stem_french("volé") == "vol");
}

TEST_CASE("stemming is idempotent on already stemmed output") {
    for (std::string w : {"continu", "majestu", "vol", "chien", "idiot"}) {
        CHECK(stem_french(w) == stem_french(stem_french(w)));
    }
}

TEST_CASE("short and degenerate inputs") {
    CHECK(stem_french("") == "");
    CHECK(stem_french("a") == "a");
    CHECK(stem_french("y") == "y");
    CHECK(stem_french("qu") == "qu");
}

TEST_CASE("frozen reference vectors") {
    std::ifstream in(std::string(TEST_DATA_DIR) + "/french_stem_vectors.tsv");
    REQUIRE(in.good());
    std::string line;
    int checked = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto tab = line.find('\t');
        REQUIRE(tab != std::string::npos);
        std::string word = line.substr(0, tab);
        std::string expected = line.substr(tab + 1);
        std::string got = stem_french(word);
        if (got != expected) {
            CAPTURE(word);
            CHECK(got == expected);
        }
        ++checked;
    }
    CHECK(checked > 3000);
}
