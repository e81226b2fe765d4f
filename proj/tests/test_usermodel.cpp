#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "abusedet/usermodel.hpp"

using namespace abusedet;

namespace {

TokenizedText toks(std::vector<std::string> words) {
    TokenizedText t;
    t.tokens = std::move(words);
    return t;
}

Message make_msg(const std::string& id, const std::string& author, const std::string& channel,
                 int64_t ts, const std::string& text) {
    Message m;
    m.id = id;
    m.kind = MessageKind::Chat;
    m.author = author;
    m.channel = channel;
    m.ts = ts;
    m.text = text;
    return m;
}

}  // namespace

TEST_CASE("num_respondents counts distinct non-target authors") {
    Message target = make_msg("t", "u0", "c", 10, "x");
    Message r1 = make_msg("a", "u1", "c", 11, "x");
    Message r2 = make_msg("b", "u2", "c", 12, "x");
    Message r3 = make_msg("c", "u1", "c", 13, "x");
    Message self = make_msg("d", "u0", "c", 14, "x");

    ContextWindow ctx;
    ctx.target = &target;
    ctx.after = {&r1, &r2, &r3};
    CHECK(num_respondents(ctx) == 2);

    ctx.after = {};
    CHECK(num_respondents(ctx) == 0);

    ctx.after = {&self, &self};
    CHECK(num_respondents(ctx) == 0);
}

TEST_CASE("message_ngrams respects boundaries") {
    auto one = message_ngrams({toks({"a", "b", "c"})}, 2);
    REQUIRE(one.size() == 2);
    CHECK(one[0] == std::string("a") + '\x1f' + "b");
    CHECK(one[1] == std::string("b") + '\x1f' + "c");

    auto two = message_ngrams({toks({"a", "b"}), toks({"c", "d"})}, 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == std::string("a") + '\x1f' + "b");
    CHECK(two[1] == std::string("c") + '\x1f' + "d");

    CHECK(message_ngrams({toks({"a"})}, 2).empty());
    CHECK(message_ngrams({}, 2).empty());

    // Exactly sum of max(0, len - n + 1) states.
    auto mixed = message_ngrams({toks({"a", "b", "c", "d"}), toks({"x"}), toks({"y", "z"})}, 2);
    CHECK(mixed.size() == 3 + 0 + 1);

    auto unigrams = message_ngrams({toks({"a", "b"})}, 1);
    REQUIRE(unigrams.size() == 2);
    CHECK(unigrams[0] == "a");
}

TEST_CASE("build_markov counts consecutive pairs") {
    PneConfig cfg;
    std::vector<std::string> history = {"ab", "ba", "ab", "ba"};
    MarkovModel m = build_markov(history, cfg);
    CHECK(m.bigram_count == 4);
    CHECK(m.transitions.at("ab").at("ba") == 2);
    CHECK(m.transitions.at("ba").at("ab") == 1);
    CHECK(m.totals.at("ab") == 2);
    CHECK(m.totals.at("ba") == 1);
    CHECK(m.successor_vocab == 2);

    MarkovModel empty = build_markov({}, cfg);
    CHECK(empty.bigram_count == 0);
    CHECK(empty.transitions.empty());

    MarkovModel single = build_markov({"ab"}, cfg);
    CHECK(single.bigram_count == 1);
    CHECK(single.transitions.empty());
}

TEST_CASE("emission_probability smoothing") {
    PneConfig cfg;
    cfg.alpha = 1e-12;
    MarkovModel m = build_markov({"ab", "ba", "ab", "ba", "ab"}, cfg);
    // (ab -> ba) observed twice out of two ab departures: MLE limit 1.
    CHECK(emission_probability(m, "ab", "ba") == doctest::Approx(1.0).epsilon(1e-6));

    cfg.alpha = 0.1;
    MarkovModel m2 = build_markov({"a", "b", "a", "c", "a", "b"}, cfg);
    // successor vocab {b, a, c} = 3; unseen from-state -> 1/(V+1).
    CHECK(emission_probability(m2, "zz", "a") == doctest::Approx(0.25));

    // Normalization over successors + unseen bucket.
    double total = 0;
    for (const std::string to : {"a", "b", "c"}) total += emission_probability(m2, "a", to);
    double unseen_bucket = 0.1 / (static_cast<double>(m2.totals.at("a")) + 0.1 * 4);
    total += unseen_bucket;
    CHECK(total == doctest::Approx(1.0));

    // Probabilities stay in (0,1).
    CHECK(emission_probability(m2, "a", "b") > 0);
    CHECK(emission_probability(m2, "a", "b") < 1);
}

TEST_CASE("window_score divides by W") {
    PneConfig cfg;
    cfg.alpha = 0.1;
    MarkovModel empty = build_markov({}, cfg);
    // Unseen from-state with V=0 gives probability 1.
    CHECK(window_score(empty, {"x", "y"}, 1) == doctest::Approx(1.0));
    CHECK(window_score(empty, {}, 4) == 0.0);
    CHECK(window_score(empty, {"x"}, 4) == 0.0);

    // W=4 with 2 transitions of probability p each -> 2p/4.
    double p = emission_probability(empty, "x", "y");
    CHECK(window_score(empty, {"x", "y", "z"}, 4) == doctest::Approx(2 * p / 4));

    // Score bounded by 1 even for long windows.
    std::vector<std::string> big(10, "x");
    CHECK(window_score(empty, big, 3) <= 1.0);
}

TEST_CASE("pne_feature on a planted conversation") {
    // Respondent "resp" has a long repetitive history, then reacts to the
    // target with out-of-vocabulary text.
    Corpus corpus;
    int64_t ts = 100;
    size_t id = 0;
    auto add = [&](const std::string& author, const std::string& channel,
                   const std::string& text, int64_t at) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "m%04zu", id++);
        corpus.messages.push_back(make_msg(buf, author, channel, at, text));
    };
    // 180 history messages x 3 bigrams = 540 bigrams, all in another channel.
    for (int i = 0; i < 180; ++i) {
        add("resp", "hist", "alpha beta gamma delta", ts);
        ts += 10;
    }
    add("resp", "main", "alpha beta gamma delta", ts += 10);
    add("resp", "main", "alpha beta gamma delta", ts += 10);
    std::string target_id;
    {
        char buf[16];
        std::snprintf(buf, sizeof buf, "m%04zu", id);
        target_id = buf;
    }
    add("attacker", "main", "sale connard", ts += 10);
    add("resp", "main", "signale moderateur banni vite", ts += 10);
    corpus.sort_and_index();

    PneConfig cfg;
    cfg.W = 4;
    cfg.n = 2;
    cfg.min_bigrams = 300;
    cfg.alpha = 0.1;
    cfg.w_after = 10;

    PneFeature f = pne_feature(corpus, target_id, cfg);
    CHECK(f.applicable);
    // Reaction vocabulary is disjoint from the model: S_A below S_B.
    CHECK(f.score < 0);

    // Raising the threshold beyond the history size gates applicability.
    PneConfig strict = cfg;
    strict.min_bigrams = 100000;
    PneFeature off = pne_feature(corpus, target_id, strict);
    CHECK(!off.applicable);
    CHECK(off.score == 0.0);

    // Verbatim repeat: respondent posts exactly their held-out window again.
    Corpus sym;
    id = 0;
    ts = 100;
    auto add2 = [&](const std::string& author, const std::string& text, int64_t at) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "s%04zu", id++);
        sym.messages.push_back(make_msg(buf, author, "main", at, text));
    };
    for (int i = 0; i < 200; ++i) {
        add2("resp", "alpha beta gamma delta", ts);
        ts += 10;
    }
    std::string sym_target = "s" + std::string("0200");
    add2("attacker", "hello there", ts += 10);
    add2("resp", "alpha beta gamma delta", ts += 10);
    sym.sort_and_index();
    PneConfig sc = cfg;
    sc.W = 3;
    PneFeature fs = pne_feature(sym, sym_target, sc);
    CHECK(fs.applicable);
    CHECK(fs.score == doctest::Approx(0.0));
}

TEST_CASE("pne determinism and exclusion independence") {
    Corpus corpus;
    int64_t ts = 50;
    size_t id = 0;
    auto add = [&](const std::string& author, const std::string& text) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "d%04zu", id++);
        corpus.messages.push_back(make_msg(buf, author, "c", ts, text));
        ts += 5;
    };
    for (int i = 0; i < 150; ++i) add("rich", "un deux trois quatre");
    for (int i = 0; i < 3; ++i) add("poor", "cinq six");
    std::string target_id = "d0153";
    add("speaker", "message cible");
    add("rich", "un deux trois quatre");
    add("poor", "sept huit");
    corpus.sort_and_index();

    PneConfig cfg;
    cfg.W = 5;
    cfg.min_bigrams = 200;
    PneFeature a = pne_feature(corpus, target_id, cfg);
    PneFeature b = pne_feature(corpus, target_id, cfg);
    CHECK(a.score == b.score);
    CHECK(a.applicable == b.applicable);
    CHECK(a.applicable);  // only "rich" qualifies (150*3=450 >= 200 after W removal)

    // "poor" is excluded; its presence must not shift the rich user's score.
    Corpus without;
    for (const Message& m : corpus.messages)
        if (m.author != "poor") without.messages.push_back(m);
    without.sort_and_index();
    PneFeature c = pne_feature(without, target_id, cfg);
    CHECK(c.score == doctest::Approx(a.score));
}
