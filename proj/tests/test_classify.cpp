#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "abusedet/nb.hpp"
#include "abusedet/pipeline.hpp"
#include "abusedet/runconfig.hpp"
#include "abusedet/svm.hpp"
#include "abusedet/synth.hpp"

using namespace abusedet;

namespace {

TokenizedText toks(std::vector<std::string> words) {
    TokenizedText t;
    t.tokens = std::move(words);
    return t;
}

std::vector<FeatureVector> blob_features(std::mt19937_64& rng, size_t n, double cx, double cy,
                                         double spread) {
    std::vector<FeatureVector> out;
    std::normal_distribution<double> noise(0.0, spread);
    for (size_t i = 0; i < n; ++i) out.push_back({cx + noise(rng), cy + noise(rng)});
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("vocabulary and bow") {
    std::vector<TokenizedText> train = {toks({"die", "noob"}), toks({"hi"}), toks({"die"})};
    Vocabulary v = build_vocabulary(train);
    CHECK(v.words == std::vector<std::string>{"die", "hi", "noob"});
    CHECK(v.size() == 3);
    CHECK(v.contains("die"));
    CHECK(!v.contains("unknown"));

    BowVector bow = make_bow(toks({"noob", "die", "noob", "unknown"}), v);
    CHECK(bow == BowVector{0, 2});

    CHECK_THROWS(build_vocabulary({}));
}

TEST_CASE("bernoulli nb hand fixture") {
    std::vector<TokenizedText> train = {toks({"die"}), toks({"die", "noob"}), toks({"hi"}),
                                        toks({"hi", "noob"})};
    std::vector<Label> labels = {Label::Abuse, Label::Abuse, Label::NonAbuse, Label::NonAbuse};
    Vocabulary v = build_vocabulary(train);
    std::vector<BowVector> bows;
    for (const auto& t : train) bows.push_back(make_bow(t, v));
    NBModel nb = train_nb(bows, labels);

    CHECK(nb.doc_count[0] == 2);
    CHECK(nb.doc_count[1] == 2);
    CHECK(nb.log_prior[0] == doctest::Approx(std::log(0.5)).epsilon(1e-15));

    // P(die|Abuse) = 3/4, P(die|NonAbuse) = 1/4, priors equal.
    double post = nb_posterior(nb, make_bow(toks({"die"}), v));
    CHECK(std::fabs(post - 0.9) < 1e-12);

    // Complementary class probability.
    double post_hi = nb_posterior(nb, make_bow(toks({"hi"}), v));
    CHECK(std::fabs(post_hi - 0.1) < 1e-12);

    // Multiplicity must not matter for a Bernoulli model.
    double post_rep = nb_posterior(nb, make_bow(toks({"die", "die", "die"}), v));
    CHECK(post_rep == post);

    // Unknown-only message falls back to priors with absence factors.
    double post_unk = nb_posterior(nb, make_bow(toks({"zzz"}), v));
    CHECK(post_unk == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS(train_nb(bows, {Label::Abuse, Label::Abuse, Label::Abuse, Label::Abuse}));
}

TEST_CASE("standardizer") {
    std::vector<FeatureVector> X = {{1, 10, 5}, {2, 20, 5}, {3, 30, 5}, {4, 40, 5}};
    Standardizer s = Standardizer::fit(X);
    CHECK(s.mean[0] == doctest::Approx(2.5));
    CHECK(s.mean[1] == doctest::Approx(25.0));
    CHECK(s.stddev[2] == 1.0);  // degenerate column

    double mean0 = 0, var0 = 0;
    for (const auto& row : X) mean0 += s.apply(row)[0];
    mean0 /= 4;
    for (const auto& row : X) {
        double z = s.apply(row)[0] - mean0;
        var0 += z * z;
    }
    CHECK(std::fabs(mean0) < 1e-12);
    CHECK(var0 / 4 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.apply(X[0])[2] == 0.0);

    CHECK_THROWS(Standardizer::fit({}));
    CHECK_THROWS(s.apply({1.0}));
}

TEST_CASE("svm separable fixture") {
    std::mt19937_64 rng(7);
    std::vector<FeatureVector> X = blob_features(rng, 30, 2.0, 2.0, 0.3);
    std::vector<FeatureVector> neg = blob_features(rng, 30, -2.0, -2.0, 0.3);
    std::vector<Label> y(30, Label::Abuse);
    X.insert(X.end(), neg.begin(), neg.end());
    y.insert(y.end(), 30, Label::NonAbuse);

    SVMModel m = train_svm(X, y, 1.0, 3);
    size_t correct = 0;
    for (size_t i = 0; i < X.size(); ++i) {
        double s = svm_decision(m, X[i]);
        bool abuse = s > 0;
        if (abuse == (y[i] == Label::Abuse)) ++correct;
    }
    CHECK(correct == X.size());

    // Dual objective never increases across epochs.
    for (size_t e = 1; e < m.objective_trace.size(); ++e)
        CHECK(m.objective_trace[e] <= m.objective_trace[e - 1] + 1e-9);

    // Balanced weights on even classes are 1.
    CHECK(m.class_weight[0] == doctest::Approx(1.0));
    CHECK(m.class_weight[1] == doctest::Approx(1.0));

    CHECK_THROWS(svm_decision(m, {1.0}));
    CHECK_THROWS(train_svm(X, std::vector<Label>(10, Label::Abuse), 1.0, 0));
    CHECK_THROWS(train_svm({}, {}, 1.0, 0));
    CHECK_THROWS(train_svm({{1.0}, {2.0}}, {Label::Abuse, Label::Abuse}, 1.0, 0));
}

TEST_CASE("svm zero variance column") {
    std::vector<FeatureVector> X = {{1.0, 5.0}, {2.0, 5.0}, {-1.0, 5.0}, {-2.0, 5.0}};
    std::vector<Label> y = {Label::Abuse, Label::Abuse, Label::NonAbuse, Label::NonAbuse};
    SVMModel m = train_svm(X, y, 1.0, 0);
    for (double w : m.weights) CHECK(std::isfinite(w));
    CHECK(std::isfinite(m.bias));
    CHECK(svm_decision(m, {1.5, 5.0}) > 0);
    CHECK(svm_decision(m, {-1.5, 5.0}) < 0);
}

TEST_CASE("svm class duplication approximates balanced weights") {
    std::mt19937_64 rng(11);
    std::vector<FeatureVector> abuse = blob_features(rng, 15, 2.5, 1.5, 0.4);
    std::vector<FeatureVector> clean = blob_features(rng, 30, -2.5, -1.5, 0.4);

    std::vector<FeatureVector> X1 = abuse;
    X1.insert(X1.end(), clean.begin(), clean.end());
    std::vector<Label> y1(15, Label::Abuse);
    y1.insert(y1.end(), 30, Label::NonAbuse);
    SVMModel balanced = train_svm(X1, y1, 1.0, 5);
    CHECK(balanced.class_weight[1] == doctest::Approx(1.5));
    CHECK(balanced.class_weight[0] == doctest::Approx(0.75));

    std::vector<FeatureVector> X2 = abuse;
    X2.insert(X2.end(), abuse.begin(), abuse.end());
    X2.insert(X2.end(), clean.begin(), clean.end());
    std::vector<Label> y2(30, Label::Abuse);
    y2.insert(y2.end(), 30, Label::NonAbuse);
    SVMModel duplicated = train_svm(X2, y2, 1.0, 5);

    size_t agree = 0;
    std::vector<FeatureVector> probe = X1;
    for (const auto& x : probe) {
        bool a = svm_decision(balanced, x) > 0;
        bool b = svm_decision(duplicated, x) > 0;
        if (a == b) ++agree;
    }
    CHECK(static_cast<double>(agree) / static_cast<double>(probe.size()) >= 0.99);
}

TEST_CASE("platt scaling") {
    PlattParams unit{-1.0, 0.0};
    CHECK(platt_probability(unit, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(platt_probability(unit, 3.0) == doctest::Approx(1.0 / (1.0 + std::exp(-3.0))));
    CHECK(platt_probability(unit, 800.0) == doctest::Approx(1.0));
    CHECK(platt_probability(unit, -800.0) == doctest::Approx(0.0));

    std::mt19937_64 rng(13);
    std::normal_distribution<double> noise(0.0, 0.25);
    std::vector<double> scores;
    std::vector<Label> labels;
    for (int i = 0; i < 60; ++i) {
        double s = (i % 2 == 0) ? 1.0 + noise(rng) : -1.0 + noise(rng);
        scores.push_back(s);
        labels.push_back(i % 2 == 0 ? Label::Abuse : Label::NonAbuse);
    }
    PlattParams p = fit_platt(scores, labels);
    CHECK(p.a < 0);
    CHECK(platt_probability(p, 2.0) > 0.8);
    CHECK(platt_probability(p, -2.0) < 0.2);
    // Monotone in the score when a < 0.
    double prev = 0;
    for (double s = -3.0; s <= 3.0; s += 0.25) {
        double prob = platt_probability(p, s);
        CHECK(prob >= prev);
        prev = prob;
    }

    CHECK_THROWS(fit_platt({1.0, 1.0}, {Label::Abuse, Label::NonAbuse}));
    CHECK_THROWS(fit_platt({1.0, 2.0}, {Label::Abuse, Label::Abuse}));
    CHECK_THROWS(fit_platt({}, {}));
    CHECK_THROWS(fit_platt({1.0}, {Label::Abuse, Label::NonAbuse}));
}

TEST_CASE("calibrated svm") {
    std::mt19937_64 rng(17);
    std::vector<FeatureVector> X = blob_features(rng, 40, 1.8, 0.0, 0.5);
    std::vector<FeatureVector> neg = blob_features(rng, 40, -1.8, 0.0, 0.5);
    X.insert(X.end(), neg.begin(), neg.end());
    std::vector<Label> y(40, Label::Abuse);
    y.insert(y.end(), 40, Label::NonAbuse);

    CalibratedSvm cal = train_calibrated_svm(X, y, 1.0, 9);
    CHECK(cal.platt.a < 0);
    size_t correct = 0;
    for (size_t i = 0; i < X.size(); ++i) {
        double prob = platt_probability(cal.platt, svm_decision(cal.svm, X[i]));
        if ((prob >= 0.5) == (y[i] == Label::Abuse)) ++correct;
    }
    CHECK(static_cast<double>(correct) / static_cast<double>(X.size()) >= 0.95);

    // Tiny class counts fall back to in-sample calibration but still work.
    std::vector<FeatureVector> tiny = {{2.0}, {1.8}, {-2.0}, {-1.9}};
    std::vector<Label> tiny_y = {Label::Abuse, Label::Abuse, Label::NonAbuse, Label::NonAbuse};
    CalibratedSvm small = train_calibrated_svm(tiny, tiny_y, 1.0, 1);
    CHECK(platt_probability(small.platt, svm_decision(small.svm, {2.1})) > 0.5);
}

TEST_CASE("run config json round trip") {
    RunConfig cfg;
    cfg.prep_mode = PrepMode::Basic;
    cfg.balance = BalanceMode::Balanced;
    cfg.kinds = KindFilter::InGame;
    cfg.arm = Arm::Classic;
    cfg.k_folds = 5;
    cfg.seed = 99;
    cfg.pne_min_bigrams = 150;
    cfg.svm_c = 2.5;
    cfg.badwords_path = "custom.txt";

    RunConfig back = parse_run_config(to_json_string(cfg), "test");
    CHECK(back.prep_mode == PrepMode::Basic);
    CHECK(back.balance == BalanceMode::Balanced);
    CHECK(back.kinds == KindFilter::InGame);
    CHECK(back.arm == Arm::Classic);
    CHECK(back.k_folds == 5);
    CHECK(back.seed == 99);
    CHECK(back.pne_min_bigrams == 150);
    CHECK(back.svm_c == doctest::Approx(2.5));
    CHECK(back.badwords_path == "custom.txt");
    CHECK(to_json_string(back) == to_json_string(cfg));

    // Partial configs keep defaults.
    RunConfig partial = parse_run_config(R"({"seed": 7})", "test");
    CHECK(partial.seed == 7);
    CHECK(partial.k_folds == 10);
    CHECK(partial.pne_window == 20);
    CHECK(partial.pne_ngram == 2);
    CHECK(partial.pne_min_bigrams == 300);
    CHECK(partial.pne_alpha == doctest::Approx(0.1));
    CHECK(partial.w_before == 10);
    CHECK(partial.w_after == 10);
    CHECK(partial.svm_c == doctest::Approx(1.0));
    CHECK(partial.fuzzy_dmax == 2);
    CHECK(partial.threshold == doctest::Approx(0.5));
    CHECK(partial.importance_runs == 200);

    CHECK_THROWS_WITH_AS(parse_run_config("{nope", "bad.json"),
                         doctest::Contains("bad.json"), std::runtime_error);
    CHECK_THROWS(parse_run_config(R"({"arm": "bogus"})", "test"));
    CHECK_THROWS(parse_run_config(R"({"k_folds": "ten"})", "test"));
    CHECK_THROWS(parse_run_config("[1,2]", "test"));
}

TEST_CASE("arm feature indices") {
    std::vector<size_t> full = arm_feature_indices(Arm::Full);
    CHECK(full.size() == feature_registry().size());

    std::vector<size_t> classic = arm_feature_indices(Arm::Classic);
    CHECK(classic.size() == feature_registry().size() - 3);
    for (size_t i : classic) {
        CHECK(feature_registry()[i] != "business_score");
        CHECK(feature_registry()[i] != "pne_score");
        CHECK(feature_registry()[i] != "pne_applicable");
    }
    // num_respondents stays in the classic arm.
    bool has_respondents = false;
    for (size_t i : classic)
        if (feature_registry()[i] == "num_respondents") has_respondents = true;
    CHECK(has_respondents);

    CHECK(select_columns({0, 1, 2, 3}, {1, 3}) == FeatureVector{1, 3});
}

TEST_CASE("pipeline train save load round trip") {
    SynthConfig synth;
    synth.n_abuse = 40;
    synth.n_nonabuse = 80;
    synth.n_users = 14;
    synth.n_channels = 4;
    synth.seed = 5;
    Corpus corpus = generate_synthetic(synth);

    RunConfig cfg;
    cfg.seed = 3;
    cfg.pne_min_bigrams = 40;
    FeatureResources res = make_feature_resources(cfg);
    LabeledDataset ds = make_dataset(corpus, cfg);
    PipelineModel model = train_pipeline(corpus, ds, cfg, res);
    CHECK(model.active.size() == feature_registry().size());
    CHECK(model.stage1.vocab.size() > 0);

    std::string path = "/tmp/abusedet_model_test.json";
    save_model(model, path);
    PipelineModel loaded = load_model(path);

    CHECK(loaded.prep_mode == model.prep_mode);
    CHECK(loaded.arm == model.arm);
    CHECK(loaded.stage1.vocab.words == model.stage1.vocab.words);
    CHECK(loaded.svm.svm.weights == model.svm.svm.weights);
    CHECK(loaded.svm.platt.a == model.svm.platt.a);

    // Bit-exact prediction round trip over every dataset message.
    UserHistories histories = build_user_histories(corpus);
    std::vector<TokenizedText> basic_tokens = basic_token_cache(corpus);
    for (const DatasetItem& item : ds.items) {
        const Message& msg = corpus.messages[item.corpus_index];
        TokenizedText t = res.tokenize(msg.text);
        ContextInputs ctx = context_inputs(corpus, histories, basic_tokens, msg.id, cfg.w_before,
                                           cfg.pne_config());
        FeatureVector full =
            assemble_features(msg, t, res, model.stage1, ctx.respondents, ctx.pne);
        FeatureVector full2 =
            assemble_features(msg, t, res, loaded.stage1, ctx.respondents, ctx.pne);
        Prediction a = predict_features(model, full, cfg.threshold);
        Prediction b = predict_features(loaded, full2, cfg.threshold);
        CHECK(a.score == b.score);
        CHECK(a.probability == b.probability);
        CHECK(a.label == b.label);
    }

    // Double save is byte-identical.
    std::string again = "/tmp/abusedet_model_test2.json";
    save_model(loaded, again);
    CHECK(slurp(path) == slurp(again));

    std::remove(path.c_str());
    std::remove(again.c_str());
}

TEST_CASE("model file errors") {
    CHECK_THROWS_WITH_AS(load_model("/tmp/abusedet_missing_model.json"),
                         doctest::Contains("cannot open"), std::runtime_error);

    std::string path = "/tmp/abusedet_bad_model.json";
    spit(path, "not json at all");
    CHECK_THROWS_WITH_AS(load_model(path), doctest::Contains("corrupt"), std::runtime_error);

    spit(path, R"({"format_version": 99})");
    CHECK_THROWS_WITH_AS(load_model(path), doctest::Contains("format version"),
                         std::runtime_error);

    spit(path, R"({"format_version": 1, "registry_version": 42})");
    CHECK_THROWS_WITH_AS(load_model(path), doctest::Contains("registry"), std::runtime_error);

    spit(path, R"({"format_version": 1, "registry_version": 1, "prep_mode": "advanced"})");
    CHECK_THROWS_WITH_AS(load_model(path), doctest::Contains("corrupt"), std::runtime_error);
    std::remove(path.c_str());
}
