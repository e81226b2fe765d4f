#include "abusedet/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nlohmann/json.hpp"

#include "abusedet/parallel.hpp"
#include "abusedet/usermodel.hpp"

namespace abusedet {

using ordered_json = nlohmann::ordered_json;

std::vector<size_t> arm_feature_indices(Arm arm) {
    const auto& names = feature_registry();
    std::vector<size_t> active;
    active.reserve(names.size());
    for (size_t i = 0; i < names.size(); ++i) {
        if (arm == Arm::Classic &&
            (names[i] == "business_score" || names[i] == "pne_score" ||
             names[i] == "pne_applicable"))
            continue;
        active.push_back(i);
    }
    return active;
}

FeatureVector select_columns(const FeatureVector& full, const std::vector<size_t>& active) {
    FeatureVector out;
    out.reserve(active.size());
    for (size_t i : active) out.push_back(full.at(i));
    return out;
}

namespace {

ordered_json doubles_json(const std::vector<double>& v) {
    return ordered_json(v);
}

std::vector<double> read_doubles(const ordered_json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_array()) throw std::runtime_error("missing array " + std::string(key));
    std::vector<double> out;
    out.reserve(it->size());
    for (const auto& e : *it) {
        if (!e.is_number()) throw std::runtime_error("non-numeric entry in " + std::string(key));
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<std::string> read_strings(const ordered_json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_array()) throw std::runtime_error("missing array " + std::string(key));
    std::vector<std::string> out;
    out.reserve(it->size());
    for (const auto& e : *it) {
        if (!e.is_string()) throw std::runtime_error("non-string entry in " + std::string(key));
        out.push_back(e.get<std::string>());
    }
    return out;
}

}  // namespace

void save_model(const PipelineModel& model, const std::string& path) {
    ordered_json j;
    j["format_version"] = model.format_version;
    j["registry_version"] = model.registry_version;
    j["prep_mode"] = model.prep_mode == PrepMode::Basic ? "basic" : "advanced";
    j["arm"] = arm_name(model.arm);
    j["nb_hard_label"] = model.nb_hard_label;
    j["sentiment_count_mode"] = model.sentiment_count_mode;
    j["fuzzy_dmax"] = model.fuzzy_dmax;
    j["active"] = model.active;

    j["vocabulary"] = model.stage1.vocab.words;
    ordered_json nb;
    nb["doc_count"] = {model.stage1.nb.doc_count[0], model.stage1.nb.doc_count[1]};
    nb["log_prior"] = {model.stage1.nb.log_prior[0], model.stage1.nb.log_prior[1]};
    nb["p_present"] = {doubles_json(model.stage1.nb.p_present[0]),
                       doubles_json(model.stage1.nb.p_present[1])};
    j["nb"] = nb;

    ordered_json tfidf;
    tfidf["class_tokens"] = {model.stage1.tfidf.class_tokens[0], model.stage1.tfidf.class_tokens[1]};
    std::vector<std::string> words;
    std::vector<double> abuse_scores, nonabuse_scores;
    for (const auto& [word, score] : model.stage1.tfidf.scores) {
        words.push_back(word);
        abuse_scores.push_back(score.abuse);
        nonabuse_scores.push_back(score.nonabuse);
    }
    tfidf["words"] = words;
    tfidf["abuse"] = doubles_json(abuse_scores);
    tfidf["nonabuse"] = doubles_json(nonabuse_scores);
    j["tfidf"] = tfidf;

    ordered_json svm;
    svm["weights"] = doubles_json(model.svm.svm.weights);
    svm["bias"] = model.svm.svm.bias;
    svm["c"] = model.svm.svm.c;
    svm["class_weight"] = {model.svm.svm.class_weight[0], model.svm.svm.class_weight[1]};
    svm["mean"] = doubles_json(model.svm.svm.scaler.mean);
    svm["stddev"] = doubles_json(model.svm.svm.scaler.stddev);
    j["svm"] = svm;

    ordered_json platt;
    platt["a"] = model.svm.platt.a;
    platt["b"] = model.svm.platt.b;
    j["platt"] = platt;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open model file for writing: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing model file: " + path);
}

PipelineModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();

    ordered_json j;
    try {
        j = ordered_json::parse(buf.str());
    } catch (const std::exception&) {
        throw std::runtime_error("corrupt model file: " + path);
    }
    if (!j.is_object()) throw std::runtime_error("corrupt model file: " + path);

    PipelineModel model;
    try {
        model.format_version = j.at("format_version").get<int>();
        if (model.format_version != kModelFormatVersion)
            throw std::invalid_argument("format");
        model.registry_version = j.at("registry_version").get<int>();
        if (model.registry_version != kFeatureRegistryVersion)
            throw std::invalid_argument("registry");

        model.prep_mode = parse_prep_mode(j.at("prep_mode").get<std::string>());
        model.arm = parse_arm(j.at("arm").get<std::string>());
        model.nb_hard_label = j.at("nb_hard_label").get<bool>();
        model.sentiment_count_mode = j.at("sentiment_count_mode").get<bool>();
        model.fuzzy_dmax = j.at("fuzzy_dmax").get<size_t>();
        model.active = j.at("active").get<std::vector<size_t>>();

        std::vector<std::string> words = read_strings(j, "vocabulary");
        model.stage1.vocab.words = words;
        for (uint32_t i = 0; i < words.size(); ++i) model.stage1.vocab.index[words[i]] = i;

        const auto& nb = j.at("nb");
        auto doc_count = nb.at("doc_count").get<std::vector<size_t>>();
        auto log_prior = read_doubles(nb, "log_prior");
        if (doc_count.size() != 2 || log_prior.size() != 2 || !nb.at("p_present").is_array() ||
            nb.at("p_present").size() != 2)
            throw std::invalid_argument("nb");
        for (int c = 0; c < 2; ++c) {
            model.stage1.nb.doc_count[c] = doc_count[static_cast<size_t>(c)];
            model.stage1.nb.log_prior[c] = log_prior[static_cast<size_t>(c)];
            model.stage1.nb.p_present[c] =
                nb.at("p_present")[static_cast<size_t>(c)].get<std::vector<double>>();
        }
        if (model.stage1.nb.p_present[0].size() != words.size() ||
            model.stage1.nb.p_present[1].size() != words.size())
            throw std::invalid_argument("nb");
        model.stage1.nb.refresh_absent_sums();
        model.stage1.nb_hard_label = model.nb_hard_label;

        const auto& tfidf = j.at("tfidf");
        auto class_tokens = read_doubles(tfidf, "class_tokens");
        if (class_tokens.size() != 2) throw std::invalid_argument("tfidf");
        model.stage1.tfidf.class_tokens[0] = class_tokens[0];
        model.stage1.tfidf.class_tokens[1] = class_tokens[1];
        auto tf_words = read_strings(tfidf, "words");
        auto tf_abuse = read_doubles(tfidf, "abuse");
        auto tf_non = read_doubles(tfidf, "nonabuse");
        if (tf_abuse.size() != tf_words.size() || tf_non.size() != tf_words.size())
            throw std::invalid_argument("tfidf");
        for (size_t i = 0; i < tf_words.size(); ++i)
            model.stage1.tfidf.scores[tf_words[i]] = {tf_abuse[i], tf_non[i]};
        model.stage1.tfidf_index = EditDistanceIndex::build(model.stage1.tfidf.vocabulary());

        const auto& svm = j.at("svm");
        model.svm.svm.weights = read_doubles(svm, "weights");
        model.svm.svm.bias = svm.at("bias").get<double>();
        model.svm.svm.c = svm.at("c").get<double>();
        auto cw = read_doubles(svm, "class_weight");
        if (cw.size() != 2) throw std::invalid_argument("svm");
        model.svm.svm.class_weight[0] = cw[0];
        model.svm.svm.class_weight[1] = cw[1];
        model.svm.svm.scaler.mean = read_doubles(svm, "mean");
        model.svm.svm.scaler.stddev = read_doubles(svm, "stddev");
        if (model.svm.svm.scaler.mean.size() != model.active.size() ||
            model.svm.svm.scaler.stddev.size() != model.active.size() ||
            model.svm.svm.weights.size() != model.active.size())
            throw std::invalid_argument("svm");

        model.svm.platt.a = j.at("platt").at("a").get<double>();
        model.svm.platt.b = j.at("platt").at("b").get<double>();
    } catch (const std::invalid_argument& e) {
        std::string what = e.what();
        if (what == "format")
            throw std::runtime_error("unsupported model format version in " + path);
        if (what == "registry")
            throw std::runtime_error("model feature registry version mismatch in " + path);
        throw std::runtime_error("corrupt model file: " + path);
    } catch (const std::exception& e) {
        throw std::runtime_error("corrupt model file: " + path + " (" + e.what() + ")");
    }
    return model;
}

Prediction predict_features(const PipelineModel& model, const FeatureVector& full,
                            double threshold) {
    if (full.size() != feature_registry().size())
        throw std::runtime_error("predict_features: expected full registry vector");
    FeatureVector x = select_columns(full, model.active);
    Prediction pred;
    pred.score = svm_decision(model.svm.svm, x);
    pred.probability = platt_probability(model.svm.platt, pred.score);
    pred.label = pred.probability >= threshold ? Label::Abuse : Label::NonAbuse;
    return pred;
}

LabeledDataset make_dataset(const Corpus& corpus, const RunConfig& cfg) {
    std::optional<MessageKind> kind;
    if (cfg.kinds == KindFilter::InGame) kind = MessageKind::InGame;
    if (cfg.kinds == KindFilter::Chat) kind = MessageKind::Chat;
    return sample_dataset(corpus, cfg.balance, cfg.seed, kind);
}

PipelineModel train_pipeline(const Corpus& corpus, const LabeledDataset& ds,
                             const RunConfig& cfg, const FeatureResources& res) {
    if (ds.items.empty()) throw std::runtime_error("train_pipeline: empty dataset");

    UserHistories histories = build_user_histories(corpus);
    std::vector<TokenizedText> basic_tokens = basic_token_cache(corpus);
    PneConfig pne_cfg = cfg.pne_config();

    size_t n = ds.items.size();
    std::vector<TokenizedText> tokens(n);
    std::vector<FeatureVector> statics(n);
    std::vector<Label> labels(n);
    parallel_for(0, n, cfg.jobs, [&](size_t i) {
        const Message& msg = corpus.messages[ds.items[i].corpus_index];
        tokens[i] = res.tokenize(msg.text);
        ContextInputs ctx = context_inputs(corpus, histories, basic_tokens, msg.id,
                                           cfg.w_before, pne_cfg);
        statics[i] = assemble_static_features(msg, tokens[i], res, ctx.respondents, ctx.pne);
        labels[i] = ds.items[i].label;
    });

    PipelineModel model;
    model.prep_mode = cfg.prep_mode;
    model.arm = cfg.arm;
    model.nb_hard_label = cfg.nb_hard_label;
    model.sentiment_count_mode = cfg.sentiment_count_mode;
    model.fuzzy_dmax = cfg.fuzzy_dmax;
    model.active = arm_feature_indices(cfg.arm);
    model.stage1 = train_stage1(tokens, labels, cfg.nb_hard_label);

    std::vector<FeatureVector> X(n);
    parallel_for(0, n, cfg.jobs, [&](size_t i) {
        fill_fold_features(statics[i], tokens[i], model.stage1, cfg.fuzzy_dmax);
        X[i] = select_columns(statics[i], model.active);
    });

    model.svm = train_calibrated_svm(X, labels, cfg.svm_c, cfg.seed);
    return model;
}

}  // namespace abusedet
