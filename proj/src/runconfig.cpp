#include "abusedet/runconfig.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "nlohmann/json.hpp"

#include "abusedet/resources.hpp"

namespace abusedet {

using ordered_json = nlohmann::ordered_json;

PneConfig RunConfig::pne_config() const {
    PneConfig pc;
    pc.W = pne_window;
    pc.n = pne_ngram;
    pc.min_bigrams = pne_min_bigrams;
    pc.alpha = pne_alpha;
    pc.w_after = w_after;
    return pc;
}

std::string arm_name(Arm arm) { return arm == Arm::Classic ? "classic" : "full"; }

std::string kind_filter_name(KindFilter kinds) {
    switch (kinds) {
        case KindFilter::InGame: return "iM";
        case KindFilter::Chat: return "cM";
        default: return "both";
    }
}

Arm parse_arm(const std::string& name) {
    if (name == "classic") return Arm::Classic;
    if (name == "full") return Arm::Full;
    throw std::runtime_error("unknown arm \"" + name + "\" (expected classic or full)");
}

KindFilter parse_kind_filter(const std::string& name) {
    if (name == "iM") return KindFilter::InGame;
    if (name == "cM") return KindFilter::Chat;
    if (name == "both") return KindFilter::Both;
    throw std::runtime_error("unknown kind filter \"" + name + "\" (expected iM, cM or both)");
}

PrepMode parse_prep_mode(const std::string& name) {
    if (name == "basic") return PrepMode::Basic;
    if (name == "advanced") return PrepMode::Advanced;
    throw std::runtime_error("unknown preprocessing mode \"" + name +
                             "\" (expected basic or advanced)");
}

BalanceMode parse_balance_mode(const std::string& name) {
    if (name == "balanced") return BalanceMode::Balanced;
    if (name == "unbalanced") return BalanceMode::Unbalanced;
    throw std::runtime_error("unknown balance mode \"" + name +
                             "\" (expected balanced or unbalanced)");
}

std::string to_json_string(const RunConfig& cfg) {
    ordered_json j;
    j["prep_mode"] = cfg.prep_mode == PrepMode::Basic ? "basic" : "advanced";
    j["balance"] = cfg.balance == BalanceMode::Balanced ? "balanced" : "unbalanced";
    j["kinds"] = kind_filter_name(cfg.kinds);
    j["arm"] = arm_name(cfg.arm);
    j["k_folds"] = cfg.k_folds;
    j["seed"] = cfg.seed;
    j["w_before"] = cfg.w_before;
    j["w_after"] = cfg.w_after;
    j["pne_window"] = cfg.pne_window;
    j["pne_ngram"] = cfg.pne_ngram;
    j["pne_min_bigrams"] = cfg.pne_min_bigrams;
    j["pne_alpha"] = cfg.pne_alpha;
    j["svm_c"] = cfg.svm_c;
    j["fuzzy_dmax"] = cfg.fuzzy_dmax;
    j["threshold"] = cfg.threshold;
    j["importance_runs"] = cfg.importance_runs;
    j["jobs"] = cfg.jobs;
    j["nb_hard_label"] = cfg.nb_hard_label;
    j["sentiment_count_mode"] = cfg.sentiment_count_mode;
    j["badwords_path"] = cfg.badwords_path;
    j["sentiment_path"] = cfg.sentiment_path;
    j["business_path"] = cfg.business_path;
    j["elisions_path"] = cfg.elisions_path;
    j["hosts_path"] = cfg.hosts_path;
    return j.dump();
}

namespace {

template <typename T>
void read_field(const ordered_json& j, const char* key, T& out, const std::string& origin) {
    auto it = j.find(key);
    if (it == j.end()) return;
    try {
        out = it->get<T>();
    } catch (const std::exception&) {
        throw std::runtime_error(origin + ": invalid value for \"" + key + "\"");
    }
}

void read_string_enum(const ordered_json& j, const char* key,
                      const std::function<void(const std::string&)>& apply,
                      const std::string& origin) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_string()) throw std::runtime_error(origin + ": invalid value for \"" + key + "\"");
    apply(it->get<std::string>());
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text, const std::string& origin) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::runtime_error(origin + ": " + e.what());
    }
    if (!j.is_object()) throw std::runtime_error(origin + ": config must be a JSON object");

    RunConfig cfg;
    read_string_enum(j, "prep_mode", [&](const std::string& s) { cfg.prep_mode = parse_prep_mode(s); }, origin);
    read_string_enum(j, "balance", [&](const std::string& s) { cfg.balance = parse_balance_mode(s); }, origin);
    read_string_enum(j, "kinds", [&](const std::string& s) { cfg.kinds = parse_kind_filter(s); }, origin);
    read_string_enum(j, "arm", [&](const std::string& s) { cfg.arm = parse_arm(s); }, origin);
    read_field(j, "k_folds", cfg.k_folds, origin);
    read_field(j, "seed", cfg.seed, origin);
    read_field(j, "w_before", cfg.w_before, origin);
    read_field(j, "w_after", cfg.w_after, origin);
    read_field(j, "pne_window", cfg.pne_window, origin);
    read_field(j, "pne_ngram", cfg.pne_ngram, origin);
    read_field(j, "pne_min_bigrams", cfg.pne_min_bigrams, origin);
    read_field(j, "pne_alpha", cfg.pne_alpha, origin);
    read_field(j, "svm_c", cfg.svm_c, origin);
    read_field(j, "fuzzy_dmax", cfg.fuzzy_dmax, origin);
    read_field(j, "threshold", cfg.threshold, origin);
    read_field(j, "importance_runs", cfg.importance_runs, origin);
    read_field(j, "jobs", cfg.jobs, origin);
    read_field(j, "nb_hard_label", cfg.nb_hard_label, origin);
    read_field(j, "sentiment_count_mode", cfg.sentiment_count_mode, origin);
    read_field(j, "badwords_path", cfg.badwords_path, origin);
    read_field(j, "sentiment_path", cfg.sentiment_path, origin);
    read_field(j, "business_path", cfg.business_path, origin);
    read_field(j, "elisions_path", cfg.elisions_path, origin);
    read_field(j, "hosts_path", cfg.hosts_path, origin);
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str(), path);
}

FeatureResources make_feature_resources(const RunConfig& cfg) {
    BadWordList badwords =
        cfg.badwords_path.empty() ? default_badwords() : load_badwords(cfg.badwords_path);
    SentimentLexicon sentiment =
        cfg.sentiment_path.empty() ? default_sentiment() : load_sentiment(cfg.sentiment_path);
    BusinessPatterns business = cfg.business_path.empty()
                                    ? default_business_patterns()
                                    : load_business_patterns(cfg.business_path);
    ElisionTable elisions =
        cfg.elisions_path.empty() ? default_elisions() : load_elisions(cfg.elisions_path);
    UrlConfig urls;
    urls.internal_hosts = cfg.hosts_path.empty() ? default_hosts() : load_hosts(cfg.hosts_path);
    return FeatureResources::make(cfg.prep_mode, std::move(elisions), std::move(urls), sentiment,
                                  badwords, std::move(business), cfg.sentiment_count_mode);
}

}  // namespace abusedet
