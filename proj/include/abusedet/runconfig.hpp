#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "abusedet/corpus.hpp"
#include "abusedet/features.hpp"
#include "abusedet/textprep.hpp"
#include "abusedet/usermodel.hpp"

namespace abusedet {

enum class Arm { Classic, Full };
enum class KindFilter { InGame, Chat, Both };

struct RunConfig {
    PrepMode prep_mode = PrepMode::Advanced;
    BalanceMode balance = BalanceMode::Unbalanced;
    KindFilter kinds = KindFilter::Both;
    Arm arm = Arm::Full;
    size_t k_folds = 10;
    uint64_t seed = 42;
    size_t w_before = 10;
    size_t w_after = 10;
    size_t pne_window = 20;
    size_t pne_ngram = 2;
    size_t pne_min_bigrams = 300;
    double pne_alpha = 0.1;
    double svm_c = 1.0;
    size_t fuzzy_dmax = 2;
    double threshold = 0.5;
    size_t importance_runs = 200;
    size_t jobs = 1;
    bool nb_hard_label = false;
    bool sentiment_count_mode = false;
    std::string badwords_path;
    std::string sentiment_path;
    std::string business_path;
    std::string elisions_path;
    std::string hosts_path;

    PneConfig pne_config() const;
};

std::string to_json_string(const RunConfig& cfg);
RunConfig parse_run_config(const std::string& json_text, const std::string& origin);
RunConfig load_run_config(const std::string& path);

std::string arm_name(Arm arm);
std::string kind_filter_name(KindFilter kinds);
Arm parse_arm(const std::string& name);
KindFilter parse_kind_filter(const std::string& name);
PrepMode parse_prep_mode(const std::string& name);
BalanceMode parse_balance_mode(const std::string& name);

FeatureResources make_feature_resources(const RunConfig& cfg);

}  // namespace abusedet
