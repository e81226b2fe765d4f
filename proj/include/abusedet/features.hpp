#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "abusedet/corpus.hpp"
#include "abusedet/fuzzyindex.hpp"
#include "abusedet/nb.hpp"
#include "abusedet/resources.hpp"
#include "abusedet/textprep.hpp"
#include "abusedet/usermodel.hpp"

namespace abusedet {

constexpr int kFeatureRegistryVersion = 1;

constexpr size_t kIdxNbPosterior = 17;
constexpr size_t kIdxTfidfAbuse = 20;
constexpr size_t kIdxTfidfNonabuse = 21;

// Canonical feature order; every FeatureVector follows it.
const std::vector<std::string>& feature_registry();

using FeatureVector = std::vector<double>;

struct CharClassProfile {
    size_t letters = 0, digits = 0, punct = 0, spaces = 0, other = 0;
    double ratio_letters = 0, ratio_digits = 0, ratio_punct = 0, ratio_spaces = 0,
           ratio_other = 0;
    size_t caps_count = 0;
    double caps_ratio = 0;
};

struct TfIdfScore {
    double abuse = 0;
    double nonabuse = 0;
};

struct TfIdfModel {
    std::map<std::string, TfIdfScore> scores;
    double class_tokens[2] = {0, 0};  // NonAbuse = 0, Abuse = 1

    std::vector<std::string> vocabulary() const;
};

struct BadwordCounts {
    size_t exact = 0;
    size_t fuzzy = 0;
    size_t collapsed = 0;
};

std::pair<size_t, size_t> length_features(const std::string& raw);
CharClassProfile char_class_profile(const std::string& raw);
double compression_ratio(const std::string& raw);
size_t unique_chars(const std::string& raw);
size_t collapsed_delta(const std::string& raw);
std::pair<double, size_t> word_stats(const TokenizedText& tokens);

TfIdfModel train_tfidf(const std::vector<TokenizedText>& abuse_msgs,
                       const std::vector<TokenizedText>& nonabuse_msgs);

// (abuse_sum, nonabuse_sum); unknown tokens fall back to the mean score of
// index neighbors within distance dmax, or 0 when there are none.
std::pair<double, double> tfidf_sums(const TokenizedText& tokens, const TfIdfModel& model,
                                     const EditDistanceIndex& index, size_t dmax = 2);

std::pair<double, double> sentiment_scores(const TokenizedText& tokens,
                                           const SentimentLexicon& lex,
                                           bool count_mode = false);

BadwordCounts badword_counts(const std::string& raw, const TokenizedText& tokens,
                             const BadWordList& list, const EditDistanceIndex& index);
// Variant used when the matching list is mode-adapted: collapsed counts always
// run against the surface-form list.
BadwordCounts badword_counts(const std::string& raw, const TokenizedText& tokens,
                             const BadWordList& list, const EditDistanceIndex& index,
                             const BadWordList& surface_list);

double business_score(const std::string& raw, const BusinessPatterns& patterns);

// Static per-run resources, adapted to the preprocessing mode: under advanced
// preprocessing the bad-word entries and sentiment keys are stemmed so they
// live in the same token space as the message tokens.
struct FeatureResources {
    PrepMode mode = PrepMode::Basic;
    ElisionTable elisions;
    UrlConfig urls;
    SentimentLexicon sentiment;
    BadWordList badwords;
    BadWordList badwords_surface;
    EditDistanceIndex badword_index;
    BusinessPatterns business;
    bool sentiment_count_mode = false;

    static FeatureResources make(PrepMode mode, ElisionTable elisions, UrlConfig urls,
                                 const SentimentLexicon& sentiment, const BadWordList& badwords,
                                 BusinessPatterns business, bool sentiment_count_mode = false);

    TokenizedText tokenize(const std::string& raw) const;
};

// Stage trained per fold on training data only.
struct Stage1Models {
    Vocabulary vocab;
    NBModel nb;
    TfIdfModel tfidf;
    EditDistanceIndex tfidf_index;
    bool nb_hard_label = false;
};

Stage1Models train_stage1(const std::vector<TokenizedText>& train_tokens,
                          const std::vector<Label>& train_labels, bool nb_hard_label = false);

FeatureVector assemble_features(const Message& msg, const TokenizedText& tokens,
                                const FeatureResources& res, const Stage1Models& stage1,
                                double respondents, const PneFeature& pne);

// Fold-independent slots only; nb_posterior and tf-idf sums stay 0 until
// fill_fold_features patches them in with fold-trained stage-one models.
FeatureVector assemble_static_features(const Message& msg, const TokenizedText& tokens,
                                       const FeatureResources& res, double respondents,
                                       const PneFeature& pne);
void fill_fold_features(FeatureVector& v, const TokenizedText& tokens,
                        const Stage1Models& stage1, size_t dmax = 2);

// Context features shared by every fold: respondent count and PNE.
struct ContextInputs {
    double respondents = 0;
    PneFeature pne;
};

ContextInputs context_inputs(const Corpus& corpus, const UserHistories& histories,
                             const std::vector<TokenizedText>& basic_tokens,
                             const std::string& target_id, size_t w_before,
                             const PneConfig& pne_cfg);

}  // namespace abusedet
