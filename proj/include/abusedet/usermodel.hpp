#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "abusedet/corpus.hpp"
#include "abusedet/textprep.hpp"

namespace abusedet {

struct PneConfig {
    size_t W = 20;            // window length in n-grams
    size_t n = 2;             // n-gram order
    size_t min_bigrams = 300; // per-user applicability threshold
    double alpha = 0.1;       // additive smoothing
    size_t w_after = 10;      // after-window length shared with num_respondents
};

// Word n-gram Markov chain for one user.
struct MarkovModel {
    std::map<std::string, std::map<std::string, uint32_t>> transitions;
    std::map<std::string, uint32_t> totals;
    size_t successor_vocab = 0;  // distinct successor states observed
    size_t bigram_count = 0;     // n-grams in the training history
    double alpha = 0.1;
};

struct PneResult {
    double s_before = 0;
    double s_after = 0;
    double s_user = 0;
    bool applicable = false;
};

struct PneFeature {
    double score = 0;
    bool applicable = false;
};

size_t num_respondents(const ContextWindow& ctx);

// Overlapping n-grams per message, never spanning message boundaries. States
// are the n tokens joined with a unit separator.
std::vector<std::string> message_ngrams(const std::vector<TokenizedText>& messages, size_t n);

MarkovModel build_markov(const std::vector<std::string>& history, const PneConfig& cfg);

double emission_probability(const MarkovModel& model, const std::string& from,
                            const std::string& to);

// Eq-style average over the window: sum of transition probabilities divided by
// W even when fewer transitions are available.
double window_score(const MarkovModel& model, const std::vector<std::string>& window, size_t W);

// Per-author corpus indices in global (ts, id) order.
using UserHistories = std::map<std::string, std::vector<size_t>>;

UserHistories build_user_histories(const Corpus& corpus);

// Basic-preprocessed tokens for every corpus message, by corpus index. PNE
// always runs on basic preprocessing so user models are stable across arms.
std::vector<TokenizedText> basic_token_cache(const Corpus& corpus);

PneResult user_pne(const MarkovModel& model, const std::vector<std::string>& heldout,
                   const std::vector<std::string>& post_window, const PneConfig& cfg);

PneFeature pne_feature(const Corpus& corpus, const UserHistories& histories,
                       const std::vector<TokenizedText>& basic_tokens,
                       const std::string& target_id, const PneConfig& cfg);

PneFeature pne_feature(const Corpus& corpus, const std::string& target_id, const PneConfig& cfg);

}  // namespace abusedet
