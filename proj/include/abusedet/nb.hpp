#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "abusedet/corpus.hpp"
#include "abusedet/textprep.hpp"

namespace abusedet {

struct Vocabulary {
    std::vector<std::string> words;  // sorted, distinct
    std::map<std::string, uint32_t> index;

    size_t size() const { return words.size(); }
    bool contains(const std::string& w) const { return index.count(w) != 0; }
};

Vocabulary build_vocabulary(const std::vector<TokenizedText>& train);

// Sorted distinct indices of vocabulary words present in the message.
using BowVector = std::vector<uint32_t>;

BowVector make_bow(const TokenizedText& tokens, const Vocabulary& vocab);

// Bernoulli event model with Laplace smoothing. Probabilities are stored per
// label index (NonAbuse = 0, Abuse = 1), aligned with the vocabulary.
struct NBModel {
    double log_prior[2] = {0, 0};
    std::vector<double> p_present[2];  // P(w | class), in (0,1)
    double sum_log_absent[2] = {0, 0};
    size_t doc_count[2] = {0, 0};

    size_t vocab_size() const { return p_present[0].size(); }
    void refresh_absent_sums();
};

NBModel train_nb(const std::vector<BowVector>& bows, const std::vector<Label>& labels);

// P(Abuse | x) using presence and absence factors over the whole vocabulary.
double nb_posterior(const NBModel& model, const BowVector& x);

}  // namespace abusedet
