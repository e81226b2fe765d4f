#include "abusedet/nb.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace abusedet {

Vocabulary build_vocabulary(const std::vector<TokenizedText>& train) {
    if (train.empty()) throw std::runtime_error("build_vocabulary: empty training set");
    std::set<std::string> distinct;
    for (const TokenizedText& t : train)
        for (const std::string& w : t.tokens) distinct.insert(w);
    Vocabulary vocab;
    vocab.words.assign(distinct.begin(), distinct.end());
    for (uint32_t i = 0; i < vocab.words.size(); ++i) vocab.index[vocab.words[i]] = i;
    return vocab;
}

BowVector make_bow(const TokenizedText& tokens, const Vocabulary& vocab) {
    std::set<uint32_t> present;
    for (const std::string& w : tokens.tokens) {
        auto it = vocab.index.find(w);
        if (it != vocab.index.end()) present.insert(it->second);
    }
    return BowVector(present.begin(), present.end());
}

NBModel train_nb(const std::vector<BowVector>& bows, const std::vector<Label>& labels) {
    if (bows.size() != labels.size())
        throw std::runtime_error("train_nb: bows and labels length mismatch");
    size_t docs[2] = {0, 0};
    for (Label l : labels) ++docs[static_cast<int>(l)];
    if (docs[0] == 0 || docs[1] == 0)
        throw std::runtime_error("train_nb: training data must contain both classes");

    size_t vocab_size = 0;
    for (const BowVector& x : bows)
        if (!x.empty()) vocab_size = std::max<size_t>(vocab_size, x.back() + 1);

    NBModel model;
    model.doc_count[0] = docs[0];
    model.doc_count[1] = docs[1];
    size_t total = docs[0] + docs[1];
    for (int c = 0; c < 2; ++c)
        model.log_prior[c] = std::log(static_cast<double>(docs[c]) / static_cast<double>(total));

    std::vector<size_t> contain[2];
    contain[0].assign(vocab_size, 0);
    contain[1].assign(vocab_size, 0);
    for (size_t i = 0; i < bows.size(); ++i) {
        int c = static_cast<int>(labels[i]);
        for (uint32_t w : bows[i]) ++contain[c][w];
    }
    for (int c = 0; c < 2; ++c) {
        model.p_present[c].resize(vocab_size);
        for (size_t w = 0; w < vocab_size; ++w)
            model.p_present[c][w] = (static_cast<double>(contain[c][w]) + 1.0) /
                                    (static_cast<double>(docs[c]) + 2.0);
    }
    model.refresh_absent_sums();
    return model;
}

void NBModel::refresh_absent_sums() {
    for (int c = 0; c < 2; ++c) {
        double sum = 0;
        for (double p : p_present[c]) sum += std::log1p(-p);
        sum_log_absent[c] = sum;
    }
}

double nb_posterior(const NBModel& model, const BowVector& x) {
    double logit[2];
    for (int c = 0; c < 2; ++c) {
        double sum = model.log_prior[c] + model.sum_log_absent[c];
        for (uint32_t w : x) {
            if (w >= model.vocab_size()) continue;
            double p = model.p_present[c][w];
            sum += std::log(p) - std::log1p(-p);
        }
        logit[c] = sum;
    }
    int abuse = static_cast<int>(Label::Abuse);
    int non = 1 - abuse;
    return 1.0 / (1.0 + std::exp(logit[non] - logit[abuse]));
}

}  // namespace abusedet
