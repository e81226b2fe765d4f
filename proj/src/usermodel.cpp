#include "abusedet/usermodel.hpp"

#include <algorithm>

namespace abusedet {

namespace {
constexpr char kStateSep = '\x1f';
}

size_t num_respondents(const ContextWindow& ctx) {
    std::set<std::string> authors;
    for (const Message* m : ctx.after)
        if (m->author != ctx.target->author) authors.insert(m->author);
    return authors.size();
}

std::vector<std::string> message_ngrams(const std::vector<TokenizedText>& messages, size_t n) {
    std::vector<std::string> states;
    if (n == 0) return states;
    for (const TokenizedText& msg : messages) {
        if (msg.tokens.size() < n) continue;
        for (size_t i = 0; i + n <= msg.tokens.size(); ++i) {
            std::string state = msg.tokens[i];
            for (size_t j = 1; j < n; ++j) {
                state.push_back(kStateSep);
                state += msg.tokens[i + j];
            }
            states.push_back(std::move(state));
        }
    }
    return states;
}

MarkovModel build_markov(const std::vector<std::string>& history, const PneConfig& cfg) {
    MarkovModel model;
    model.alpha = cfg.alpha;
    model.bigram_count = history.size();
    std::set<std::string> successors;
    for (size_t i = 0; i + 1 < history.size(); ++i) {
        ++model.transitions[history[i]][history[i + 1]];
        ++model.totals[history[i]];
        successors.insert(history[i + 1]);
    }
    model.successor_vocab = successors.size();
    return model;
}

double emission_probability(const MarkovModel& model, const std::string& from,
                            const std::string& to) {
    double v1 = static_cast<double>(model.successor_vocab) + 1.0;
    auto it = model.totals.find(from);
    if (it == model.totals.end()) return 1.0 / v1;
    double total = it->second;
    double count = 0;
    auto row = model.transitions.find(from);
    if (row != model.transitions.end()) {
        auto cell = row->second.find(to);
        if (cell != row->second.end()) count = cell->second;
    }
    return (count + model.alpha) / (total + model.alpha * v1);
}

double window_score(const MarkovModel& model, const std::vector<std::string>& window, size_t W) {
    if (W == 0 || window.size() < 2) return 0;
    size_t transitions = std::min(window.size() - 1, W);
    double sum = 0;
    for (size_t i = 0; i < transitions; ++i)
        sum += emission_probability(model, window[i], window[i + 1]);
    return sum / static_cast<double>(W);
}

UserHistories build_user_histories(const Corpus& corpus) {
    std::vector<size_t> order(corpus.messages.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        const Message& ma = corpus.messages[a];
        const Message& mb = corpus.messages[b];
        if (ma.ts != mb.ts) return ma.ts < mb.ts;
        return ma.id < mb.id;
    });
    UserHistories histories;
    for (size_t i : order) histories[corpus.messages[i].author].push_back(i);
    return histories;
}

std::vector<TokenizedText> basic_token_cache(const Corpus& corpus) {
    std::vector<TokenizedText> tokens;
    tokens.reserve(corpus.messages.size());
    for (const Message& m : corpus.messages) tokens.push_back(basic_preprocess(m.text));
    return tokens;
}

PneResult user_pne(const MarkovModel& model, const std::vector<std::string>& heldout,
                   const std::vector<std::string>& post_window, const PneConfig& cfg) {
    PneResult result;
    result.applicable = model.bigram_count >= cfg.min_bigrams;
    result.s_before = window_score(model, heldout, cfg.W);
    result.s_after = window_score(model, post_window, cfg.W);
    result.s_user = result.s_after - result.s_before;
    return result;
}

namespace {

bool before_target(const Message& m, const Message& target) {
    if (m.ts != target.ts) return m.ts < target.ts;
    return m.id < target.id;
}

std::vector<std::string> clip_front(std::vector<std::string> states, size_t count) {
    if (states.size() > count) states.resize(count);
    return states;
}

}  // namespace

PneFeature pne_feature(const Corpus& corpus, const UserHistories& histories,
                       const std::vector<TokenizedText>& basic_tokens,
                       const std::string& target_id, const PneConfig& cfg) {
    size_t target_pos = corpus.index_of(target_id);
    const Message& target = corpus.messages[target_pos];
    ContextWindow ctx = context_window(corpus, target_id, 0, cfg.w_after);

    std::set<std::string> respondents;
    for (const Message* m : ctx.after)
        if (m->author != target.author) respondents.insert(m->author);

    double sum = 0;
    size_t included = 0;
    for (const std::string& user : respondents) {
        auto hist_it = histories.find(user);
        if (hist_it == histories.end()) continue;

        std::vector<TokenizedText> pre_msgs;
        for (size_t idx : hist_it->second) {
            const Message& m = corpus.messages[idx];
            if (!before_target(m, target)) break;
            pre_msgs.push_back(basic_tokens[idx]);
        }
        std::vector<std::string> pre_states = message_ngrams(pre_msgs, cfg.n);

        size_t heldout_len = std::min(cfg.W, pre_states.size());
        std::vector<std::string> train_states(pre_states.begin(),
                                              pre_states.end() - static_cast<ptrdiff_t>(heldout_len));
        std::vector<std::string> heldout(pre_states.end() - static_cast<ptrdiff_t>(heldout_len),
                                         pre_states.end());

        MarkovModel model = build_markov(train_states, cfg);
        if (model.bigram_count < cfg.min_bigrams) continue;

        std::vector<TokenizedText> post_msgs;
        for (const Message* m : ctx.after)
            if (m->author == user)
                post_msgs.push_back(basic_tokens[static_cast<size_t>(m - corpus.messages.data())]);
        std::vector<std::string> post_window = clip_front(message_ngrams(post_msgs, cfg.n), cfg.W);

        PneResult r = user_pne(model, heldout, post_window, cfg);
        sum += r.s_user;
        ++included;
    }

    PneFeature feature;
    if (included > 0) {
        feature.score = sum / static_cast<double>(included);
        feature.applicable = true;
    }
    return feature;
}

PneFeature pne_feature(const Corpus& corpus, const std::string& target_id, const PneConfig& cfg) {
    UserHistories histories = build_user_histories(corpus);
    std::vector<TokenizedText> tokens = basic_token_cache(corpus);
    return pne_feature(corpus, histories, tokens, target_id, cfg);
}

}  // namespace abusedet
