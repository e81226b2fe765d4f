#include "abusedet/features.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "abusedet/stemmer.hpp"
#include "abusedet/unicode.hpp"

namespace abusedet {

const std::vector<std::string>& feature_registry() {
    static const std::vector<std::string> names = {
        "len_chars",      "len_words",         "count_letters",  "count_digits",
        "count_punct",    "count_spaces",      "count_other",    "ratio_letters",
        "ratio_digits",   "ratio_punct",       "ratio_spaces",   "ratio_other",
        "caps_count",     "caps_ratio",        "compression_ratio", "unique_chars",
        "collapsed_delta", "nb_posterior",     "avg_word_length", "unique_words",
        "tfidf_abuse_sum", "tfidf_nonabuse_sum", "sentiment_pos", "sentiment_neg",
        "badwords_exact", "badwords_fuzzy",    "badwords_collapsed", "business_score",
        "num_respondents", "pne_score",        "pne_applicable",
    };
    return names;
}

std::vector<std::string> TfIdfModel::vocabulary() const {
    std::vector<std::string> words;
    words.reserve(scores.size());
    for (const auto& [word, score] : scores) words.push_back(word);
    return words;
}

std::pair<size_t, size_t> length_features(const std::string& raw) {
    std::u32string chars = uni::decode_utf8(raw);
    size_t words = 0;
    bool in_word = false;
    for (char32_t c : chars) {
        if (uni::is_space(c)) {
            in_word = false;
        } else if (!in_word) {
            in_word = true;
            ++words;
        }
    }
    return {chars.size(), words};
}

CharClassProfile char_class_profile(const std::string& raw) {
    CharClassProfile p;
    std::u32string chars = uni::decode_utf8(raw);
    for (char32_t c : chars) {
        if (uni::is_letter(c)) {
            ++p.letters;
            if (uni::is_upper(c)) ++p.caps_count;
        } else if (uni::is_digit(c)) {
            ++p.digits;
        } else if (uni::is_space(c)) {
            ++p.spaces;
        } else if (uni::is_punct(c)) {
            ++p.punct;
        } else {
            ++p.other;
        }
    }
    double total = static_cast<double>(chars.size());
    if (total > 0) {
        p.ratio_letters = static_cast<double>(p.letters) / total;
        p.ratio_digits = static_cast<double>(p.digits) / total;
        p.ratio_punct = static_cast<double>(p.punct) / total;
        p.ratio_spaces = static_cast<double>(p.spaces) / total;
        p.ratio_other = static_cast<double>(p.other) / total;
    }
    p.caps_ratio = static_cast<double>(p.caps_count) /
                   static_cast<double>(std::max<size_t>(1, p.letters));
    return p;
}

double compression_ratio(const std::string& raw) {
    if (raw.empty()) return 1.0;
    std::unordered_map<std::string, uint32_t> dict;
    uint32_t next_code = 256;
    size_t emitted = 0;
    std::string w;
    for (char c : raw) {
        std::string wc = w + c;
        if (wc.size() == 1 || dict.count(wc)) {
            w = std::move(wc);
        } else {
            ++emitted;
            dict.emplace(std::move(wc), next_code++);
            w.assign(1, c);
        }
    }
    if (!w.empty()) ++emitted;
    return static_cast<double>(emitted) / static_cast<double>(raw.size());
}

size_t unique_chars(const std::string& raw) {
    std::u32string chars = uni::decode_utf8(raw);
    return std::set<char32_t>(chars.begin(), chars.end()).size();
}

size_t collapsed_delta(const std::string& raw) {
    std::string lowered = uni::lower_utf8(raw);
    size_t full = uni::decode_utf8(lowered).size();
    size_t collapsed = uni::decode_utf8(collapse_repeats(lowered)).size();
    return full - collapsed;
}

std::pair<double, size_t> word_stats(const TokenizedText& tokens) {
    if (tokens.tokens.empty()) return {0.0, 0};
    double total_len = 0;
    std::set<std::string> distinct;
    for (const std::string& t : tokens.tokens) {
        total_len += static_cast<double>(uni::decode_utf8(t).size());
        distinct.insert(t);
    }
    return {total_len / static_cast<double>(tokens.tokens.size()), distinct.size()};
}

TfIdfModel train_tfidf(const std::vector<TokenizedText>& abuse_msgs,
                       const std::vector<TokenizedText>& nonabuse_msgs) {
    if (abuse_msgs.empty() || nonabuse_msgs.empty())
        throw std::runtime_error("train_tfidf: both class corpora must be nonempty");
    std::map<std::string, std::array<double, 2>> counts;
    double totals[2] = {0, 0};
    auto tally = [&](const std::vector<TokenizedText>& msgs, int cls) {
        for (const TokenizedText& msg : msgs)
            for (const std::string& w : msg.tokens) {
                counts[w][cls] += 1;
                totals[cls] += 1;
            }
    };
    int abuse = static_cast<int>(Label::Abuse);
    int non = 1 - abuse;
    tally(abuse_msgs, abuse);
    tally(nonabuse_msgs, non);
    if (totals[abuse] == 0 || totals[non] == 0)
        throw std::runtime_error("train_tfidf: a class corpus has no tokens");

    TfIdfModel model;
    model.class_tokens[abuse] = totals[abuse];
    model.class_tokens[non] = totals[non];
    for (const auto& [word, c] : counts) {
        int df = (c[abuse] > 0 ? 1 : 0) + (c[non] > 0 ? 1 : 0);
        double idf = std::log(2.0 / static_cast<double>(df));
        TfIdfScore score;
        score.abuse = c[abuse] / totals[abuse] * idf;
        score.nonabuse = c[non] / totals[non] * idf;
        model.scores[word] = score;
    }
    return model;
}

std::pair<double, double> tfidf_sums(const TokenizedText& tokens, const TfIdfModel& model,
                                     const EditDistanceIndex& index, size_t dmax) {
    double abuse_sum = 0, nonabuse_sum = 0;
    for (const std::string& t : tokens.tokens) {
        auto it = model.scores.find(t);
        if (it != model.scores.end()) {
            abuse_sum += it->second.abuse;
            nonabuse_sum += it->second.nonabuse;
            continue;
        }
        auto hits = index.query_within(t, dmax);
        if (hits.empty()) continue;
        double a = 0, n = 0;
        for (const auto& hit : hits) {
            const TfIdfScore& s = model.scores.at(hit.word);
            a += s.abuse;
            n += s.nonabuse;
        }
        abuse_sum += a / static_cast<double>(hits.size());
        nonabuse_sum += n / static_cast<double>(hits.size());
    }
    return {abuse_sum, nonabuse_sum};
}

std::pair<double, double> sentiment_scores(const TokenizedText& tokens,
                                           const SentimentLexicon& lex, bool count_mode) {
    double pos = 0, neg = 0;
    for (const std::string& t : tokens.tokens) {
        auto it = lex.weights.find(t);
        if (it == lex.weights.end()) continue;
        if (it->second > 0) pos += count_mode ? 1.0 : it->second;
        else if (it->second < 0) neg += count_mode ? 1.0 : -it->second;
    }
    return {pos, neg};
}

BadwordCounts badword_counts(const std::string& raw, const TokenizedText& tokens,
                             const BadWordList& list, const EditDistanceIndex& index) {
    return badword_counts(raw, tokens, list, index, list);
}

BadwordCounts badword_counts(const std::string& raw, const TokenizedText& tokens,
                             const BadWordList& list, const EditDistanceIndex& index,
                             const BadWordList& surface_list) {
    BadwordCounts counts;
    for (const std::string& t : tokens.tokens) {
        if (list.entries.count(t)) {
            ++counts.exact;
            continue;
        }
        size_t len = uni::decode_utf8(t).size();
        if (len < 2) continue;
        size_t dmax = std::min<size_t>(2, len - 1);
        if (!index.query_within(t, dmax).empty()) ++counts.fuzzy;
    }
    TokenizedText collapsed = basic_preprocess(collapse_repeats(uni::lower_utf8(raw)));
    for (const std::string& t : collapsed.tokens)
        if (surface_list.entries.count(t)) ++counts.collapsed;
    return counts;
}

double business_score(const std::string& raw, const BusinessPatterns& patterns) {
    if (patterns.patterns.empty()) return 0;
    std::string text = uni::lower_utf8(raw);
    double score = 0;
    for (const BusinessPattern& p : patterns.patterns) {
        auto begin = std::sregex_iterator(text.begin(), text.end(), p.compiled);
        auto end = std::sregex_iterator();
        score += p.weight * static_cast<double>(std::distance(begin, end));
    }
    return score;
}

FeatureResources FeatureResources::make(PrepMode mode, ElisionTable elisions, UrlConfig urls,
                                        const SentimentLexicon& sentiment,
                                        const BadWordList& badwords, BusinessPatterns business,
                                        bool sentiment_count_mode) {
    FeatureResources res;
    res.mode = mode;
    res.elisions = std::move(elisions);
    res.urls = std::move(urls);
    res.business = std::move(business);
    res.badwords_surface = badwords;
    res.sentiment_count_mode = sentiment_count_mode;
    if (mode == PrepMode::Advanced) {
        for (const std::string& entry : badwords.entries)
            res.badwords.entries.insert(stem_french(entry));
        for (const auto& [word, weight] : sentiment.weights) {
            std::string stemmed = stem_french(word);
            auto it = res.sentiment.weights.find(stemmed);
            if (it == res.sentiment.weights.end() || std::abs(weight) > std::abs(it->second))
                res.sentiment.weights[stemmed] = weight;
        }
    } else {
        res.badwords = badwords;
        res.sentiment = sentiment;
    }
    res.badword_index = EditDistanceIndex::build(
        std::vector<std::string>(res.badwords.entries.begin(), res.badwords.entries.end()));
    return res;
}

TokenizedText FeatureResources::tokenize(const std::string& raw) const {
    return preprocess(raw, mode, elisions, urls);
}

Stage1Models train_stage1(const std::vector<TokenizedText>& train_tokens,
                          const std::vector<Label>& train_labels, bool nb_hard_label) {
    if (train_tokens.size() != train_labels.size())
        throw std::runtime_error("train_stage1: tokens and labels length mismatch");
    Stage1Models stage;
    stage.nb_hard_label = nb_hard_label;
    stage.vocab = build_vocabulary(train_tokens);

    std::vector<BowVector> bows;
    bows.reserve(train_tokens.size());
    for (const TokenizedText& t : train_tokens) bows.push_back(make_bow(t, stage.vocab));
    stage.nb = train_nb(bows, train_labels);

    std::vector<TokenizedText> abuse_msgs, nonabuse_msgs;
    for (size_t i = 0; i < train_tokens.size(); ++i)
        (train_labels[i] == Label::Abuse ? abuse_msgs : nonabuse_msgs).push_back(train_tokens[i]);
    stage.tfidf = train_tfidf(abuse_msgs, nonabuse_msgs);
    stage.tfidf_index = EditDistanceIndex::build(stage.tfidf.vocabulary());
    return stage;
}

FeatureVector assemble_static_features(const Message& msg, const TokenizedText& tokens,
                                       const FeatureResources& res, double respondents,
                                       const PneFeature& pne) {
    FeatureVector v;
    v.reserve(feature_registry().size());

    auto [len_chars, len_words] = length_features(msg.text);
    v.push_back(static_cast<double>(len_chars));
    v.push_back(static_cast<double>(len_words));

    CharClassProfile p = char_class_profile(msg.text);
    v.push_back(static_cast<double>(p.letters));
    v.push_back(static_cast<double>(p.digits));
    v.push_back(static_cast<double>(p.punct));
    v.push_back(static_cast<double>(p.spaces));
    v.push_back(static_cast<double>(p.other));
    v.push_back(p.ratio_letters);
    v.push_back(p.ratio_digits);
    v.push_back(p.ratio_punct);
    v.push_back(p.ratio_spaces);
    v.push_back(p.ratio_other);
    v.push_back(static_cast<double>(p.caps_count));
    v.push_back(p.caps_ratio);

    v.push_back(compression_ratio(msg.text));
    v.push_back(static_cast<double>(unique_chars(msg.text)));
    v.push_back(static_cast<double>(collapsed_delta(msg.text)));

    v.push_back(0.0);  // nb_posterior, per fold

    auto [avg_len, uniq_words] = word_stats(tokens);
    v.push_back(avg_len);
    v.push_back(static_cast<double>(uniq_words));

    v.push_back(0.0);  // tfidf_abuse_sum, per fold
    v.push_back(0.0);  // tfidf_nonabuse_sum, per fold

    auto [pos, neg] = sentiment_scores(tokens, res.sentiment, res.sentiment_count_mode);
    v.push_back(pos);
    v.push_back(neg);

    BadwordCounts bw =
        badword_counts(msg.text, tokens, res.badwords, res.badword_index, res.badwords_surface);
    v.push_back(static_cast<double>(bw.exact));
    v.push_back(static_cast<double>(bw.fuzzy));
    v.push_back(static_cast<double>(bw.collapsed));

    v.push_back(business_score(msg.text, res.business));

    v.push_back(respondents);
    v.push_back(pne.applicable ? pne.score : 0.0);
    v.push_back(pne.applicable ? 1.0 : 0.0);
    return v;
}

void fill_fold_features(FeatureVector& v, const TokenizedText& tokens,
                        const Stage1Models& stage1, size_t dmax) {
    double posterior = nb_posterior(stage1.nb, make_bow(tokens, stage1.vocab));
    if (stage1.nb_hard_label) posterior = posterior > 0.5 ? 1.0 : 0.0;
    v[kIdxNbPosterior] = posterior;

    auto [abuse_sum, nonabuse_sum] = tfidf_sums(tokens, stage1.tfidf, stage1.tfidf_index, dmax);
    v[kIdxTfidfAbuse] = abuse_sum;
    v[kIdxTfidfNonabuse] = nonabuse_sum;
}

FeatureVector assemble_features(const Message& msg, const TokenizedText& tokens,
                                const FeatureResources& res, const Stage1Models& stage1,
                                double respondents, const PneFeature& pne) {
    FeatureVector v = assemble_static_features(msg, tokens, res, respondents, pne);
    fill_fold_features(v, tokens, stage1);

    for (size_t i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i]))
            throw std::runtime_error("assemble_features: non-finite value for feature " +
                                     feature_registry()[i]);
    return v;
}

ContextInputs context_inputs(const Corpus& corpus, const UserHistories& histories,
                             const std::vector<TokenizedText>& basic_tokens,
                             const std::string& target_id, size_t w_before,
                             const PneConfig& pne_cfg) {
    ContextInputs inputs;
    ContextWindow ctx = context_window(corpus, target_id, w_before, pne_cfg.w_after);
    inputs.respondents = static_cast<double>(num_respondents(ctx));
    inputs.pne = pne_feature(corpus, histories, basic_tokens, target_id, pne_cfg);
    return inputs;
}

}  // namespace abusedet
