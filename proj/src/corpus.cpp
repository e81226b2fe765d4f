#include "abusedet/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace abusedet {

using ordered_json = nlohmann::ordered_json;

std::string kind_to_string(MessageKind kind) {
    return kind == MessageKind::InGame ? "iM" : "cM";
}

MessageKind kind_from_string(const std::string& s) {
    if (s == "iM") return MessageKind::InGame;
    if (s == "cM") return MessageKind::Chat;
    throw std::runtime_error("unknown message kind '" + s + "'");
}

void Corpus::sort_and_index() {
    std::sort(messages.begin(), messages.end(), [](const Message& a, const Message& b) {
        if (a.channel != b.channel) return a.channel < b.channel;
        if (a.ts != b.ts) return a.ts < b.ts;
        return a.id < b.id;
    });
    by_id_.resize(messages.size());
    for (size_t i = 0; i < by_id_.size(); ++i) by_id_[i] = i;
    std::sort(by_id_.begin(), by_id_.end(),
              [this](size_t a, size_t b) { return messages[a].id < messages[b].id; });
}

const Message* Corpus::find(const std::string& id) const {
    auto it = std::lower_bound(by_id_.begin(), by_id_.end(), id,
                               [this](size_t i, const std::string& v) { return messages[i].id < v; });
    if (it == by_id_.end() || messages[*it].id != id) return nullptr;
    return &messages[*it];
}

size_t Corpus::index_of(const std::string& id) const {
    const Message* m = find(id);
    if (!m) throw std::runtime_error("message id not found: " + id);
    return static_cast<size_t>(m - messages.data());
}

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path);
    Corpus corpus;
    std::set<std::string> seen_ids;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error(path + ": parse error at line " + std::to_string(lineno) +
                                     ": " + e.what());
        }
        auto bad = [&](const std::string& what) -> std::runtime_error {
            return std::runtime_error(path + ": parse error at line " + std::to_string(lineno) +
                                      ": " + what);
        };
        if (!j.is_object()) throw bad("expected a JSON object");
        Message m;
        try {
            m.id = j.at("id").get<std::string>();
            m.kind = kind_from_string(j.at("kind").get<std::string>());
            m.author = j.at("author").get<std::string>();
            m.channel = j.at("channel").get<std::string>();
            m.ts = j.at("ts").get<int64_t>();
            m.text = j.at("text").get<std::string>();
            if (j.contains("label")) {
                int v = j.at("label").get<int>();
                if (v != 0 && v != 1) throw bad("label must be 0 or 1");
                m.label = v == 1 ? Label::Abuse : Label::NonAbuse;
            }
        } catch (const nlohmann::json::exception& e) {
            throw bad(e.what());
        }
        if (m.ts < 0) throw bad("negative timestamp");
        if (!seen_ids.insert(m.id).second)
            throw std::runtime_error(path + ": duplicate message id \"" + m.id + "\" at line " +
                                     std::to_string(lineno));
        corpus.messages.push_back(std::move(m));
    }
    corpus.sort_and_index();
    return corpus;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write corpus file: " + path);
    for (const Message& m : corpus.messages) {
        ordered_json j;
        j["id"] = m.id;
        j["kind"] = kind_to_string(m.kind);
        j["author"] = m.author;
        j["channel"] = m.channel;
        j["ts"] = m.ts;
        j["text"] = m.text;
        if (m.label) j["label"] = static_cast<int>(*m.label);
        out << j.dump() << '\n';
    }
    if (!out) throw std::runtime_error("failed writing corpus file: " + path);
}

size_t LabeledDataset::count(Label label) const {
    size_t n = 0;
    for (const auto& item : items)
        if (item.label == label) ++n;
    return n;
}

LabeledDataset sample_dataset(const Corpus& corpus, BalanceMode mode, uint64_t seed,
                              std::optional<MessageKind> kind) {
    std::vector<size_t> abuse;
    std::set<std::string> abusive_authors;
    for (size_t i = 0; i < corpus.messages.size(); ++i) {
        const Message& m = corpus.messages[i];
        if (m.label && *m.label == Label::Abuse) {
            if (!kind || m.kind == *kind) abuse.push_back(i);
            abusive_authors.insert(m.author);
        }
    }
    if (abuse.empty()) throw std::runtime_error("sample_dataset: corpus has no abuse-labeled messages");

    std::vector<size_t> pool;
    for (size_t i = 0; i < corpus.messages.size(); ++i) {
        const Message& m = corpus.messages[i];
        if (kind && m.kind != *kind) continue;
        if (!abusive_authors.count(m.author)) pool.push_back(i);
    }
    size_t need = mode == BalanceMode::Unbalanced ? abuse.size() * 2 : abuse.size();
    if (pool.size() < need)
        throw std::runtime_error("sample_dataset: insufficient non-abuse pool: required " +
                                 std::to_string(need) + ", available " +
                                 std::to_string(pool.size()));

    std::mt19937_64 rng(seed);
    // Partial Fisher-Yates: the first `need` slots end up a uniform sample.
    for (size_t i = 0; i < need; ++i) {
        std::uniform_int_distribution<size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    std::vector<size_t> sampled(pool.begin(), pool.begin() + static_cast<ptrdiff_t>(need));
    std::sort(sampled.begin(), sampled.end());

    LabeledDataset ds;
    ds.items.reserve(abuse.size() + sampled.size());
    for (size_t i : abuse) ds.items.push_back({i, Label::Abuse});
    for (size_t i : sampled) ds.items.push_back({i, Label::NonAbuse});
    return ds;
}

namespace {

std::vector<size_t> label_indices(const LabeledDataset& ds, Label label) {
    std::vector<size_t> out;
    for (size_t i = 0; i < ds.items.size(); ++i)
        if (ds.items[i].label == label) out.push_back(i);
    return out;
}

}  // namespace

TrainTestSplit split_train_test(const LabeledDataset& dataset, uint64_t seed) {
    if (dataset.items.size() < 10)
        throw std::runtime_error("split_train_test: dataset must have at least 10 items");
    std::mt19937_64 rng(seed);
    std::vector<bool> in_train(dataset.items.size(), false);
    for (Label label : {Label::NonAbuse, Label::Abuse}) {
        std::vector<size_t> idx = label_indices(dataset, label);
        std::shuffle(idx.begin(), idx.end(), rng);
        size_t n_train = static_cast<size_t>(std::llround(0.7 * static_cast<double>(idx.size())));
        for (size_t i = 0; i < n_train; ++i) in_train[idx[i]] = true;
    }
    TrainTestSplit split;
    for (size_t i = 0; i < dataset.items.size(); ++i)
        (in_train[i] ? split.train : split.test).items.push_back(dataset.items[i]);
    return split;
}

std::vector<FoldPartition> kfold_partitions(const LabeledDataset& dataset, size_t k,
                                            uint64_t seed) {
    if (k < 2) throw std::runtime_error("kfold_partitions: k must be at least 2");
    if (k > dataset.items.size())
        throw std::runtime_error("kfold_partitions: k exceeds dataset size (" +
                                 std::to_string(k) + " > " +
                                 std::to_string(dataset.items.size()) + ")");
    std::mt19937_64 rng(seed);
    std::vector<std::vector<size_t>> test_sets(k);
    size_t remainder_offset = 0;
    for (Label label : {Label::NonAbuse, Label::Abuse}) {
        std::vector<size_t> idx = label_indices(dataset, label);
        std::shuffle(idx.begin(), idx.end(), rng);
        size_t q = idx.size() / k;
        size_t r = idx.size() % k;
        size_t pos = 0;
        for (size_t f = 0; f < k; ++f) {
            size_t extra = 0;
            // Folds [offset, offset+r) mod k take one extra item each, so the
            // remainders of successive labels land on different folds.
            size_t rel = (f + k - remainder_offset % k) % k;
            if (rel < r) extra = 1;
            size_t take = q + extra;
            for (size_t j = 0; j < take; ++j) test_sets[f].push_back(idx[pos++]);
        }
        remainder_offset += r;
    }
    std::vector<FoldPartition> folds(k);
    for (size_t f = 0; f < k; ++f) {
        std::sort(test_sets[f].begin(), test_sets[f].end());
        folds[f].test_items = test_sets[f];
        std::vector<bool> is_test(dataset.items.size(), false);
        for (size_t i : test_sets[f]) is_test[i] = true;
        for (size_t i = 0; i < dataset.items.size(); ++i)
            if (!is_test[i]) folds[f].train_items.push_back(i);
    }
    return folds;
}

ContextWindow context_window(const Corpus& corpus, const std::string& target_id,
                             size_t w_before, size_t w_after) {
    size_t pos = corpus.index_of(target_id);
    const Message& target = corpus.messages[pos];
    ContextWindow window;
    window.target = &target;
    size_t first = pos;
    while (first > 0 && pos - first < w_before &&
           corpus.messages[first - 1].channel == target.channel)
        --first;
    for (size_t i = first; i < pos; ++i) window.before.push_back(&corpus.messages[i]);
    size_t last = pos;
    while (last + 1 < corpus.messages.size() && last - pos < w_after &&
           corpus.messages[last + 1].channel == target.channel)
        ++last;
    for (size_t i = pos + 1; i <= last; ++i) window.after.push_back(&corpus.messages[i]);
    return window;
}

}  // namespace abusedet
