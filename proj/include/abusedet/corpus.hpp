#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace abusedet {

enum class MessageKind { InGame, Chat };

enum class Label : int { NonAbuse = 0, Abuse = 1 };

struct Message {
    std::string id;
    MessageKind kind = MessageKind::Chat;
    std::string author;
    std::string channel;
    int64_t ts = 0;
    std::string text;
    std::optional<Label> label;
};

// Messages are kept sorted by (channel, ts, id) so every channel occupies a
// contiguous run and context lookups are cheap.
struct Corpus {
    std::vector<Message> messages;

    const Message* find(const std::string& id) const;
    size_t index_of(const std::string& id) const;  // throws if absent

    void sort_and_index();

  private:
    std::vector<size_t> by_id_;  // message indices sorted by id
    friend Corpus load_corpus(const std::string& path);
};

Corpus load_corpus(const std::string& path);
void save_corpus(const Corpus& corpus, const std::string& path);

std::string kind_to_string(MessageKind kind);
MessageKind kind_from_string(const std::string& s);

enum class BalanceMode { Unbalanced, Balanced };

struct DatasetItem {
    size_t corpus_index = 0;
    Label label = Label::NonAbuse;
};

struct LabeledDataset {
    std::vector<DatasetItem> items;

    size_t count(Label label) const;
};

// Takes every abuse-labeled message, then draws non-abuse uniformly (seeded)
// from messages whose authors have no abuse-labeled message. Unbalanced mode
// draws two non-abuse per abuse message, balanced mode one.
LabeledDataset sample_dataset(const Corpus& corpus, BalanceMode mode, uint64_t seed,
                              std::optional<MessageKind> kind = std::nullopt);

struct TrainTestSplit {
    LabeledDataset train;
    LabeledDataset test;
};

// Stratified 70/30 split; each label's train share rounds to nearest.
TrainTestSplit split_train_test(const LabeledDataset& dataset, uint64_t seed);

struct FoldPartition {
    std::vector<size_t> train_items;  // indices into dataset.items
    std::vector<size_t> test_items;
};

// Stratified k folds. Per-label remainders start at a rotating fold offset so
// fold sizes differ by at most one overall.
std::vector<FoldPartition> kfold_partitions(const LabeledDataset& dataset, size_t k,
                                            uint64_t seed);

struct ContextWindow {
    const Message* target = nullptr;
    std::vector<const Message*> before;  // chronological, oldest first
    std::vector<const Message*> after;   // chronological
};

// Neighbouring messages in the target's channel, at most w_before/w_after on
// each side. Throws if the id is not in the corpus.
ContextWindow context_window(const Corpus& corpus, const std::string& target_id,
                             size_t w_before, size_t w_after);

}  // namespace abusedet
