#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "abusedet/corpus.hpp"
#include "abusedet/synth.hpp"
#include "abusedet/textprep.hpp"

using namespace abusedet;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Message make_msg(const std::string& id, const std::string& author, const std::string& channel,
                 int64_t ts, std::optional<Label> label = std::nullopt) {
    Message m;
    m.id = id;
    m.kind = MessageKind::Chat;
    m.author = author;
    m.channel = channel;
    m.ts = ts;
    m.text = "texte " + id;
    m.label = label;
    return m;
}

Corpus make_corpus(std::vector<Message> messages) {
    Corpus c;
    c.messages = std::move(messages);
    c.sort_and_index();
    return c;
}

}  // namespace

TEST_CASE("load_corpus parses and sorts") {
    auto path = temp_file("corpus_basic.jsonl");
    write_file(path,
               R"({"id":"m3","kind":"cM","author":"u1","channel":"b","ts":5,"text":"trois"}
{"id":"m1","kind":"iM","author":"u2","channel":"a","ts":9,"text":"un","label":1}
{"id":"m2","kind":"cM","author":"u1","channel":"a","ts":2,"text":"deux","label":0}
)");
    Corpus c = load_corpus(path.string());
    REQUIRE(c.messages.size() == 3);
    CHECK(c.messages[0].id == "m2");
    CHECK(c.messages[1].id == "m1");
    CHECK(c.messages[2].id == "m3");
    CHECK(c.messages[1].kind == MessageKind::InGame);
    CHECK(c.messages[1].label == Label::Abuse);
    CHECK(c.messages[0].label == Label::NonAbuse);
    CHECK(!c.messages[2].label.has_value());
    CHECK(c.find("m1") != nullptr);
    CHECK(c.find("zz") == nullptr);
}

TEST_CASE("load_corpus rejects duplicates and malformed lines") {
    auto dup = temp_file("corpus_dup.jsonl");
    write_file(dup,
               R"({"id":"m1","kind":"cM","author":"u1","channel":"a","ts":1,"text":"x"}
{"id":"m1","kind":"cM","author":"u1","channel":"a","ts":2,"text":"y"}
)");
    CHECK_THROWS_WITH_AS(load_corpus(dup.string()), doctest::Contains("\"m1\""),
                         std::runtime_error);

    auto bad = temp_file("corpus_bad.jsonl");
    write_file(bad,
               R"({"id":"m1","kind":"cM","author":"u1","channel":"a","ts":1,"text":"x"}
{not json}
)");
    CHECK_THROWS_WITH_AS(load_corpus(bad.string()), doctest::Contains("line 2"),
                         std::runtime_error);

    auto empty = temp_file("corpus_empty.jsonl");
    write_file(empty, "");
    CHECK(load_corpus(empty.string()).messages.empty());
}

TEST_CASE("corpus round trip") {
    auto a = temp_file("corpus_rt_a.jsonl");
    auto b = temp_file("corpus_rt_b.jsonl");
    Corpus c = make_corpus({
        make_msg("m1", "u1", "chan2", 10, Label::Abuse),
        make_msg("m2", "u2", "chan1", 10),
        make_msg("m3", "u1", "chan1", 3, Label::NonAbuse),
    });
    c.messages[2].text = "héhé \"quotes\" et\nsauts";
    save_corpus(c, a.string());
    Corpus c2 = load_corpus(a.string());
    save_corpus(c2, b.string());
    CHECK(read_file(a) == read_file(b));
    REQUIRE(c2.messages.size() == 3);
    CHECK(c2.messages[0].id == "m3");
    CHECK(c2.messages[2].text == "héhé \"quotes\" et\nsauts");
}

TEST_CASE("sample_dataset respects pools and modes") {
    std::vector<Message> msgs;
    for (int i = 0; i < 9; ++i)
        msgs.push_back(make_msg("a" + std::to_string(i), "bad" + std::to_string(i % 3), "c", i,
                                Label::Abuse));
    // One unlabeled message from an abusive author: never eligible.
    msgs.push_back(make_msg("x0", "bad0", "c", 100));
    for (int i = 0; i < 30; ++i)
        msgs.push_back(make_msg("n" + std::to_string(i), "ok" + std::to_string(i % 10), "c",
                                200 + i, i % 2 ? std::optional<Label>(Label::NonAbuse)
                                               : std::nullopt));
    Corpus c = make_corpus(msgs);

    LabeledDataset unb = sample_dataset(c, BalanceMode::Unbalanced, 7);
    CHECK(unb.count(Label::Abuse) == 9);
    CHECK(unb.count(Label::NonAbuse) == 18);
    LabeledDataset bal = sample_dataset(c, BalanceMode::Balanced, 7);
    CHECK(bal.count(Label::Abuse) == 9);
    CHECK(bal.count(Label::NonAbuse) == 9);

    for (const auto& item : unb.items) {
        const Message& m = c.messages[item.corpus_index];
        if (item.label == Label::NonAbuse) CHECK(m.author.substr(0, 2) == "ok");
    }

    LabeledDataset again = sample_dataset(c, BalanceMode::Unbalanced, 7);
    REQUIRE(again.items.size() == unb.items.size());
    for (size_t i = 0; i < again.items.size(); ++i)
        CHECK(again.items[i].corpus_index == unb.items[i].corpus_index);

    LabeledDataset other = sample_dataset(c, BalanceMode::Unbalanced, 8);
    bool differs = false;
    for (size_t i = 0; i < other.items.size(); ++i)
        if (other.items[i].corpus_index != unb.items[i].corpus_index) differs = true;
    CHECK(differs);
}

TEST_CASE("sample_dataset error cases") {
    Corpus no_abuse = make_corpus({make_msg("m1", "u1", "c", 1, Label::NonAbuse)});
    CHECK_THROWS_AS(sample_dataset(no_abuse, BalanceMode::Balanced, 1), std::runtime_error);

    std::vector<Message> msgs;
    for (int i = 0; i < 5; ++i)
        msgs.push_back(make_msg("a" + std::to_string(i), "bad", "c", i, Label::Abuse));
    msgs.push_back(make_msg("n1", "ok", "c", 50));
    Corpus c = make_corpus(msgs);
    CHECK_THROWS_WITH_AS(sample_dataset(c, BalanceMode::Unbalanced, 1),
                         doctest::Contains("required 10, available 1"), std::runtime_error);
}

TEST_CASE("split_train_test stratifies and rounds") {
    std::vector<Message> msgs;
    for (int i = 0; i < 40; ++i)
        msgs.push_back(make_msg("a" + std::to_string(i), "u", "c", i, Label::Abuse));
    for (int i = 0; i < 60; ++i)
        msgs.push_back(make_msg("n" + std::to_string(i), "u", "c", 100 + i, Label::NonAbuse));
    Corpus c = make_corpus(msgs);
    LabeledDataset ds;
    for (size_t i = 0; i < c.messages.size(); ++i)
        ds.items.push_back({i, *c.messages[i].label});

    TrainTestSplit split = split_train_test(ds, 3);
    CHECK(split.train.items.size() == 70);
    CHECK(split.test.items.size() == 30);
    CHECK(split.train.count(Label::Abuse) == 28);
    CHECK(split.train.count(Label::NonAbuse) == 42);

    std::set<size_t> seen;
    for (const auto& item : split.train.items) seen.insert(item.corpus_index);
    for (const auto& item : split.test.items) CHECK(!seen.count(item.corpus_index));
    CHECK(seen.size() + split.test.items.size() == 100);

    TrainTestSplit split2 = split_train_test(ds, 3);
    REQUIRE(split2.train.items.size() == split.train.items.size());
    for (size_t i = 0; i < split.train.items.size(); ++i)
        CHECK(split2.train.items[i].corpus_index == split.train.items[i].corpus_index);

    LabeledDataset ten;
    for (size_t i = 0; i < 10; ++i) ten.items.push_back({i, i < 4 ? Label::Abuse : Label::NonAbuse});
    TrainTestSplit s10 = split_train_test(ten, 1);
    CHECK(s10.train.items.size() == 7);
    CHECK(s10.test.items.size() == 3);

    LabeledDataset nine;
    for (size_t i = 0; i < 9; ++i) nine.items.push_back({i, Label::Abuse});
    CHECK_THROWS_AS(split_train_test(nine, 1), std::runtime_error);
}

TEST_CASE("kfold partitions the dataset") {
    LabeledDataset ds;
    for (size_t i = 0; i < 20; ++i) ds.items.push_back({i, i < 8 ? Label::Abuse : Label::NonAbuse});
    auto folds = kfold_partitions(ds, 10, 5);
    REQUIRE(folds.size() == 10);
    std::set<size_t> all_test;
    for (const auto& fold : folds) {
        CHECK(fold.test_items.size() == 2);
        CHECK(fold.train_items.size() == 18);
        for (size_t i : fold.test_items) CHECK(all_test.insert(i).second);
    }
    CHECK(all_test.size() == 20);

    CHECK_THROWS_AS(kfold_partitions(ds, 21, 5), std::runtime_error);
    CHECK_THROWS_AS(kfold_partitions(ds, 1, 5), std::runtime_error);
}

TEST_CASE("kfold sizes for the paper-scale dataset") {
    LabeledDataset ds;
    for (size_t i = 0; i < 2337; ++i)
        ds.items.push_back({i, i < 779 ? Label::Abuse : Label::NonAbuse});
    auto folds = kfold_partitions(ds, 10, 11);
    std::set<size_t> all_test;
    for (const auto& fold : folds) {
        size_t n = fold.test_items.size();
        CHECK(n >= 233);
        CHECK(n <= 234);
        size_t abuse = 0;
        for (size_t i : fold.test_items) {
            all_test.insert(i);
            if (ds.items[i].label == Label::Abuse) ++abuse;
        }
        CHECK(abuse >= 77);
        CHECK(abuse <= 78);
    }
    CHECK(all_test.size() == 2337);
}

TEST_CASE("context_window boundaries") {
    std::vector<Message> msgs;
    for (int i = 0; i < 8; ++i) msgs.push_back(make_msg("c" + std::to_string(i), "u", "chan", i));
    for (int i = 0; i < 4; ++i) msgs.push_back(make_msg("o" + std::to_string(i), "u", "other", i));
    Corpus c = make_corpus(msgs);

    ContextWindow first = context_window(c, "c0", 5, 5);
    CHECK(first.before.empty());
    CHECK(first.after.size() == 5);

    ContextWindow mid = context_window(c, "c2", 10, 3);
    REQUIRE(mid.before.size() == 2);
    CHECK(mid.before[0]->id == "c0");
    CHECK(mid.before[1]->id == "c1");
    REQUIRE(mid.after.size() == 3);
    CHECK(mid.after[0]->id == "c3");
    for (const Message* m : mid.before) CHECK(m->channel == "chan");
    for (const Message* m : mid.after) CHECK(m->channel == "chan");

    ContextWindow last = context_window(c, "c7", 2, 4);
    CHECK(last.after.empty());
    CHECK(last.before.size() == 2);

    CHECK_THROWS_AS(context_window(c, "missing", 2, 2), std::runtime_error);
}

TEST_CASE("synthetic corpus is deterministic") {
    SynthConfig cfg;
    cfg.n_abuse = 25;
    cfg.n_nonabuse = 50;
    cfg.n_users = 20;
    cfg.n_channels = 6;
    cfg.seed = 9;
    Corpus a = generate_synthetic(cfg);
    Corpus b = generate_synthetic(cfg);
    auto pa = temp_file("synth_a.jsonl");
    auto pb = temp_file("synth_b.jsonl");
    save_corpus(a, pa.string());
    save_corpus(b, pb.string());
    CHECK(read_file(pa) == read_file(pb));
    CHECK(!read_file(pa).empty());

    cfg.seed = 10;
    Corpus other = generate_synthetic(cfg);
    save_corpus(other, pb.string());
    CHECK(read_file(pa) != read_file(pb));
}

TEST_CASE("synthetic corpus honors label counts and pools") {
    SynthConfig cfg;
    cfg.n_abuse = 40;
    cfg.n_nonabuse = 80;
    cfg.n_users = 25;
    cfg.n_channels = 6;
    cfg.seed = 3;
    Corpus c = generate_synthetic(cfg);
    size_t abuse = 0, nonabuse = 0;
    std::set<std::string> abusive_authors;
    for (const Message& m : c.messages) {
        if (m.label == Label::Abuse) {
            ++abuse;
            abusive_authors.insert(m.author);
        } else if (m.label == Label::NonAbuse) {
            ++nonabuse;
        }
    }
    CHECK(abuse == 40);
    CHECK(nonabuse == 80);
    for (const Message& m : c.messages)
        if (m.label == Label::NonAbuse) CHECK(!abusive_authors.count(m.author));
    // Pool large enough for unbalanced sampling.
    LabeledDataset ds = sample_dataset(c, BalanceMode::Unbalanced, 1);
    CHECK(ds.count(Label::Abuse) == 40);
    CHECK(ds.count(Label::NonAbuse) == 80);

    bool has_im = false, has_cm = false;
    for (const Message& m : c.messages) {
        if (m.kind == MessageKind::InGame) has_im = true;
        if (m.kind == MessageKind::Chat) has_cm = true;
    }
    CHECK(has_im);
    CHECK(has_cm);
}

TEST_CASE("synthetic obfuscation gate") {
    SynthConfig cfg;
    cfg.n_abuse = 60;
    cfg.n_nonabuse = 30;
    cfg.n_users = 20;
    cfg.n_channels = 6;
    cfg.seed = 4;
    cfg.obfuscation_rate = 0.0;
    Corpus plain = generate_synthetic(cfg);
    for (const Message& m : plain.messages) {
        if (m.label != Label::Abuse) continue;
        CHECK(deobfuscate_encodings(m.text) == m.text);
    }

    cfg.obfuscation_rate = 1.0;
    Corpus obf = generate_synthetic(cfg);
    size_t encoded = 0;
    for (const Message& m : obf.messages) {
        if (m.label != Label::Abuse) continue;
        if (deobfuscate_encodings(m.text) != m.text) ++encoded;
    }
    CHECK(encoded > 10);
}
