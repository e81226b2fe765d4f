#include "abusedet/fuzzyindex.hpp"

#include <algorithm>

#include "abusedet/unicode.hpp"

namespace abusedet {

size_t levenshtein(std::u32string_view a, std::u32string_view b) {
    if (a.size() < b.size()) std::swap(a, b);
    std::vector<size_t> row(b.size() + 1);
    for (size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (size_t i = 1; i <= a.size(); ++i) {
        size_t diag = row[0];
        row[0] = i;
        for (size_t j = 1; j <= b.size(); ++j) {
            size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            size_t next = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
            diag = row[j];
            row[j] = next;
        }
    }
    return row[b.size()];
}

size_t levenshtein(std::string_view a, std::string_view b) {
    return levenshtein(uni::decode_utf8(a), uni::decode_utf8(b));
}

std::optional<size_t> levenshtein_bounded(std::u32string_view a, std::u32string_view b,
                                          size_t dmax) {
    if (a.size() < b.size()) std::swap(a, b);
    if (a.size() - b.size() > dmax) return std::nullopt;
    if (b.empty()) return a.size();
    dmax = std::min(dmax, a.size() + b.size());
    constexpr size_t kInf = static_cast<size_t>(-1) / 2;
    std::vector<size_t> row(b.size() + 1, kInf);
    for (size_t j = 0; j <= std::min(b.size(), dmax); ++j) row[j] = j;
    for (size_t i = 1; i <= a.size(); ++i) {
        // Cells outside |i-j| <= dmax can never contribute a result <= dmax.
        size_t lo = i > dmax ? i - dmax : 1;
        size_t hi = std::min(b.size(), i + dmax);
        size_t diag = row[lo - 1];
        row[lo - 1] = (lo == 1 && i <= dmax) ? i : kInf;
        size_t band_min = kInf;
        for (size_t j = lo; j <= hi; ++j) {
            size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            size_t up = row[j];
            size_t left = row[j - 1];
            size_t next = diag + cost;
            if (up != kInf && up + 1 < next) next = up + 1;
            if (left != kInf && left + 1 < next) next = left + 1;
            diag = up;
            row[j] = next;
            band_min = std::min(band_min, next);
        }
        if (hi < b.size()) row[hi + 1] = kInf;
        if (band_min > dmax) return std::nullopt;
    }
    size_t d = row[b.size()];
    if (d > dmax) return std::nullopt;
    return d;
}

std::optional<size_t> levenshtein_bounded(std::string_view a, std::string_view b, size_t dmax) {
    return levenshtein_bounded(uni::decode_utf8(a), uni::decode_utf8(b), dmax);
}

void EditDistanceIndex::insert(std::string_view word) {
    std::u32string w = uni::decode_utf8(word);
    if (!root_) {
        root_ = std::make_unique<Node>(Node{std::move(w), {}});
        size_ = 1;
        return;
    }
    Node* cur = root_.get();
    for (;;) {
        size_t d = levenshtein(std::u32string_view(w), std::u32string_view(cur->word));
        if (d == 0) return;
        auto it = cur->children.find(d);
        if (it == cur->children.end()) {
            cur->children.emplace(d, std::make_unique<Node>(Node{std::move(w), {}}));
            ++size_;
            return;
        }
        cur = it->second.get();
    }
}

EditDistanceIndex EditDistanceIndex::build(const std::vector<std::string>& words) {
    std::vector<std::string> sorted(words);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    EditDistanceIndex index;
    for (const auto& w : sorted) index.insert(w);
    return index;
}

std::vector<EditDistanceIndex::Hit> EditDistanceIndex::query_within(std::string_view w,
                                                                    size_t dmax) const {
    std::vector<Hit> hits;
    if (!root_) return hits;
    std::u32string q = uni::decode_utf8(w);
    std::vector<const Node*> stack{root_.get()};
    while (!stack.empty()) {
        const Node* node = stack.back();
        stack.pop_back();
        ++visits_;
        size_t d = levenshtein(std::u32string_view(q), std::u32string_view(node->word));
        if (d <= dmax) hits.push_back({uni::encode_utf8(node->word), d});
        size_t lo = d > dmax ? d - dmax : 0;
        size_t hi = d + dmax;
        for (auto it = node->children.lower_bound(lo);
             it != node->children.end() && it->first <= hi; ++it) {
            stack.push_back(it->second.get());
        }
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        return a.distance != b.distance ? a.distance < b.distance : a.word < b.word;
    });
    return hits;
}

}  // namespace abusedet
