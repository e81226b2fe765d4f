#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace abusedet {

// Unit-cost edit distance over unicode scalar values.
size_t levenshtein(std::string_view a, std::string_view b);
size_t levenshtein(std::u32string_view a, std::u32string_view b);

// Banded variant: returns the distance if <= dmax, nullopt otherwise.
// Aborts as soon as the band minimum exceeds dmax.
std::optional<size_t> levenshtein_bounded(std::string_view a, std::string_view b, size_t dmax);
std::optional<size_t> levenshtein_bounded(std::u32string_view a, std::u32string_view b, size_t dmax);

// Burkhard-Keller metric tree over the edit distance.
class EditDistanceIndex {
  public:
    void insert(std::string_view word);
    static EditDistanceIndex build(const std::vector<std::string>& words);

    struct Hit {
        std::string word;
        size_t distance;
    };
    // All words within dmax of w, sorted by (distance, word).
    std::vector<Hit> query_within(std::string_view w, size_t dmax) const;

    size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    // Nodes touched by queries since construction (pruning instrumentation).
    uint64_t visits() const { return visits_; }
    void reset_visits() const { visits_ = 0; }

  private:
    struct Node {
        std::u32string word;
        std::map<size_t, std::unique_ptr<Node>> children;
    };
    std::unique_ptr<Node> root_;
    size_t size_ = 0;
    mutable uint64_t visits_ = 0;
};

}  // namespace abusedet
