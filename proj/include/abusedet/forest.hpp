#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abusedet/corpus.hpp"
#include "abusedet/features.hpp"

namespace abusedet {

struct ImportanceReport {
    std::vector<std::string> features;
    std::vector<double> mean;
    std::vector<double> stddev;
    std::vector<std::vector<double>> per_run;  // runs x features, each sums to 1
    size_t runs = 0;
};

// Each run grows `trees` randomized decision trees (bootstrap sample, sqrt(d)
// features per split, Gini impurity, unlimited depth) and averages their
// normalized mean-decrease-impurity vectors. Runs are independently seeded,
// so results are reproducible for a fixed (seed, runs) and any job count.
ImportanceReport tree_importance(const std::vector<FeatureVector>& X,
                                 const std::vector<Label>& y,
                                 const std::vector<std::string>& names, size_t runs,
                                 uint64_t seed, size_t jobs = 1, size_t trees = 100);

}  // namespace abusedet
