#include "abusedet/forest.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "abusedet/parallel.hpp"

namespace abusedet {

namespace {

uint64_t mix_seed(uint64_t seed, uint64_t salt) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct TreeGrower {
    const std::vector<std::vector<double>>& cols;  // column-major features
    const std::vector<Label>& y;
    size_t n_features;
    size_t m_try;
    std::mt19937_64& rng;
    std::vector<double>& importance;  // accumulated raw MDI
    double n_total;

    std::vector<size_t> feat_pool;
    std::vector<std::pair<double, int>> scratch;  // (value, is_abuse)

    TreeGrower(const std::vector<std::vector<double>>& cols_, const std::vector<Label>& y_,
               std::mt19937_64& rng_, std::vector<double>& importance_, double n_total_)
        : cols(cols_), y(y_), n_features(cols_.size()),
          m_try(std::max<size_t>(1, static_cast<size_t>(std::sqrt(static_cast<double>(cols_.size()))))),
          rng(rng_), importance(importance_), n_total(n_total_) {
        feat_pool.resize(n_features);
        for (size_t f = 0; f < n_features; ++f) feat_pool[f] = f;
    }

    static double gini(double pos, double total) {
        if (total <= 0) return 0;
        double p = pos / total;
        return 2.0 * p * (1.0 - p);
    }

    void grow(std::vector<size_t>& node) {
        double n_node = static_cast<double>(node.size());
        double pos = 0;
        for (size_t i : node)
            if (y[i] == Label::Abuse) pos += 1;
        double node_gini = gini(pos, n_node);
        if (node.size() < 2 || node_gini == 0) return;

        for (size_t k = 0; k < m_try; ++k)
            std::swap(feat_pool[k], feat_pool[k + rng() % (n_features - k)]);

        double best_gain = 0;
        size_t best_feat = n_features;
        double best_thr = 0;
        for (size_t k = 0; k < m_try; ++k) {
            size_t f = feat_pool[k];
            const std::vector<double>& col = cols[f];
            scratch.clear();
            for (size_t i : node) scratch.emplace_back(col[i], y[i] == Label::Abuse ? 1 : 0);
            std::sort(scratch.begin(), scratch.end());
            double left_n = 0, left_pos = 0;
            for (size_t i = 0; i + 1 < scratch.size(); ++i) {
                left_n += 1;
                left_pos += scratch[i].second;
                if (!(scratch[i].first < scratch[i + 1].first)) continue;
                double right_n = n_node - left_n;
                double right_pos = pos - left_pos;
                double gain = node_gini - (left_n * gini(left_pos, left_n) +
                                           right_n * gini(right_pos, right_n)) / n_node;
                if (gain > best_gain) {
                    double thr = 0.5 * (scratch[i].first + scratch[i + 1].first);
                    if (!(thr < scratch[i + 1].first)) thr = scratch[i].first;
                    best_gain = gain;
                    best_feat = f;
                    best_thr = thr;
                }
            }
        }
        if (best_feat == n_features) return;

        std::vector<size_t> left, right;
        left.reserve(node.size());
        right.reserve(node.size());
        const std::vector<double>& col = cols[best_feat];
        for (size_t i : node)
            (col[i] <= best_thr ? left : right).push_back(i);
        if (left.empty() || right.empty()) return;

        importance[best_feat] += n_node / n_total * best_gain;
        node.clear();
        node.shrink_to_fit();
        grow(left);
        grow(right);
    }
};

}  // namespace

ImportanceReport tree_importance(const std::vector<FeatureVector>& X,
                                 const std::vector<Label>& y,
                                 const std::vector<std::string>& names, size_t runs,
                                 uint64_t seed, size_t jobs, size_t trees) {
    if (X.size() != y.size())
        throw std::runtime_error("tree_importance: X and y length mismatch");
    if (X.empty()) throw std::runtime_error("tree_importance: empty input");
    if (runs == 0) throw std::runtime_error("tree_importance: runs must be positive");
    size_t d = X[0].size();
    if (names.size() != d)
        throw std::runtime_error("tree_importance: feature name count mismatch");
    size_t counts[2] = {0, 0};
    for (Label l : y) ++counts[static_cast<int>(l)];
    if (counts[0] == 0 || counts[1] == 0)
        throw std::runtime_error("tree_importance: input must contain both classes");

    std::vector<std::vector<double>> cols(d, std::vector<double>(X.size()));
    for (size_t i = 0; i < X.size(); ++i) {
        if (X[i].size() != d) throw std::runtime_error("tree_importance: ragged matrix");
        for (size_t f = 0; f < d; ++f) cols[f][i] = X[i][f];
    }

    ImportanceReport report;
    report.features = names;
    report.runs = runs;
    report.per_run.assign(runs, std::vector<double>(d, 0.0));

    size_t n = X.size();
    parallel_for(0, runs, jobs, [&](size_t run) {
        std::mt19937_64 rng(mix_seed(seed, run));
        std::vector<double> run_sum(d, 0.0);
        size_t counted = 0;
        for (size_t t = 0; t < trees; ++t) {
            std::vector<size_t> sample(n);
            for (size_t i = 0; i < n; ++i) sample[i] = rng() % n;
            std::vector<double> tree_imp(d, 0.0);
            TreeGrower grower(cols, y, rng, tree_imp, static_cast<double>(n));
            grower.grow(sample);
            double total = 0;
            for (double v : tree_imp) total += v;
            if (total <= 0) continue;
            for (size_t f = 0; f < d; ++f) run_sum[f] += tree_imp[f] / total;
            ++counted;
        }
        if (counted > 0)
            for (size_t f = 0; f < d; ++f) report.per_run[run][f] = run_sum[f] / static_cast<double>(counted);
    });

    report.mean.assign(d, 0.0);
    report.stddev.assign(d, 0.0);
    for (const auto& run : report.per_run)
        for (size_t f = 0; f < d; ++f) report.mean[f] += run[f];
    for (size_t f = 0; f < d; ++f) report.mean[f] /= static_cast<double>(runs);
    for (const auto& run : report.per_run)
        for (size_t f = 0; f < d; ++f) {
            double delta = run[f] - report.mean[f];
            report.stddev[f] += delta * delta;
        }
    for (size_t f = 0; f < d; ++f)
        report.stddev[f] = std::sqrt(report.stddev[f] / static_cast<double>(runs));
    return report;
}

}  // namespace abusedet
