#include "abusedet/svm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace abusedet {

Standardizer Standardizer::fit(const std::vector<FeatureVector>& X) {
    if (X.empty()) throw std::runtime_error("Standardizer::fit: empty matrix");
    size_t d = X[0].size();
    Standardizer s;
    s.mean.assign(d, 0);
    s.stddev.assign(d, 0);
    double n = static_cast<double>(X.size());
    for (const FeatureVector& row : X) {
        if (row.size() != d) throw std::runtime_error("Standardizer::fit: ragged matrix");
        for (size_t j = 0; j < d; ++j) s.mean[j] += row[j];
    }
    for (size_t j = 0; j < d; ++j) s.mean[j] /= n;
    for (const FeatureVector& row : X)
        for (size_t j = 0; j < d; ++j) {
            double delta = row[j] - s.mean[j];
            s.stddev[j] += delta * delta;
        }
    for (size_t j = 0; j < d; ++j) {
        s.stddev[j] = std::sqrt(s.stddev[j] / n);
        if (!(s.stddev[j] > 1e-12)) s.stddev[j] = 1.0;
    }
    return s;
}

FeatureVector Standardizer::apply(const FeatureVector& x) const {
    if (x.size() != mean.size())
        throw std::runtime_error("Standardizer::apply: feature length mismatch");
    FeatureVector out(x.size());
    for (size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - mean[j]) / stddev[j];
    return out;
}

SVMModel train_svm(const std::vector<FeatureVector>& X, const std::vector<Label>& y,
                   double c, uint64_t seed, double tol) {
    if (X.size() != y.size()) throw std::runtime_error("train_svm: X and y length mismatch");
    if (X.empty()) throw std::runtime_error("train_svm: empty training data");
    size_t counts[2] = {0, 0};
    for (Label l : y) ++counts[static_cast<int>(l)];
    if (counts[0] == 0 || counts[1] == 0)
        throw std::runtime_error("train_svm: training data must contain both classes");
    for (const FeatureVector& row : X)
        for (double v : row)
            if (!std::isfinite(v)) throw std::runtime_error("train_svm: non-finite feature value");

    SVMModel model;
    model.c = c;
    model.scaler = Standardizer::fit(X);
    double n = static_cast<double>(X.size());
    for (int cls = 0; cls < 2; ++cls)
        model.class_weight[cls] = n / (2.0 * static_cast<double>(counts[cls]));

    // Standardized rows augmented with a constant bias column.
    size_t d = X[0].size();
    std::vector<FeatureVector> Z;
    Z.reserve(X.size());
    for (const FeatureVector& row : X) {
        FeatureVector z = model.scaler.apply(row);
        z.push_back(1.0);
        Z.push_back(std::move(z));
    }

    std::vector<double> sign(y.size());
    std::vector<double> upper(y.size());
    std::vector<double> qdiag(y.size());
    for (size_t i = 0; i < y.size(); ++i) {
        sign[i] = y[i] == Label::Abuse ? 1.0 : -1.0;
        upper[i] = c * model.class_weight[static_cast<int>(y[i])];
        double q = 0;
        for (double v : Z[i]) q += v * v;
        qdiag[i] = q;
    }

    std::vector<double> alpha(y.size(), 0.0);
    std::vector<double> w(d + 1, 0.0);
    std::vector<size_t> order(y.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 rng(seed);

    const size_t max_epochs = 2000;
    for (size_t epoch = 0; epoch < max_epochs; ++epoch) {
        for (size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng() % i]);
        double max_pg = 0;
        for (size_t idx : order) {
            if (qdiag[idx] <= 0) continue;
            double margin = 0;
            for (size_t j = 0; j <= d; ++j) margin += w[j] * Z[idx][j];
            double g = sign[idx] * margin - 1.0;
            double pg = g;
            if (alpha[idx] <= 0) pg = std::min(g, 0.0);
            else if (alpha[idx] >= upper[idx]) pg = std::max(g, 0.0);
            max_pg = std::max(max_pg, std::fabs(pg));
            if (std::fabs(pg) < 1e-14) continue;
            double next = std::clamp(alpha[idx] - g / qdiag[idx], 0.0, upper[idx]);
            double delta = (next - alpha[idx]) * sign[idx];
            alpha[idx] = next;
            for (size_t j = 0; j <= d; ++j) w[j] += delta * Z[idx][j];
        }
        double wtw = 0;
        for (double v : w) wtw += v * v;
        double alpha_sum = 0;
        for (double a : alpha) alpha_sum += a;
        model.objective_trace.push_back(0.5 * wtw - alpha_sum);
        if (max_pg < tol) break;
    }

    model.weights.assign(w.begin(), w.begin() + static_cast<ptrdiff_t>(d));
    model.bias = w[d];
    return model;
}

double svm_decision(const SVMModel& model, const FeatureVector& x) {
    if (x.size() != model.weights.size())
        throw std::runtime_error("svm_decision: feature length mismatch");
    FeatureVector z = model.scaler.apply(x);
    double score = model.bias;
    for (size_t j = 0; j < z.size(); ++j) score += model.weights[j] * z[j];
    return score;
}

PlattParams fit_platt(const std::vector<double>& scores, const std::vector<Label>& labels) {
    if (scores.size() != labels.size())
        throw std::runtime_error("fit_platt: scores and labels length mismatch");
    if (scores.empty()) throw std::runtime_error("fit_platt: empty input");
    double n_pos = 0, n_neg = 0;
    for (Label l : labels) (l == Label::Abuse ? n_pos : n_neg) += 1;
    if (n_pos == 0 || n_neg == 0)
        throw std::runtime_error("fit_platt: both classes required");
    double lo = *std::min_element(scores.begin(), scores.end());
    double hi = *std::max_element(scores.begin(), scores.end());
    if (!(hi > lo)) throw std::runtime_error("fit_platt: degenerate scores (all equal)");

    // Newton iterations with backtracking (Lin, Lin & Weng formulation).
    double hi_target = (n_pos + 1.0) / (n_pos + 2.0);
    double lo_target = 1.0 / (n_neg + 2.0);
    std::vector<double> target(scores.size());
    for (size_t i = 0; i < labels.size(); ++i)
        target[i] = labels[i] == Label::Abuse ? hi_target : lo_target;

    double a = 0.0;
    double b = std::log((n_neg + 1.0) / (n_pos + 1.0));
    auto objective = [&](double pa, double pb) {
        double f = 0;
        for (size_t i = 0; i < scores.size(); ++i) {
            double fapb = pa * scores[i] + pb;
            if (fapb >= 0)
                f += target[i] * fapb + std::log1p(std::exp(-fapb));
            else
                f += (target[i] - 1.0) * fapb + std::log1p(std::exp(fapb));
        }
        return f;
    };

    double fval = objective(a, b);
    const double min_step = 1e-10;
    const double sigma = 1e-12;
    for (int iter = 0; iter < 100; ++iter) {
        double h11 = sigma, h22 = sigma, h21 = 0, g1 = 0, g2 = 0;
        for (size_t i = 0; i < scores.size(); ++i) {
            double fapb = a * scores[i] + b;
            double p, q;
            if (fapb >= 0) {
                p = std::exp(-fapb) / (1.0 + std::exp(-fapb));
                q = 1.0 / (1.0 + std::exp(-fapb));
            } else {
                p = 1.0 / (1.0 + std::exp(fapb));
                q = std::exp(fapb) / (1.0 + std::exp(fapb));
            }
            double d2 = p * q;
            h11 += scores[i] * scores[i] * d2;
            h22 += d2;
            h21 += scores[i] * d2;
            double d1 = target[i] - p;
            g1 += scores[i] * d1;
            g2 += d1;
        }
        if (std::fabs(g1) < 1e-5 && std::fabs(g2) < 1e-5) break;
        double det = h11 * h22 - h21 * h21;
        double da = -(h22 * g1 - h21 * g2) / det;
        double db = -(-h21 * g1 + h11 * g2) / det;
        double gd = g1 * da + g2 * db;
        double step = 1.0;
        while (step >= min_step) {
            double na = a + step * da;
            double nb = b + step * db;
            double nf = objective(na, nb);
            if (nf < fval + 0.0001 * step * gd) {
                a = na;
                b = nb;
                fval = nf;
                break;
            }
            step /= 2.0;
        }
        if (step < min_step) break;
    }
    PlattParams params;
    params.a = a;
    params.b = b;
    return params;
}

double platt_probability(const PlattParams& params, double score) {
    double fapb = params.a * score + params.b;
    if (fapb >= 0) return std::exp(-fapb) / (1.0 + std::exp(-fapb));
    return 1.0 / (1.0 + std::exp(fapb));
}

CalibratedSvm train_calibrated_svm(const std::vector<FeatureVector>& X,
                                   const std::vector<Label>& y, double c, uint64_t seed) {
    CalibratedSvm result;
    result.svm = train_svm(X, y, c, seed);

    size_t counts[2] = {0, 0};
    for (Label l : y) ++counts[static_cast<int>(l)];
    if (std::min(counts[0], counts[1]) < 3) {
        // Too small for an internal split; fall back to in-sample scores.
        std::vector<double> scores;
        scores.reserve(X.size());
        for (const FeatureVector& x : X) scores.push_back(svm_decision(result.svm, x));
        result.platt = fit_platt(scores, y);
        return result;
    }

    // 3-fold stratified internal split for calibration scores.
    LabeledDataset ds;
    for (size_t i = 0; i < y.size(); ++i) ds.items.push_back({i, y[i]});
    std::vector<double> cv_scores(y.size(), 0.0);
    std::vector<FoldPartition> folds = kfold_partitions(ds, 3, seed + 101);
    for (const FoldPartition& fold : folds) {
        std::vector<FeatureVector> xt;
        std::vector<Label> yt;
        for (size_t i : fold.train_items) {
            xt.push_back(X[i]);
            yt.push_back(y[i]);
        }
        SVMModel inner = train_svm(xt, yt, c, seed + 7);
        for (size_t i : fold.test_items) cv_scores[i] = svm_decision(inner, X[i]);
    }
    result.platt = fit_platt(cv_scores, y);
    return result;
}

}  // namespace abusedet
