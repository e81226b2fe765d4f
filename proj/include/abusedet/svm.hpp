#pragma once

#include <cstdint>
#include <vector>

#include "abusedet/corpus.hpp"
#include "abusedet/features.hpp"

namespace abusedet {

struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stddev;  // degenerate columns get 1

    static Standardizer fit(const std::vector<FeatureVector>& X);
    FeatureVector apply(const FeatureVector& x) const;
};

struct SVMModel {
    std::vector<double> weights;  // over standardized features
    double bias = 0;
    double c = 1.0;
    double class_weight[2] = {1.0, 1.0};  // NonAbuse = 0, Abuse = 1
    Standardizer scaler;
    std::vector<double> objective_trace;  // dual objective per epoch
};

// L2-regularized hinge loss via dual coordinate descent with balanced class
// weights N/(2*N_c). Deterministic for a fixed seed; stops when the maximal
// projected gradient over an epoch falls below tol.
SVMModel train_svm(const std::vector<FeatureVector>& X, const std::vector<Label>& y,
                   double c = 1.0, uint64_t seed = 0, double tol = 1e-4);

double svm_decision(const SVMModel& model, const FeatureVector& x);

struct PlattParams {
    double a = 0;
    double b = 0;
};

// Sigmoid fit with target smoothing on (score, label) pairs.
PlattParams fit_platt(const std::vector<double>& scores, const std::vector<Label>& labels);

double platt_probability(const PlattParams& params, double score);

// Full second stage: SVM on all data plus Platt parameters fitted on 3-fold
// internal cross-validated scores.
struct CalibratedSvm {
    SVMModel svm;
    PlattParams platt;
};

CalibratedSvm train_calibrated_svm(const std::vector<FeatureVector>& X,
                                   const std::vector<Label>& y, double c = 1.0,
                                   uint64_t seed = 0);

}  // namespace abusedet
