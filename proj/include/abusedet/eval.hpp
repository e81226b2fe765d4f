#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abusedet/corpus.hpp"
#include "abusedet/features.hpp"
#include "abusedet/forest.hpp"
#include "abusedet/pipeline.hpp"
#include "abusedet/runconfig.hpp"
#include "abusedet/svm.hpp"

namespace abusedet {

struct Metrics {
    size_t tp = 0, fp = 0, fn = 0, tn = 0;
    double precision = 0, recall = 0, f_measure = 0;
};

// Abuse is the positive class; zero denominators yield 0.
Metrics compute_metrics(const std::vector<Label>& predicted, const std::vector<Label>& truth);

struct PrPoint {
    double threshold = 0;
    double precision = 0;
    double recall = 0;
};

struct PrCurve {
    std::vector<PrPoint> points;  // one per distinct probability, threshold descending
};

PrCurve pr_curve(const std::vector<double>& probs, const std::vector<Label>& truth);

// Per-fold curves averaged on a fixed 101-point recall grid; precision at
// recall r is the best precision achievable at recall >= r in each fold.
struct AveragedPrCurve {
    std::vector<double> recall;
    std::vector<double> precision;
};

AveragedPrCurve average_pr_curves(const std::vector<PrCurve>& curves);

// Dataset-wide caches shared by every fold: tokens, fold-independent feature
// slots, and the arm's active columns. Fold-dependent slots (NB posterior,
// tf-idf sums) stay zero until a fold's stage-one models fill them.
struct EvalContext {
    const Corpus* corpus = nullptr;
    LabeledDataset ds;
    RunConfig cfg;
    FeatureResources res;
    std::vector<size_t> active;
    std::vector<Label> labels;
    std::vector<TokenizedText> tokens;
    std::vector<FeatureVector> statics;
};

EvalContext make_eval_context(const Corpus& corpus, LabeledDataset ds, const RunConfig& cfg);

struct FoldArtifacts {
    Stage1Models stage1;
    CalibratedSvm svm;
    bool calibrated = false;
};

FoldArtifacts train_fold_stages(const EvalContext& ctx, const std::vector<size_t>& train_items,
                                uint64_t fold_seed, bool calibrate);

struct FoldResult {
    Metrics metrics;
    std::vector<double> scores;
    std::vector<double> probs;
    std::vector<Label> preds;
    std::vector<Label> truth;
};

FoldResult eval_fold(const EvalContext& ctx, const FoldArtifacts& artifacts,
                     const std::vector<size_t>& test_items);

struct CrossValResult {
    std::vector<Metrics> fold_metrics;
    std::vector<FoldResult> folds;
    Metrics mean;  // counts summed, P/R/F unweighted fold means
};

// Labels come from the SVM decision (score > 0); calibrate adds Platt
// probabilities per fold for PR curves.
CrossValResult cross_validate(const EvalContext& ctx, size_t k, uint64_t seed,
                              bool calibrate = false);

// Full active-column feature matrix for the whole dataset, with stage one
// trained on every item (no fold split); used for importance estimation.
std::vector<FeatureVector> full_feature_matrix(const EvalContext& ctx);

struct AblationStep {
    std::string removed_feature;
    size_t remaining = 0;
    double f_measure = 0;
};

struct AblationCurve {
    double full_f = 0;  // no-removal baseline, equals cross_validate F
    std::vector<AblationStep> steps;
};

// Removes active features one at a time by ascending mean importance,
// retraining only the SVM per fold at each step.
AblationCurve ablation_curve(const EvalContext& ctx, size_t k, uint64_t seed,
                             const ImportanceReport& report);

}  // namespace abusedet
