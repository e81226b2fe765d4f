#pragma once

#include <string>
#include <vector>

#include "abusedet/corpus.hpp"
#include "abusedet/features.hpp"
#include "abusedet/runconfig.hpp"
#include "abusedet/svm.hpp"

namespace abusedet {

constexpr int kModelFormatVersion = 1;

// Everything needed to score new messages: stage-one models plus the
// calibrated SVM over the arm's active registry columns.
struct PipelineModel {
    int format_version = kModelFormatVersion;
    int registry_version = kFeatureRegistryVersion;
    PrepMode prep_mode = PrepMode::Advanced;
    Arm arm = Arm::Full;
    bool nb_hard_label = false;
    bool sentiment_count_mode = false;
    size_t fuzzy_dmax = 2;
    std::vector<size_t> active;  // registry indices fed to the SVM
    Stage1Models stage1;
    CalibratedSvm svm;
};

// Registry indices used by an arm; classic drops the business and PNE slots.
std::vector<size_t> arm_feature_indices(Arm arm);

FeatureVector select_columns(const FeatureVector& full, const std::vector<size_t>& active);

void save_model(const PipelineModel& model, const std::string& path);
PipelineModel load_model(const std::string& path);

struct Prediction {
    double score = 0;
    double probability = 0;
    Label label = Label::NonAbuse;
};

Prediction predict_features(const PipelineModel& model, const FeatureVector& full,
                            double threshold = 0.5);

// Dataset built per run config: kind filter plus balance-aware sampling.
LabeledDataset make_dataset(const Corpus& corpus, const RunConfig& cfg);

PipelineModel train_pipeline(const Corpus& corpus, const LabeledDataset& ds,
                             const RunConfig& cfg, const FeatureResources& res);

}  // namespace abusedet
