#pragma once

#include <string>
#include <vector>

#include "abusedet/eval.hpp"
#include "abusedet/forest.hpp"
#include "abusedet/runconfig.hpp"

namespace abusedet {

// Fixed-point with 6 fractional digits, the format shared by every report.
std::string format_fixed(double v);

std::string csv_escape(const std::string& field);

struct FeatureRow {
    std::string id;
    int label = 0;
    std::string split;
    FeatureVector values;  // full registry order
};

// Every report starts with the resolved run config as a JSON comment line,
// then a header row; numeric cells use 6 fractional digits.
void write_metrics_csv(const std::string& path, const RunConfig& cfg, const CrossValResult& cv);
void write_prcurve_csv(const std::string& path, const RunConfig& cfg,
                       const std::vector<PrCurve>& folds, const AveragedPrCurve& avg);
void write_importance_csv(const std::string& path, const RunConfig& cfg,
                          const ImportanceReport& report);
void write_ablation_csv(const std::string& path, const RunConfig& cfg,
                        const AblationCurve& curve, size_t full_count);
void write_features_csv(const std::string& path, const RunConfig& cfg,
                        const std::vector<FeatureRow>& rows);

}  // namespace abusedet
