#include "abusedet/reports.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace abusedet {

std::string format_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string csv_escape(const std::string& field) {
    bool needs_quotes = field.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

namespace {

std::ofstream open_report(const std::string& path, const RunConfig& cfg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << "# " << to_json_string(cfg) << '\n';
    return out;
}

void finish_report(std::ofstream& out, const std::string& path) {
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace

void write_metrics_csv(const std::string& path, const RunConfig& cfg, const CrossValResult& cv) {
    std::ofstream out = open_report(path, cfg);
    out << "fold,tp,fp,fn,tn,precision,recall,f_measure\n";
    for (size_t f = 0; f < cv.fold_metrics.size(); ++f) {
        const Metrics& m = cv.fold_metrics[f];
        out << f << ',' << m.tp << ',' << m.fp << ',' << m.fn << ',' << m.tn << ','
            << format_fixed(m.precision) << ',' << format_fixed(m.recall) << ','
            << format_fixed(m.f_measure) << '\n';
    }
    const Metrics& m = cv.mean;
    out << "mean," << m.tp << ',' << m.fp << ',' << m.fn << ',' << m.tn << ','
        << format_fixed(m.precision) << ',' << format_fixed(m.recall) << ','
        << format_fixed(m.f_measure) << '\n';
    finish_report(out, path);
}

void write_prcurve_csv(const std::string& path, const RunConfig& cfg,
                       const std::vector<PrCurve>& folds, const AveragedPrCurve& avg) {
    std::ofstream out = open_report(path, cfg);
    out << "fold,threshold,precision,recall\n";
    for (size_t f = 0; f < folds.size(); ++f)
        for (const PrPoint& p : folds[f].points)
            out << f << ',' << format_fixed(p.threshold) << ',' << format_fixed(p.precision)
                << ',' << format_fixed(p.recall) << '\n';
    for (size_t g = 0; g < avg.recall.size(); ++g)
        out << "mean,," << format_fixed(avg.precision[g]) << ',' << format_fixed(avg.recall[g])
            << '\n';
    finish_report(out, path);
}

void write_importance_csv(const std::string& path, const RunConfig& cfg,
                          const ImportanceReport& report) {
    std::ofstream out = open_report(path, cfg);
    out << "feature,mean,std,runs\n";
    for (size_t f = 0; f < report.features.size(); ++f)
        out << csv_escape(report.features[f]) << ',' << format_fixed(report.mean[f]) << ','
            << format_fixed(report.stddev[f]) << ',' << report.runs << '\n';
    finish_report(out, path);
}

void write_ablation_csv(const std::string& path, const RunConfig& cfg,
                        const AblationCurve& curve, size_t full_count) {
    std::ofstream out = open_report(path, cfg);
    out << "step,removed_feature,remaining,f_measure\n";
    out << "0,," << full_count << ',' << format_fixed(curve.full_f) << '\n';
    for (size_t s = 0; s < curve.steps.size(); ++s) {
        const AblationStep& step = curve.steps[s];
        out << (s + 1) << ',' << csv_escape(step.removed_feature) << ',' << step.remaining
            << ',' << format_fixed(step.f_measure) << '\n';
    }
    finish_report(out, path);
}

void write_features_csv(const std::string& path, const RunConfig& cfg,
                        const std::vector<FeatureRow>& rows) {
    std::ofstream out = open_report(path, cfg);
    out << "id,label,split";
    for (const std::string& name : feature_registry()) out << ',' << csv_escape(name);
    out << '\n';
    for (const FeatureRow& row : rows) {
        out << csv_escape(row.id) << ',' << row.label << ',' << csv_escape(row.split);
        for (double v : row.values) out << ',' << format_fixed(v);
        out << '\n';
    }
    finish_report(out, path);
}

}  // namespace abusedet
