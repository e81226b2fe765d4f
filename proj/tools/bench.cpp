#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>

#include "abusedet/eval.hpp"
#include "abusedet/forest.hpp"
#include "abusedet/synth.hpp"

using namespace abusedet;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    size_t jobs = std::max(1u, std::thread::hardware_concurrency());
    if (argc > 1) {
        char* end = nullptr;
        unsigned long parsed = std::strtoul(argv[1], &end, 10);
        if (end == argv[1] || *end != '\0' || parsed == 0) {
            std::fprintf(stderr, "usage: %s [jobs]\n", argv[0]);
            return 2;
        }
        jobs = parsed;
    }

    SynthConfig synth;
    synth.n_abuse = 200;
    synth.n_nonabuse = 400;
    synth.n_users = 30;
    synth.n_channels = 8;
    synth.seed = 4;
    Corpus corpus = generate_synthetic(synth);

    RunConfig serial_cfg;
    serial_cfg.seed = 4;
    serial_cfg.jobs = 1;
    RunConfig parallel_cfg = serial_cfg;
    parallel_cfg.jobs = jobs;
    LabeledDataset ds = make_dataset(corpus, serial_cfg);
    std::printf("corpus: %zu messages, dataset: %zu items, jobs: %zu\n",
                corpus.messages.size(), ds.items.size(), jobs);

    auto t0 = clock_type::now();
    EvalContext serial_ctx = make_eval_context(corpus, ds, serial_cfg);
    double serial_feat = seconds_since(t0);
    t0 = clock_type::now();
    EvalContext parallel_ctx = make_eval_context(corpus, ds, parallel_cfg);
    double parallel_feat = seconds_since(t0);
    bool feat_match = serial_ctx.statics == parallel_ctx.statics;
    std::printf("feature extraction: serial %.3fs, %zu jobs %.3fs, speedup %.2fx, outputs %s\n",
                serial_feat, jobs, parallel_feat, serial_feat / parallel_feat,
                feat_match ? "identical" : "DIFFER");

    std::vector<FeatureVector> X = full_feature_matrix(serial_ctx);
    std::vector<std::string> names;
    for (size_t i : serial_ctx.active) names.push_back(feature_registry()[i]);

    const size_t runs = 8;
    t0 = clock_type::now();
    ImportanceReport serial_rep = tree_importance(X, serial_ctx.labels, names, runs, 4, 1);
    double serial_imp = seconds_since(t0);
    t0 = clock_type::now();
    ImportanceReport parallel_rep = tree_importance(X, parallel_ctx.labels, names, runs, 4, jobs);
    double parallel_imp = seconds_since(t0);
    bool imp_match = serial_rep.per_run == parallel_rep.per_run;
    std::printf("tree importance (%zu runs): serial %.3fs, %zu jobs %.3fs, speedup %.2fx, outputs %s\n",
                runs, serial_imp, jobs, parallel_imp, serial_imp / parallel_imp,
                imp_match ? "identical" : "DIFFER");

    t0 = clock_type::now();
    CrossValResult serial_cv = cross_validate(serial_ctx, 5, 4, false);
    double serial_cv_s = seconds_since(t0);
    t0 = clock_type::now();
    CrossValResult parallel_cv = cross_validate(parallel_ctx, 5, 4, false);
    double parallel_cv_s = seconds_since(t0);
    bool cv_match = serial_cv.mean.f_measure == parallel_cv.mean.f_measure;
    for (size_t f = 0; f < serial_cv.folds.size() && cv_match; ++f)
        cv_match = serial_cv.folds[f].scores == parallel_cv.folds[f].scores;
    std::printf("cross validation (5 folds): serial %.3fs, %zu jobs %.3fs, speedup %.2fx, outputs %s\n",
                serial_cv_s, jobs, parallel_cv_s, serial_cv_s / parallel_cv_s,
                cv_match ? "identical" : "DIFFER");

    return feat_match && imp_match && cv_match ? 0 : 1;
}
