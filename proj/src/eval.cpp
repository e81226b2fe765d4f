#include "abusedet/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "abusedet/parallel.hpp"
#include "abusedet/usermodel.hpp"

namespace abusedet {

Metrics compute_metrics(const std::vector<Label>& predicted, const std::vector<Label>& truth) {
    if (predicted.size() != truth.size())
        throw std::runtime_error("compute_metrics: predictions and truth length mismatch");
    Metrics m;
    for (size_t i = 0; i < predicted.size(); ++i) {
        bool pred_abuse = predicted[i] == Label::Abuse;
        bool true_abuse = truth[i] == Label::Abuse;
        if (pred_abuse && true_abuse) ++m.tp;
        else if (pred_abuse) ++m.fp;
        else if (true_abuse) ++m.fn;
        else ++m.tn;
    }
    m.precision = m.tp + m.fp == 0 ? 0.0
                                   : static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp);
    m.recall = m.tp + m.fn == 0 ? 0.0
                                : static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
    m.f_measure = m.precision + m.recall == 0
                      ? 0.0
                      : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

PrCurve pr_curve(const std::vector<double>& probs, const std::vector<Label>& truth) {
    if (probs.size() != truth.size())
        throw std::runtime_error("pr_curve: probabilities and truth length mismatch");
    PrCurve curve;
    if (probs.empty()) return curve;

    std::vector<size_t> order(probs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return probs[a] > probs[b]; });

    double total_pos = 0;
    for (Label l : truth)
        if (l == Label::Abuse) total_pos += 1;

    double tp = 0, fp = 0;
    size_t i = 0;
    while (i < order.size()) {
        double t = probs[order[i]];
        while (i < order.size() && probs[order[i]] == t) {
            if (truth[order[i]] == Label::Abuse) tp += 1;
            else fp += 1;
            ++i;
        }
        PrPoint p;
        p.threshold = t;
        p.precision = tp / (tp + fp);
        p.recall = total_pos == 0 ? 0.0 : tp / total_pos;
        curve.points.push_back(p);
    }
    return curve;
}

namespace {

// Best precision achievable in the curve at recall >= r.
double precision_at(const PrCurve& curve, double r, const std::vector<double>& suffix_max) {
    const auto& pts = curve.points;
    size_t lo = 0, hi = pts.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (pts[mid].recall >= r - 1e-12) hi = mid;
        else lo = mid + 1;
    }
    if (lo == pts.size()) return 0.0;
    return suffix_max[lo];
}

}  // namespace

AveragedPrCurve average_pr_curves(const std::vector<PrCurve>& curves) {
    AveragedPrCurve avg;
    for (int i = 0; i <= 100; ++i) avg.recall.push_back(static_cast<double>(i) / 100.0);
    avg.precision.assign(avg.recall.size(), 0.0);
    if (curves.empty()) return avg;

    std::vector<std::vector<double>> suffix(curves.size());
    for (size_t c = 0; c < curves.size(); ++c) {
        const auto& pts = curves[c].points;
        suffix[c].assign(pts.size(), 0.0);
        double best = 0;
        for (size_t i = pts.size(); i > 0; --i) {
            best = std::max(best, pts[i - 1].precision);
            suffix[c][i - 1] = best;
        }
    }
    for (size_t g = 0; g < avg.recall.size(); ++g) {
        double sum = 0;
        for (size_t c = 0; c < curves.size(); ++c)
            sum += precision_at(curves[c], avg.recall[g], suffix[c]);
        avg.precision[g] = sum / static_cast<double>(curves.size());
    }
    return avg;
}

EvalContext make_eval_context(const Corpus& corpus, LabeledDataset ds, const RunConfig& cfg) {
    EvalContext ctx;
    ctx.corpus = &corpus;
    ctx.ds = std::move(ds);
    ctx.cfg = cfg;
    ctx.res = make_feature_resources(cfg);
    ctx.active = arm_feature_indices(cfg.arm);

    UserHistories histories = build_user_histories(corpus);
    std::vector<TokenizedText> basic_tokens = basic_token_cache(corpus);
    PneConfig pne_cfg = cfg.pne_config();

    size_t n = ctx.ds.items.size();
    ctx.labels.resize(n);
    ctx.tokens.resize(n);
    ctx.statics.resize(n);
    parallel_for(0, n, cfg.jobs, [&](size_t i) {
        const Message& msg = corpus.messages[ctx.ds.items[i].corpus_index];
        ctx.labels[i] = ctx.ds.items[i].label;
        ctx.tokens[i] = ctx.res.tokenize(msg.text);
        ContextInputs in =
            context_inputs(corpus, histories, basic_tokens, msg.id, cfg.w_before, pne_cfg);
        ctx.statics[i] =
            assemble_static_features(msg, ctx.tokens[i], ctx.res, in.respondents, in.pne);
    });
    return ctx;
}

namespace {

uint64_t fold_seed(uint64_t seed, size_t fold) { return seed + fold; }

FeatureVector fold_vector(const EvalContext& ctx, size_t item, const Stage1Models& stage1) {
    FeatureVector full = ctx.statics[item];
    fill_fold_features(full, ctx.tokens[item], stage1, ctx.cfg.fuzzy_dmax);
    for (size_t i = 0; i < full.size(); ++i)
        if (!std::isfinite(full[i]))
            throw std::runtime_error("non-finite value for feature " + feature_registry()[i]);
    return select_columns(full, ctx.active);
}

}  // namespace

FoldArtifacts train_fold_stages(const EvalContext& ctx, const std::vector<size_t>& train_items,
                                uint64_t seed, bool calibrate) {
    std::vector<TokenizedText> train_tokens;
    std::vector<Label> train_labels;
    train_tokens.reserve(train_items.size());
    train_labels.reserve(train_items.size());
    for (size_t i : train_items) {
        train_tokens.push_back(ctx.tokens[i]);
        train_labels.push_back(ctx.labels[i]);
    }

    FoldArtifacts art;
    art.stage1 = train_stage1(train_tokens, train_labels, ctx.cfg.nb_hard_label);
    art.calibrated = calibrate;

    std::vector<FeatureVector> X;
    X.reserve(train_items.size());
    for (size_t i : train_items) X.push_back(fold_vector(ctx, i, art.stage1));

    if (calibrate) {
        art.svm = train_calibrated_svm(X, train_labels, ctx.cfg.svm_c, seed);
    } else {
        art.svm.svm = train_svm(X, train_labels, ctx.cfg.svm_c, seed);
    }
    return art;
}

FoldResult eval_fold(const EvalContext& ctx, const FoldArtifacts& artifacts,
                     const std::vector<size_t>& test_items) {
    FoldResult result;
    result.scores.reserve(test_items.size());
    result.probs.reserve(test_items.size());
    for (size_t i : test_items) {
        FeatureVector x = fold_vector(ctx, i, artifacts.stage1);
        double score = svm_decision(artifacts.svm.svm, x);
        result.scores.push_back(score);
        result.probs.push_back(artifacts.calibrated
                                   ? platt_probability(artifacts.svm.platt, score)
                                   : (score > 0 ? 1.0 : 0.0));
        result.preds.push_back(score > 0 ? Label::Abuse : Label::NonAbuse);
        result.truth.push_back(ctx.labels[i]);
    }
    result.metrics = compute_metrics(result.preds, result.truth);
    return result;
}

CrossValResult cross_validate(const EvalContext& ctx, size_t k, uint64_t seed, bool calibrate) {
    std::vector<FoldPartition> parts = kfold_partitions(ctx.ds, k, seed);
    CrossValResult result;
    result.folds.resize(parts.size());
    parallel_for(0, parts.size(), ctx.cfg.jobs, [&](size_t f) {
        FoldArtifacts art =
            train_fold_stages(ctx, parts[f].train_items, fold_seed(seed, f), calibrate);
        result.folds[f] = eval_fold(ctx, art, parts[f].test_items);
    });

    for (const FoldResult& fr : result.folds) result.fold_metrics.push_back(fr.metrics);
    Metrics& mean = result.mean;
    for (const Metrics& m : result.fold_metrics) {
        mean.tp += m.tp;
        mean.fp += m.fp;
        mean.fn += m.fn;
        mean.tn += m.tn;
        mean.precision += m.precision;
        mean.recall += m.recall;
        mean.f_measure += m.f_measure;
    }
    double nf = static_cast<double>(result.fold_metrics.size());
    mean.precision /= nf;
    mean.recall /= nf;
    mean.f_measure /= nf;
    return result;
}

std::vector<FeatureVector> full_feature_matrix(const EvalContext& ctx) {
    Stage1Models stage1 = train_stage1(ctx.tokens, ctx.labels, ctx.cfg.nb_hard_label);
    std::vector<FeatureVector> X(ctx.ds.items.size());
    parallel_for(0, X.size(), ctx.cfg.jobs,
                 [&](size_t i) { X[i] = fold_vector(ctx, i, stage1); });
    return X;
}

AblationCurve ablation_curve(const EvalContext& ctx, size_t k, uint64_t seed,
                             const ImportanceReport& report) {
    if (report.mean.size() != ctx.active.size())
        throw std::runtime_error("ablation_curve: importance report does not match active features");
    for (size_t i = 0; i < ctx.active.size(); ++i)
        if (report.features[i] != feature_registry()[ctx.active[i]])
            throw std::runtime_error("ablation_curve: importance report feature order mismatch");

    std::vector<FoldPartition> parts = kfold_partitions(ctx.ds, k, seed);
    size_t n_folds = parts.size();

    // Stage one is fixed per fold; only the SVM is retrained per step.
    struct FoldData {
        std::vector<FeatureVector> x_train, x_test;
        std::vector<Label> y_train, y_test;
    };
    std::vector<FoldData> folds(n_folds);
    parallel_for(0, n_folds, ctx.cfg.jobs, [&](size_t f) {
        std::vector<TokenizedText> train_tokens;
        std::vector<Label> train_labels;
        for (size_t i : parts[f].train_items) {
            train_tokens.push_back(ctx.tokens[i]);
            train_labels.push_back(ctx.labels[i]);
        }
        Stage1Models stage1 = train_stage1(train_tokens, train_labels, ctx.cfg.nb_hard_label);
        FoldData& fd = folds[f];
        for (size_t i : parts[f].train_items) {
            fd.x_train.push_back(fold_vector(ctx, i, stage1));
            fd.y_train.push_back(ctx.labels[i]);
        }
        for (size_t i : parts[f].test_items) {
            fd.x_test.push_back(fold_vector(ctx, i, stage1));
            fd.y_test.push_back(ctx.labels[i]);
        }
    });

    auto mean_f_with = [&](const std::vector<size_t>& keep) {
        std::vector<double> fold_f(n_folds, 0.0);
        parallel_for(0, n_folds, ctx.cfg.jobs, [&](size_t f) {
            const FoldData& fd = folds[f];
            std::vector<FeatureVector> xt;
            xt.reserve(fd.x_train.size());
            for (const FeatureVector& x : fd.x_train) xt.push_back(select_columns(x, keep));
            SVMModel svm = train_svm(xt, fd.y_train, ctx.cfg.svm_c, fold_seed(seed, f));
            std::vector<Label> preds;
            preds.reserve(fd.x_test.size());
            for (const FeatureVector& x : fd.x_test)
                preds.push_back(svm_decision(svm, select_columns(x, keep)) > 0 ? Label::Abuse
                                                                               : Label::NonAbuse);
            fold_f[f] = compute_metrics(preds, fd.y_test).f_measure;
        });
        double sum = 0;
        for (double v : fold_f) sum += v;
        return sum / static_cast<double>(n_folds);
    };

    // Removal order: ascending mean importance, registry order on ties.
    std::vector<size_t> order(ctx.active.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return report.mean[a] < report.mean[b]; });

    AblationCurve curve;
    std::vector<size_t> keep(ctx.active.size());
    std::iota(keep.begin(), keep.end(), 0);
    curve.full_f = mean_f_with(keep);

    for (size_t step = 0; step + 1 < order.size(); ++step) {
        size_t victim = order[step];
        keep.erase(std::remove(keep.begin(), keep.end(), victim), keep.end());
        AblationStep entry;
        entry.removed_feature = report.features[victim];
        entry.remaining = keep.size();
        entry.f_measure = mean_f_with(keep);
        curve.steps.push_back(entry);
    }
    return curve;
}

}  // namespace abusedet
