#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>

#include "CLI11.hpp"

#include "abusedet/corpus.hpp"
#include "abusedet/eval.hpp"
#include "abusedet/forest.hpp"
#include "abusedet/pipeline.hpp"
#include "abusedet/reports.hpp"
#include "abusedet/runconfig.hpp"
#include "abusedet/synth.hpp"
#include "abusedet/usermodel.hpp"

using namespace abusedet;

namespace {

struct EnumFlags {
    std::string arm, prep, balance, kinds;
};

void add_common_options(CLI::App* sub, RunConfig& cfg, EnumFlags& flags,
                        std::string& config_path) {
    sub->add_option("--config", config_path, "JSON config file mirroring the run config");
    sub->add_option("--arm", flags.arm, "feature arm")->check(CLI::IsMember({"classic", "full"}));
    sub->add_option("--prep", flags.prep, "preprocessing mode")
        ->check(CLI::IsMember({"basic", "advanced"}));
    sub->add_option("--balance", flags.balance, "dataset balance")
        ->check(CLI::IsMember({"balanced", "unbalanced"}));
    sub->add_option("--kinds", flags.kinds, "message kinds")
        ->check(CLI::IsMember({"iM", "cM", "both"}));
    sub->add_option("--k", cfg.k_folds, "cross-validation folds");
    sub->add_option("--seed", cfg.seed, "run seed");
    sub->add_option("--jobs", cfg.jobs, "parallel jobs");
    sub->add_option("--before", cfg.w_before, "context window before the target");
    sub->add_option("--after", cfg.w_after, "context window after the target");
    sub->add_option("--pne-window", cfg.pne_window, "PNE window length W");
    sub->add_option("--pne-ngram", cfg.pne_ngram, "PNE n-gram order");
    sub->add_option("--pne-min-bigrams", cfg.pne_min_bigrams, "PNE applicability threshold");
    sub->add_option("--pne-alpha", cfg.pne_alpha, "PNE additive smoothing");
    sub->add_option("--svm-c", cfg.svm_c, "SVM cost parameter");
    sub->add_option("--dmax", cfg.fuzzy_dmax, "fuzzy match distance bound");
    sub->add_option("--threshold", cfg.threshold, "decision threshold on the probability");
    sub->add_flag("--nb-hard-label", cfg.nb_hard_label,
                  "use the hard NB decision instead of the posterior");
    sub->add_flag("--sentiment-count-mode", cfg.sentiment_count_mode,
                  "count sentiment words instead of summing weights");
    sub->add_option("--badwords", cfg.badwords_path, "bad-word list file");
    sub->add_option("--sentiment", cfg.sentiment_path, "sentiment lexicon file");
    sub->add_option("--business", cfg.business_path, "business pattern file");
    sub->add_option("--elisions", cfg.elisions_path, "elision table file");
    sub->add_option("--hosts", cfg.hosts_path, "internal host list file");
}

void apply_enum_flags(RunConfig& cfg, const EnumFlags& flags) {
    if (!flags.arm.empty()) cfg.arm = parse_arm(flags.arm);
    if (!flags.prep.empty()) cfg.prep_mode = parse_prep_mode(flags.prep);
    if (!flags.balance.empty()) cfg.balance = parse_balance_mode(flags.balance);
    if (!flags.kinds.empty()) cfg.kinds = parse_kind_filter(flags.kinds);
}

void log_config(const RunConfig& cfg) {
    std::cerr << "config: " << to_json_string(cfg) << '\n';
}

void log_dataset(const LabeledDataset& ds, const RunConfig& cfg) {
    std::cerr << "dataset: " << ds.items.size() << " items, " << ds.count(Label::Abuse)
              << " abuse, " << ds.count(Label::NonAbuse) << " non-abuse ("
              << (cfg.balance == BalanceMode::Balanced ? "balanced" : "unbalanced") << ", kinds "
              << kind_filter_name(cfg.kinds) << ")\n";
}

int cmd_extract(const Corpus& corpus, const RunConfig& cfg, const std::string& out_path) {
    log_config(cfg);
    LabeledDataset ds = make_dataset(corpus, cfg);
    log_dataset(ds, cfg);
    EvalContext ctx = make_eval_context(corpus, ds, cfg);

    TrainTestSplit split = split_train_test(ds, cfg.seed);
    std::set<size_t> train_corpus_idx;
    for (const DatasetItem& item : split.train.items) train_corpus_idx.insert(item.corpus_index);

    std::vector<TokenizedText> train_tokens;
    std::vector<Label> train_labels;
    for (size_t i = 0; i < ds.items.size(); ++i) {
        if (!train_corpus_idx.count(ds.items[i].corpus_index)) continue;
        train_tokens.push_back(ctx.tokens[i]);
        train_labels.push_back(ctx.labels[i]);
    }
    Stage1Models stage1 = train_stage1(train_tokens, train_labels, cfg.nb_hard_label);

    std::vector<FeatureRow> rows;
    rows.reserve(ds.items.size());
    for (size_t i = 0; i < ds.items.size(); ++i) {
        const Message& msg = corpus.messages[ds.items[i].corpus_index];
        FeatureRow row;
        row.id = msg.id;
        row.label = static_cast<int>(ds.items[i].label);
        row.split = train_corpus_idx.count(ds.items[i].corpus_index) ? "train" : "test";
        row.values = ctx.statics[i];
        fill_fold_features(row.values, ctx.tokens[i], stage1, cfg.fuzzy_dmax);
        rows.push_back(std::move(row));
    }
    write_features_csv(out_path, cfg, rows);
    std::cerr << "wrote " << rows.size() << " feature rows to " << out_path << '\n';
    return 0;
}

int cmd_eval(const Corpus& corpus, const RunConfig& cfg, const std::string& out_path) {
    log_config(cfg);
    LabeledDataset ds = make_dataset(corpus, cfg);
    log_dataset(ds, cfg);
    EvalContext ctx = make_eval_context(corpus, ds, cfg);
    CrossValResult cv = cross_validate(ctx, cfg.k_folds, cfg.seed, false);
    write_metrics_csv(out_path, cfg, cv);
    std::cerr << "mean precision " << format_fixed(cv.mean.precision) << ", recall "
              << format_fixed(cv.mean.recall) << ", f_measure " << format_fixed(cv.mean.f_measure)
              << '\n';
    return 0;
}

int cmd_prcurve(const Corpus& corpus, const RunConfig& cfg, const std::string& out_path) {
    log_config(cfg);
    LabeledDataset ds = make_dataset(corpus, cfg);
    log_dataset(ds, cfg);
    EvalContext ctx = make_eval_context(corpus, ds, cfg);
    CrossValResult cv = cross_validate(ctx, cfg.k_folds, cfg.seed, true);
    std::vector<PrCurve> curves;
    curves.reserve(cv.folds.size());
    for (const FoldResult& fr : cv.folds) curves.push_back(pr_curve(fr.probs, fr.truth));
    write_prcurve_csv(out_path, cfg, curves, average_pr_curves(curves));
    return 0;
}

ImportanceReport importance_report(const EvalContext& ctx, const RunConfig& cfg) {
    std::vector<FeatureVector> X = full_feature_matrix(ctx);
    std::vector<std::string> names;
    names.reserve(ctx.active.size());
    for (size_t i : ctx.active) names.push_back(feature_registry()[i]);
    return tree_importance(X, ctx.labels, names, cfg.importance_runs, cfg.seed, cfg.jobs);
}

int cmd_importance(const Corpus& corpus, const RunConfig& cfg, const std::string& out_path) {
    log_config(cfg);
    LabeledDataset ds = make_dataset(corpus, cfg);
    log_dataset(ds, cfg);
    EvalContext ctx = make_eval_context(corpus, ds, cfg);
    write_importance_csv(out_path, cfg, importance_report(ctx, cfg));
    return 0;
}

int cmd_ablate(const Corpus& corpus, const RunConfig& cfg, const std::string& out_path) {
    log_config(cfg);
    LabeledDataset ds = make_dataset(corpus, cfg);
    log_dataset(ds, cfg);
    EvalContext ctx = make_eval_context(corpus, ds, cfg);
    ImportanceReport report = importance_report(ctx, cfg);
    AblationCurve curve = ablation_curve(ctx, cfg.k_folds, cfg.seed, report);
    write_ablation_csv(out_path, cfg, curve, ctx.active.size());
    return 0;
}

int cmd_train(const Corpus& corpus, const RunConfig& cfg, const std::string& out_path) {
    log_config(cfg);
    LabeledDataset ds = make_dataset(corpus, cfg);
    log_dataset(ds, cfg);
    FeatureResources res = make_feature_resources(cfg);
    PipelineModel model = train_pipeline(corpus, ds, cfg, res);
    save_model(model, out_path);
    std::cerr << "wrote model to " << out_path << '\n';
    return 0;
}

int cmd_classify(const std::string& model_path, const std::string& corpus_path,
                 const std::string& text, RunConfig cfg, const std::string& out_path) {
    PipelineModel model = load_model(model_path);
    cfg.prep_mode = model.prep_mode;
    cfg.arm = model.arm;
    cfg.nb_hard_label = model.nb_hard_label;
    cfg.sentiment_count_mode = model.sentiment_count_mode;
    cfg.fuzzy_dmax = model.fuzzy_dmax;
    log_config(cfg);
    FeatureResources res = make_feature_resources(cfg);

    std::ofstream file_out;
    if (!out_path.empty()) {
        file_out.open(out_path, std::ios::binary);
        if (!file_out) throw std::runtime_error("cannot open output file: " + out_path);
    }
    std::ostream& out = out_path.empty() ? std::cout : file_out;
    out << "# " << to_json_string(cfg) << '\n';
    out << "id,score,probability,label\n";

    auto emit = [&](const std::string& id, const Message& msg, const ContextInputs& ctx_in) {
        TokenizedText tokens = res.tokenize(msg.text);
        FeatureVector full = assemble_features(msg, tokens, res, model.stage1, ctx_in.respondents,
                                               ctx_in.pne);
        Prediction pred = predict_features(model, full, cfg.threshold);
        out << csv_escape(id) << ',' << format_fixed(pred.score) << ','
            << format_fixed(pred.probability) << ',' << static_cast<int>(pred.label) << '\n';
    };

    if (!corpus_path.empty()) {
        Corpus corpus = load_corpus(corpus_path);
        UserHistories histories = build_user_histories(corpus);
        std::vector<TokenizedText> basic_tokens = basic_token_cache(corpus);
        PneConfig pne_cfg = cfg.pne_config();
        for (const Message& msg : corpus.messages) {
            ContextInputs ctx_in = context_inputs(corpus, histories, basic_tokens, msg.id,
                                                  cfg.w_before, pne_cfg);
            emit(msg.id, msg, ctx_in);
        }
    } else {
        std::cerr << "warning: no corpus supplied; context features use degenerate defaults\n";
        Message msg;
        msg.id = "text";
        msg.kind = MessageKind::Chat;
        msg.author = "";
        msg.channel = "";
        msg.ts = 0;
        msg.text = text;
        ContextInputs ctx_in;  // respondents 0, PNE not applicable
        emit(msg.id, msg, ctx_in);
    }
    if (!out_path.empty() && !file_out)
        throw std::runtime_error("failed writing output file: " + out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-stage abusive message detector"};
    app.require_subcommand(1);

    RunConfig cfg;
    // The config file forms the baseline; explicit flags override it.
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::strcmp(argv[i], "--config") == 0) {
            try {
                cfg = load_run_config(argv[i + 1]);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << '\n';
                return 1;
            }
        }
    }
    EnumFlags flags;
    std::string config_path;

    SynthConfig synth;
    std::string out_path;
    std::string corpus_path;
    std::string model_path;
    std::string single_text;

    CLI::App* gen = app.add_subcommand("gen", "generate a synthetic labeled corpus");
    gen->add_option("--abuse", synth.n_abuse, "abusive message count")
        ->check(CLI::PositiveNumber);
    gen->add_option("--nonabuse", synth.n_nonabuse, "non-abusive labeled message count")
        ->check(CLI::PositiveNumber);
    gen->add_option("--users", synth.n_users, "user count")->check(CLI::PositiveNumber);
    gen->add_option("--channels", synth.n_channels, "channel count")->check(CLI::PositiveNumber);
    gen->add_option("--obfuscation-rate", synth.obfuscation_rate, "fraction of obfuscated abuse")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--rich-fraction", synth.rich_history_fraction,
                    "fraction of clean users with deep history")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", synth.seed, "generator seed");
    gen->add_option("-o,--output", out_path, "output JSONL file")->required();

    CLI::App* extract = app.add_subcommand("extract", "emit the feature matrix as CSV");
    CLI::App* eval_cmd = app.add_subcommand("eval", "cross-validated metrics report");
    CLI::App* prcurve = app.add_subcommand("prcurve", "precision-recall curves");
    CLI::App* importance = app.add_subcommand("importance", "tree-ensemble feature importance");
    CLI::App* ablate = app.add_subcommand("ablate", "sequential feature ablation");
    CLI::App* train = app.add_subcommand("train", "train and save a pipeline model");
    for (CLI::App* sub : {extract, eval_cmd, prcurve, importance, ablate, train}) {
        sub->add_option("--corpus", corpus_path, "labeled corpus JSONL")->required();
        sub->add_option("-o,--output", out_path, "output file")->required();
        add_common_options(sub, cfg, flags, config_path);
    }
    importance->add_option("--runs", cfg.importance_runs, "estimator repetitions");
    ablate->add_option("--runs", cfg.importance_runs, "estimator repetitions for the ordering");

    CLI::App* classify = app.add_subcommand("classify", "score messages with a saved model");
    classify->add_option("--model", model_path, "model file")->required();
    classify->add_option("--corpus", corpus_path, "corpus JSONL to score with context");
    classify->add_option("--text", single_text, "single raw message text");
    classify->add_option("-o,--output", out_path, "output CSV (default stdout)");
    add_common_options(classify, cfg, flags, config_path);

    CLI11_PARSE(app, argc, argv);

    try {
        apply_enum_flags(cfg, flags);
        if (gen->parsed()) {
            Corpus corpus = generate_synthetic(synth);
            save_corpus(corpus, out_path);
            size_t labeled = 0;
            for (const Message& m : corpus.messages)
                if (m.label) ++labeled;
            std::cerr << "wrote " << corpus.messages.size() << " messages (" << labeled
                      << " labeled) to " << out_path << '\n';
            return 0;
        }
        if (classify->parsed()) {
            if (corpus_path.empty() == single_text.empty())
                throw std::runtime_error("classify needs exactly one of --corpus or --text");
            return cmd_classify(model_path, corpus_path, single_text, cfg, out_path);
        }
        Corpus corpus = load_corpus(corpus_path);
        if (extract->parsed()) return cmd_extract(corpus, cfg, out_path);
        if (eval_cmd->parsed()) return cmd_eval(corpus, cfg, out_path);
        if (prcurve->parsed()) return cmd_prcurve(corpus, cfg, out_path);
        if (importance->parsed()) return cmd_importance(corpus, cfg, out_path);
        if (ablate->parsed()) return cmd_ablate(corpus, cfg, out_path);
        if (train->parsed()) return cmd_train(corpus, cfg, out_path);
        throw std::runtime_error("no subcommand selected");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
