#pragma once

#include <chrono>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "pacc/adam.hpp"
#include "pacc/checkpoint.hpp"
#include "pacc/errors.hpp"
#include "pacc/metrics.hpp"
#include "pacc/model.hpp"
#include "pacc/util.hpp"
#include "pacc/views.hpp"

namespace pacc::train {

struct TrainConfig {
    std::uint64_t seed = 0;
    std::size_t batch_size = 64;
    double lr = 1e-3;
    int epochs = 100;
    int patience = 10;
    double beta_cb = 0.99;
    std::string split_mode = "8:1:1"; // or "9:1"

    std::size_t latent_dim = 128;
    std::vector<std::size_t> encoder_hidden = {512, 256};
    std::vector<std::size_t> decoder_hidden = {256};
    std::size_t scorer_dim = 64;
    std::size_t gate_dim = 32;
    double dropout = 0.5;
    double tau_nce = 0.1;
    double tau_fuse = 1.0;
    double lambda_proj = 1.0;
    double lambda_unc = 1.0;
    bool use_rec = true;
    bool use_con = true;
    bool use_task = true;
    double w_rec = 1.0, w_con = 1.0, w_ce = 1.0, w_gce = 1.0;

    model::ModelConfig model_config(const std::vector<std::size_t>& view_dims,
                                    int class_count) const {
        model::ModelConfig m;
        m.view_dims = view_dims;
        m.class_count = class_count;
        m.latent_dim = latent_dim;
        m.encoder_hidden = encoder_hidden;
        m.decoder_hidden = decoder_hidden;
        m.scorer_dim = scorer_dim;
        m.gate_dim = gate_dim;
        m.dropout = dropout;
        m.tau_nce = tau_nce;
        m.tau_fuse = tau_fuse;
        m.lambda_proj = lambda_proj;
        m.lambda_unc = lambda_unc;
        m.use_rec = use_rec;
        m.use_con = use_con;
        m.use_task = use_task;
        m.w_rec = w_rec;
        m.w_con = w_con;
        m.w_ce = w_ce;
        m.w_gce = w_gce;
        return m;
    }

    nlohmann::json to_json() const {
        return {{"seed", seed},
                {"batch_size", batch_size},
                {"lr", lr},
                {"epochs", epochs},
                {"patience", patience},
                {"beta_cb", beta_cb},
                {"split_mode", split_mode},
                {"latent_dim", latent_dim},
                {"encoder_hidden", encoder_hidden},
                {"decoder_hidden", decoder_hidden},
                {"scorer_dim", scorer_dim},
                {"gate_dim", gate_dim},
                {"dropout", dropout},
                {"tau_nce", tau_nce},
                {"tau_fuse", tau_fuse},
                {"lambda_proj", lambda_proj},
                {"lambda_unc", lambda_unc},
                {"use_rec", use_rec},
                {"use_con", use_con},
                {"use_task", use_task},
                {"w_rec", w_rec},
                {"w_con", w_con},
                {"w_ce", w_ce},
                {"w_gce", w_gce}};
    }

    static TrainConfig from_json(const nlohmann::json& j) {
        TrainConfig c;
        auto get = [&](const char* key, auto& target) {
            if (j.contains(key)) target = j.at(key).get<std::decay_t<decltype(target)>>();
        };
        get("seed", c.seed);
        get("batch_size", c.batch_size);
        get("lr", c.lr);
        get("epochs", c.epochs);
        get("patience", c.patience);
        get("beta_cb", c.beta_cb);
        get("split_mode", c.split_mode);
        get("latent_dim", c.latent_dim);
        get("encoder_hidden", c.encoder_hidden);
        get("decoder_hidden", c.decoder_hidden);
        get("scorer_dim", c.scorer_dim);
        get("gate_dim", c.gate_dim);
        get("dropout", c.dropout);
        get("tau_nce", c.tau_nce);
        get("tau_fuse", c.tau_fuse);
        get("lambda_proj", c.lambda_proj);
        get("lambda_unc", c.lambda_unc);
        get("use_rec", c.use_rec);
        get("use_con", c.use_con);
        get("use_task", c.use_task);
        get("w_rec", c.w_rec);
        get("w_con", c.w_con);
        get("w_ce", c.w_ce);
        get("w_gce", c.w_gce);
        return c;
    }
};

struct Split {
    std::vector<std::size_t> train, val, test;
};

/// Stratified, deterministic split. "8:1:1" carves test and validation out
/// of every class; "9:1" carves test only and then holds out the last tenth
/// of the training rows for early stopping.
inline Split split(const std::vector<int>& labels, const std::string& mode, std::uint64_t seed) {
    require(mode == "8:1:1" || mode == "9:1", Errc::invalid_argument,
            "split mode must be 8:1:1 or 9:1");
    require(!labels.empty(), Errc::empty_dataset, "cannot split an empty dataset");
    int class_count = 0;
    for (int l : labels) class_count = std::max(class_count, l + 1);
    std::vector<std::vector<std::size_t>> per_class(static_cast<std::size_t>(class_count));
    for (std::size_t i = 0; i < labels.size(); ++i)
        per_class[static_cast<std::size_t>(labels[i])].push_back(i);

    Rng rng(derive_seed(seed, 0x5b717));
    Split out;
    for (std::size_t c = 0; c < per_class.size(); ++c) {
        auto& idx = per_class[c];
        if (idx.empty()) continue;
        shuffle(idx, rng);
        const std::size_t m = idx.size();
        if (mode == "8:1:1") {
            require(m >= 3, Errc::class_too_small,
                    "class " + std::to_string(c) + " has fewer than 3 samples");
            const std::size_t n_test = std::max<std::size_t>(1, m / 10);
            const std::size_t n_val = std::max<std::size_t>(1, m / 10);
            for (std::size_t i = 0; i < n_test; ++i) out.test.push_back(idx[i]);
            for (std::size_t i = n_test; i < n_test + n_val; ++i) out.val.push_back(idx[i]);
            for (std::size_t i = n_test + n_val; i < m; ++i) out.train.push_back(idx[i]);
        } else {
            require(m >= 2, Errc::class_too_small,
                    "class " + std::to_string(c) + " has fewer than 2 samples");
            const std::size_t n_test = std::max<std::size_t>(1, m / 10);
            for (std::size_t i = 0; i < n_test; ++i) out.test.push_back(idx[i]);
            for (std::size_t i = n_test; i < m; ++i) out.train.push_back(idx[i]);
        }
    }
    if (mode == "9:1") {
        const std::size_t n_val = std::max<std::size_t>(1, out.train.size() / 10);
        out.val.assign(out.train.end() - static_cast<long>(n_val), out.train.end());
        out.train.resize(out.train.size() - n_val);
    }
    return out;
}

struct EpochStats {
    model::LossBreakdown losses;
    double val_accuracy = 0.0;
    double val_macro_f1 = 0.0;
    double seconds = 0.0;
};

struct TrainHistory {
    std::vector<EpochStats> epochs;
    std::size_t best_epoch = 0;
    double best_val_accuracy = 0.0;

    std::string to_csv() const {
        std::string out = "epoch,rec,consensus,layer_ce,global_ce,total,val_accuracy,"
                          "val_macro_f1,seconds\n";
        char buf[256];
        for (std::size_t e = 0; e < epochs.size(); ++e) {
            const auto& s = epochs[e];
            std::snprintf(buf, sizeof(buf), "%zu,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.3f\n", e,
                          s.losses.rec_mean, s.losses.consensus, s.losses.layer_ce,
                          s.losses.global_ce, s.losses.total, s.val_accuracy, s.val_macro_f1,
                          s.seconds);
            out += buf;
        }
        return out;
    }
};

struct TrainResult {
    model::Checkpoint checkpoint;
    TrainHistory history;
    Split data_split;
    std::vector<double> class_weights;
};

namespace detail {

inline std::vector<model::Var> batch_views(const MultiviewDataset& ds,
                                           const std::vector<std::size_t>& rows) {
    std::vector<model::Var> out;
    out.reserve(ds.views.size());
    for (const auto& v : ds.views) {
        Tensor t = Tensor::matrix(rows.size(), v.d_f);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < v.d_f; ++c) t.at(r, c) = v.data.at(rows[r], c);
        out.push_back(autograd::make_const(std::move(t)));
    }
    return out;
}

inline std::vector<int> batch_labels(const MultiviewDataset& ds,
                                     const std::vector<std::size_t>& rows) {
    std::vector<int> y(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) y[r] = ds.labels[rows[r]];
    return y;
}

inline std::vector<int> predict_labels(const model::PaccModel& m, const MultiviewDataset& ds,
                                       const std::vector<std::size_t>& rows,
                                       std::size_t chunk = 256) {
    std::vector<int> out;
    out.reserve(rows.size());
    for (std::size_t start = 0; start < rows.size(); start += chunk) {
        std::vector<std::size_t> part(rows.begin() + static_cast<long>(start),
                                      rows.begin() +
                                          static_cast<long>(std::min(start + chunk, rows.size())));
        auto preds = m.predict(batch_views(ds, part));
        for (const auto& p : preds) out.push_back(p.label);
    }
    return out;
}

} // namespace detail

/// Deterministic minibatch loop: seeded shuffles, Adam, class weights frozen
/// from the training split, early stopping on validation accuracy with the
/// best epoch's parameters returned.
inline TrainResult train_with_split(const MultiviewDataset& ds, const TrainConfig& cfg,
                                    const Split& sp) {
    require(cfg.batch_size >= 2, Errc::batch_too_small, "batch size must be >= 2");
    require(!sp.train.empty(), Errc::empty_split, "empty training split");

    std::vector<std::size_t> view_dims;
    for (const auto& v : ds.views) view_dims.push_back(v.d_f);
    model::PaccModel net(cfg.model_config(view_dims, ds.class_count), cfg.seed);

    std::vector<std::size_t> class_counts(static_cast<std::size_t>(ds.class_count), 0);
    for (auto i : sp.train) ++class_counts[static_cast<std::size_t>(ds.labels[i])];
    const std::vector<double> class_weights = model::class_balance_weights(class_counts, cfg.beta_cb);

    auto params = net.parameters();
    autograd::Adam opt(params, cfg.lr);

    TrainResult result;
    result.data_split = sp;
    result.class_weights = class_weights;

    // parameter snapshot of the best validation epoch (start = initial state)
    auto snapshot = [&]() {
        std::vector<Tensor> copy;
        for (const auto& p : params) copy.push_back(p->value);
        return copy;
    };
    auto restore = [&](const std::vector<Tensor>& copy) {
        for (std::size_t i = 0; i < params.size(); ++i) params[i]->value = copy[i];
    };
    std::vector<Tensor> best_params = snapshot();
    double best_acc = -1.0;
    int since_best = 0;
    long global_step = 0;

    std::vector<std::size_t> order = sp.train;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        const auto tic = std::chrono::steady_clock::now();
        Rng erng(derive_seed(cfg.seed, 0xe90c4, static_cast<std::uint64_t>(epoch)));
        shuffle(order, erng);

        model::LossBreakdown sums;
        sums.rec_per_layer.assign(ds.views.size(), 0.0);
        std::size_t batches = 0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t stop = std::min(start + cfg.batch_size, order.size());
            if (stop - start < 2) break; // drop degenerate trailing batch
            std::vector<std::size_t> rows(order.begin() + static_cast<long>(start),
                                          order.begin() + static_cast<long>(stop));
            auto views = detail::batch_views(ds, rows);
            auto labels = detail::batch_labels(ds, rows);
            auto [objective, bd] =
                net.total_loss(views, labels, class_weights, /*train=*/true, global_step);
            require(std::isfinite(bd.total), Errc::non_finite_loss,
                    "non-finite loss at epoch " + std::to_string(epoch) + " batch " +
                        std::to_string(batches));
            autograd::zero_grad(params);
            autograd::backward(objective);
            opt.step();
            ++global_step;
            ++batches;
            sums.rec_mean += bd.rec_mean;
            sums.consensus += bd.consensus;
            sums.layer_ce += bd.layer_ce;
            sums.global_ce += bd.global_ce;
            sums.total += bd.total;
            for (std::size_t i = 0; i < bd.rec_per_layer.size(); ++i)
                sums.rec_per_layer[i] += bd.rec_per_layer[i];
        }
        if (batches > 0) {
            const double inv = 1.0 / static_cast<double>(batches);
            sums.rec_mean *= inv;
            sums.consensus *= inv;
            sums.layer_ce *= inv;
            sums.global_ce *= inv;
            sums.total *= inv;
            for (auto& r : sums.rec_per_layer) r *= inv;
        }

        EpochStats stats;
        stats.losses = sums;
        if (!sp.val.empty()) {
            auto pred = detail::predict_labels(net, ds, sp.val);
            auto truth = detail::batch_labels(ds, sp.val);
            std::vector<int> truth_int(truth.begin(), truth.end());
            auto rep = eval::metrics(truth_int, pred, ds.class_count);
            stats.val_accuracy = rep.accuracy;
            stats.val_macro_f1 = rep.macro_f1;
        }
        stats.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count();
        result.history.epochs.push_back(stats);

        if (stats.val_accuracy > best_acc) {
            best_acc = stats.val_accuracy;
            best_params = snapshot();
            result.history.best_epoch = static_cast<std::size_t>(epoch);
            since_best = 0;
        } else {
            ++since_best;
            if (since_best >= cfg.patience) break;
        }
    }
    result.history.best_val_accuracy = std::max(best_acc, 0.0);

    restore(best_params);
    nlohmann::json snapshot_cfg = cfg.to_json();
    snapshot_cfg["class_count"] = ds.class_count;
    snapshot_cfg["class_weights"] = class_weights;
    result.checkpoint = model::Checkpoint::from_model(net, snapshot_cfg);
    return result;
}

inline TrainResult train(const MultiviewDataset& ds, const TrainConfig& cfg) {
    require(!ds.labels.empty(), Errc::empty_dataset, "dataset has no rows");
    return train_with_split(ds, cfg, split(ds.labels, cfg.split_mode, cfg.seed));
}

// ---------------------------------------------------------------------------
// Ablations (paper-style variants under identical seeds and splits)
// ---------------------------------------------------------------------------

struct AblationResult {
    std::string variant;
    double test_accuracy = 0.0;
    double test_macro_f1 = 0.0;
    TrainResult run;
};

inline std::vector<std::pair<std::string, TrainConfig>> ablation_variants(const TrainConfig& base) {
    auto wo_rec = base;
    wo_rec.use_rec = false;
    auto wo_con = base;
    wo_con.use_con = false;
    auto wo_task = base;
    wo_task.use_task = false;
    auto classifier_only = base;
    classifier_only.use_rec = classifier_only.use_con = classifier_only.use_task = false;
    return {{"full", base},
            {"wo_reconstruction", wo_rec},
            {"wo_consensus", wo_con},
            {"wo_task_info", wo_task},
            {"classifier_only", classifier_only}};
}

/// Train every variant on the same split and score the shared test set.
inline std::vector<AblationResult> run_ablations(const MultiviewDataset& ds,
                                                 const TrainConfig& base) {
    const Split sp = split(ds.labels, base.split_mode, base.seed);
    auto variants = ablation_variants(base);
    std::vector<AblationResult> results(variants.size());
    parallel_for(variants.size(), [&](std::size_t i) {
        AblationResult r;
        r.variant = variants[i].first;
        r.run = train_with_split(ds, variants[i].second, sp);
        auto net = r.run.checkpoint.to_model();
        auto pred = detail::predict_labels(net, ds, sp.test);
        auto truth = detail::batch_labels(ds, sp.test);
        auto rep = eval::metrics(truth, pred, ds.class_count);
        r.test_accuracy = rep.accuracy;
        r.test_macro_f1 = rep.macro_f1;
        results[i] = std::move(r);
    });
    return results;
}

inline std::string ablation_table_csv(const std::vector<AblationResult>& rows) {
    std::string out = "variant,test_accuracy,test_macro_f1\n";
    char buf[128];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f\n", r.variant.c_str(), r.test_accuracy,
                      r.test_macro_f1);
        out += buf;
    }
    return out;
}

} // namespace pacc::train
