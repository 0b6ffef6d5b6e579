#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pacc/checkpoint.hpp"
#include "pacc/errors.hpp"
#include "pacc/metrics.hpp"
#include "pacc/model.hpp"
#include "pacc/trainer.hpp"
#include "pacc/view_io.hpp"
#include "pacc/views.hpp"

namespace pacc::eval {

struct EvalResult {
    MetricsReport report;
    ConfusionMatrix matrix;
};

/// Deterministic eval-mode scoring of a row subset.
inline EvalResult evaluate(const model::PaccModel& net, const MultiviewDataset& ds,
                           const std::vector<std::size_t>& rows) {
    require(!rows.empty(), Errc::empty_split, "empty evaluation split");
    std::vector<std::size_t> dims;
    for (const auto& v : ds.views) dims.push_back(v.d_f);
    require(dims == net.config().view_dims && ds.class_count == net.config().class_count,
            Errc::dim_mismatch, "checkpoint dimensions do not match the dataset");
    auto pred = train::detail::predict_labels(net, ds, rows);
    auto truth = train::detail::batch_labels(ds, rows);
    EvalResult out;
    out.report = metrics(truth, pred, ds.class_count);
    out.matrix = confusion(truth, pred, ds.class_count);
    return out;
}

inline EvalResult evaluate(const model::Checkpoint& ck, const MultiviewDataset& ds,
                           const std::vector<std::size_t>& rows) {
    auto net = ck.to_model();
    return evaluate(net, ds, rows);
}

struct EmbeddingExport {
    std::vector<Tensor> per_layer; // Z_i, each N x D
    Tensor fusion_weights;         // N x M
    Tensor fused;                  // N x (M*D)
};

/// Run the encoder over the whole dataset (eval mode) and collect latents,
/// fusion weights and the fused embedding.
inline EmbeddingExport compute_embeddings(const model::PaccModel& net, const MultiviewDataset& ds,
                                          std::size_t chunk = 256) {
    const std::size_t n = ds.flow_count();
    const std::size_t m = ds.views.size();
    const std::size_t d = net.config().latent_dim;
    EmbeddingExport out;
    out.per_layer.assign(m, Tensor::matrix(n, d));
    out.fusion_weights = Tensor::matrix(n, m);
    out.fused = Tensor::matrix(n, m * d);
    std::vector<std::size_t> rows;
    for (std::size_t start = 0; start < n; start += chunk) {
        rows.clear();
        for (std::size_t r = start; r < std::min(start + chunk, n); ++r) rows.push_back(r);
        auto views = train::detail::batch_views(ds, rows);
        auto fr = net.forward(views, /*train=*/false, 0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t r = 0; r < rows.size(); ++r)
                for (std::size_t c = 0; c < d; ++c)
                    out.per_layer[i].at(rows[r], c) = fr.latents[i]->value.at(r, c);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (std::size_t i = 0; i < m; ++i)
                out.fusion_weights.at(rows[r], i) = fr.fusion_weights->value.at(r, i);
            for (std::size_t c = 0; c < m * d; ++c)
                out.fused.at(rows[r], c) = fr.fused->value.at(r, c);
        }
    }
    return out;
}

/// Write per-layer latents, fusion weights and the fused matrix in PACCVIEW
/// format next to the labels, so the redundancy tooling can score them.
inline void export_embeddings(const model::PaccModel& net, const MultiviewDataset& ds,
                              const std::filesystem::path& dir) {
    EmbeddingExport emb = compute_embeddings(net, ds);
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < emb.per_layer.size(); ++i) {
        const LayerId layer = ds.views[i].layer;
        viewio::write_matrix(dir / ("emb_" + std::string(layer_name(layer)) + ".pvw"),
                             static_cast<std::uint32_t>(layer), emb.per_layer[i]);
    }
    viewio::write_matrix(dir / "fused.pvw", viewio::kFusedId, emb.fused);
    viewio::write_matrix(dir / "fusion_weights.pvw", viewio::kWeightsId, emb.fusion_weights);
    viewio::write_labels_csv(dir / "labels.csv", ds.labels);
    nlohmann::json meta;
    meta["kind"] = "embeddings";
    meta["latent_dim"] = net.config().latent_dim;
    meta["view_count"] = emb.per_layer.size();
    std::ofstream mj(dir / "meta.json");
    require(mj.good(), Errc::io_error, "cannot write meta.json");
    mj << meta.dump(2) << '\n';
}

} // namespace pacc::eval
