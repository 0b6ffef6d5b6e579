#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "pacc/adam.hpp"
#include "pacc/autograd.hpp"
#include "pacc/errors.hpp"
#include "pacc/tensor.hpp"
#include "pacc/util.hpp"

namespace pacc::model {

using autograd::Var;

struct ModelConfig {
    std::vector<std::size_t> view_dims; // d_f per view, length M
    int class_count = 2;
    std::size_t latent_dim = 128; // D, shared across layers
    std::vector<std::size_t> encoder_hidden = {512, 256};
    std::vector<std::size_t> decoder_hidden = {256};
    std::size_t scorer_dim = 64; // D_s
    std::size_t gate_dim = 32;   // D_g
    double dropout = 0.5;
    double tau_nce = 0.1;
    double tau_fuse = 1.0;
    double lambda_proj = 1.0; // weight of the projection score
    double lambda_unc = 1.0;  // weight of the negative-entropy score
    // term switches (ablations) and multipliers
    bool use_rec = true;
    bool use_con = true;
    bool use_task = true;
    double w_rec = 1.0, w_con = 1.0, w_ce = 1.0, w_gce = 1.0;

    std::size_t view_count() const { return view_dims.size(); }

    nlohmann::json to_json() const {
        return {{"view_dims", view_dims},
                {"class_count", class_count},
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

    static ModelConfig from_json(const nlohmann::json& j) {
        ModelConfig c;
        c.view_dims = j.at("view_dims").get<std::vector<std::size_t>>();
        c.class_count = j.at("class_count").get<int>();
        c.latent_dim = j.at("latent_dim").get<std::size_t>();
        c.encoder_hidden = j.at("encoder_hidden").get<std::vector<std::size_t>>();
        c.decoder_hidden = j.at("decoder_hidden").get<std::vector<std::size_t>>();
        c.scorer_dim = j.at("scorer_dim").get<std::size_t>();
        c.gate_dim = j.at("gate_dim").get<std::size_t>();
        c.dropout = j.at("dropout").get<double>();
        c.tau_nce = j.at("tau_nce").get<double>();
        c.tau_fuse = j.at("tau_fuse").get<double>();
        c.lambda_proj = j.at("lambda_proj").get<double>();
        c.lambda_unc = j.at("lambda_unc").get<double>();
        c.use_rec = j.at("use_rec").get<bool>();
        c.use_con = j.at("use_con").get<bool>();
        c.use_task = j.at("use_task").get<bool>();
        c.w_rec = j.at("w_rec").get<double>();
        c.w_con = j.at("w_con").get<double>();
        c.w_ce = j.at("w_ce").get<double>();
        c.w_gce = j.at("w_gce").get<double>();
        return c;
    }
};

struct LossBreakdown {
    std::vector<double> rec_per_layer;
    double rec_mean = 0.0;
    double consensus = 0.0;
    double layer_ce = 0.0;
    double global_ce = 0.0;
    double total = 0.0;
};

// ---------------------------------------------------------------------------
// Standalone loss pieces
// ---------------------------------------------------------------------------

/// Expected cosine distance (1/N) sum(1 - cos(x, xhat)) over rows where both
/// norms are nonzero; degenerate rows are excluded from the mean and counted.
inline Var rec_loss(const Var& x, const Var& xhat, int* degenerate_rows = nullptr) {
    using namespace autograd;
    require(x->value.same_shape(xhat->value), Errc::shape_mismatch, "rec_loss shapes");
    const std::size_t rows = x->value.rows(), cols = x->value.cols();
    Tensor mask = Tensor::matrix(rows, 1);
    std::size_t valid = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        double nx = 0.0, nh = 0.0;
        for (std::size_t c = 0; c < cols; ++c) {
            nx += x->value.at(r, c) * x->value.at(r, c);
            nh += xhat->value.at(r, c) * xhat->value.at(r, c);
        }
        const bool ok = nx > 0.0 && nh > 0.0;
        mask[r] = ok ? 1.0 : 0.0;
        if (ok) ++valid;
    }
    if (degenerate_rows) *degenerate_rows = static_cast<int>(rows - valid);
    require(valid > 0, Errc::all_rows_degenerate, "every row has zero norm");
    auto cs = cosine_similarity_rows(x, xhat);
    auto ones = make_const(Tensor::matrix(rows, 1, 1.0));
    auto dist = mul(sub(ones, cs), make_const(mask));
    return scale(sum(dist), 1.0 / static_cast<double>(valid));
}

/// Class-balance weights (1 - beta) / (1 - beta^n_c), before renormalization.
inline std::vector<double> class_balance_weights_raw(const std::vector<std::size_t>& counts,
                                                     double beta) {
    require(beta >= 0.0 && beta < 1.0, Errc::invalid_argument, "beta must be in [0,1)");
    std::vector<double> w;
    w.reserve(counts.size());
    for (std::size_t c = 0; c < counts.size(); ++c) {
        require(counts[c] >= 1, Errc::empty_class,
                "class " + std::to_string(c) + " has no samples");
        w.push_back((1.0 - beta) / (1.0 - std::pow(beta, static_cast<double>(counts[c]))));
    }
    return w;
}

/// Raw weights renormalized to mean 1 so the global CE magnitude stays
/// comparable across beta values.
inline std::vector<double> class_balance_weights(const std::vector<std::size_t>& counts,
                                                 double beta) {
    auto w = class_balance_weights_raw(counts, beta);
    double mean = 0.0;
    for (double v : w) mean += v;
    mean /= static_cast<double>(w.size());
    for (double& v : w) v /= mean;
    return w;
}

// ---------------------------------------------------------------------------
// The model
// ---------------------------------------------------------------------------

struct ForwardResult {
    std::vector<Var> latents;      // Z_i, each B x D
    std::vector<Var> layer_logits; // B x C per layer
    std::vector<Var> layer_probs;  // softmax of the above
    Var scores;                    // B x M attention scores S
    Var fusion_weights;            // B x M rows on the simplex
    Var fused;                     // B x (M*D)
    Var global_logits;             // B x C
};

struct Prediction {
    int label = 0;
    std::vector<double> global_probs;
    std::vector<std::vector<double>> layer_probs; // M x C
    std::vector<double> fusion_weights;           // M
    std::vector<double> fused;                    // M*D
};

class PaccModel {
public:
    PaccModel(ModelConfig config, std::uint64_t seed, bool zero_init = false)
        : cfg_(std::move(config)), seed_(seed) {
        require(cfg_.view_count() >= 1, Errc::empty_dataset, "model needs at least one view");
        require(cfg_.class_count >= 2, Errc::invalid_argument, "need at least two classes");
        Rng rng(derive_seed(seed, 0xae5));
        const std::size_t m = cfg_.view_count();
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<Linear> stack;
            std::size_t in = cfg_.view_dims[i];
            for (std::size_t h : cfg_.encoder_hidden) {
                stack.push_back(make_linear(in, h, rng, zero_init));
                in = h;
            }
            stack.push_back(make_linear(in, cfg_.latent_dim, rng, zero_init));
            encoders_.push_back(std::move(stack));

            std::vector<Linear> dec;
            in = cfg_.latent_dim;
            for (std::size_t h : cfg_.decoder_hidden) {
                dec.push_back(make_linear(in, h, rng, zero_init));
                in = h;
            }
            dec.push_back(make_linear(in, cfg_.view_dims[i], rng, zero_init));
            decoders_.push_back(std::move(dec));

            heads_.push_back(make_linear(cfg_.latent_dim, cfg_.class_count, rng, zero_init));
        }
        scorer_ = make_linear(cfg_.latent_dim, cfg_.scorer_dim, rng, zero_init);
        gate_proj_ = make_linear(cfg_.latent_dim, cfg_.gate_dim, rng, zero_init);
        gate_out_ = make_linear(cfg_.gate_dim, 1, rng, zero_init);
        global_head_ = make_linear(m * cfg_.latent_dim, cfg_.class_count, rng, zero_init);
    }

    const ModelConfig& config() const { return cfg_; }

    std::vector<Var> parameters() const {
        std::vector<Var> out;
        for (const auto& [name, v] : named_parameters()) out.push_back(v);
        return out;
    }

    std::vector<std::pair<std::string, Var>> named_parameters() const {
        std::vector<std::pair<std::string, Var>> out;
        auto emit = [&out](const std::string& prefix, const Linear& l) {
            out.emplace_back(prefix + ".w", l.w);
            out.emplace_back(prefix + ".b", l.b);
        };
        for (std::size_t i = 0; i < encoders_.size(); ++i)
            for (std::size_t s = 0; s < encoders_[i].size(); ++s)
                emit("encoder" + std::to_string(i) + "." + std::to_string(s), encoders_[i][s]);
        for (std::size_t i = 0; i < decoders_.size(); ++i)
            for (std::size_t s = 0; s < decoders_[i].size(); ++s)
                emit("decoder" + std::to_string(i) + "." + std::to_string(s), decoders_[i][s]);
        for (std::size_t i = 0; i < heads_.size(); ++i) emit("head" + std::to_string(i), heads_[i]);
        emit("scorer", scorer_);
        emit("gate_proj", gate_proj_);
        emit("gate_out", gate_out_);
        emit("global", global_head_);
        return out;
    }

    /// Per-layer latents. Dropout fires only in training mode, with masks
    /// derived from (model seed, step, layer, stage).
    std::vector<Var> encode_all(const std::vector<Var>& views, bool train, long step) const {
        using namespace autograd;
        require(views.size() == cfg_.view_count(), Errc::shape_mismatch, "view count mismatch");
        std::vector<Var> latents;
        latents.reserve(views.size());
        for (std::size_t i = 0; i < views.size(); ++i) {
            require(views[i]->value.cols() == cfg_.view_dims[i], Errc::shape_mismatch,
                    "view " + std::to_string(i) + " width mismatch");
            Var h = views[i];
            const auto& stack = encoders_[i];
            for (std::size_t s = 0; s + 1 < stack.size(); ++s) {
                h = tanh_(add_bias(matmul(h, stack[s].w), stack[s].b));
                h = dropout(h, cfg_.dropout, train,
                            derive_seed(seed_, 0xd0 + i * 16 + s, static_cast<std::uint64_t>(step)));
            }
            latents.push_back(add_bias(matmul(h, stack.back().w), stack.back().b));
        }
        return latents;
    }

    Var decode(std::size_t view, const Var& z) const {
        using namespace autograd;
        Var h = z;
        const auto& stack = decoders_[view];
        for (std::size_t s = 0; s + 1 < stack.size(); ++s)
            h = tanh_(add_bias(matmul(h, stack[s].w), stack[s].b));
        return add_bias(matmul(h, stack.back().w), stack.back().b);
    }

    Var layer_logits(std::size_t view, const Var& z) const {
        using namespace autograd;
        return add_bias(matmul(z, heads_[view].w), heads_[view].b);
    }

    /// InfoNCE lower bound between two latent batches; positives are
    /// row-aligned, negatives the remaining rows ofz_j. Always <= 0.
    Var info_nce(const Var& zi, const Var& zj) const {
        using namespace autograd;
        require(zi->value.rows() == zj->value.rows(), Errc::shape_mismatch, "batch mismatch");
        require(zi->value.rows() >= 2, Errc::batch_too_small, "InfoNCE needs B >= 2");
        auto pi = row_l2_normalize(project(zi));
        auto pj = row_l2_normalize(project(zj));
        auto scoresx = scale(matmul_nt(pi, pj), 1.0 / cfg_.tau_nce);
        return mean(diag(log_softmax_rows(scoresx, 1.0)));
    }

    /// -(2 / (M (M-1))) * sum over pairs of the InfoNCE bound. Zero when M=1.
    Var consensus_loss(const std::vector<Var>& latents) const {
        using namespace autograd;
        const std::size_t m = latents.size();
        if (m < 2) return make_const(Tensor::scalar(0.0));
        Var acc;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                auto bound = info_nce(latents[i], latents[j]);
                acc = acc ? add(acc, bound) : bound;
            }
        return scale(acc, -2.0 / (static_cast<double>(m) * static_cast<double>(m - 1)));
    }

    /// (1/M) sum of per-layer mean cross-entropies.
    Var layer_ce(const std::vector<Var>& logits, const std::vector<int>& labels) const {
        using namespace autograd;
        check_labels(labels);
        Var acc;
        for (const auto& lg : logits) {
            auto ce = scale(mean(pick_per_row(log_softmax_rows(lg, 1.0), labels)), -1.0);
            acc = acc ? add(acc, ce) : ce;
        }
        return scale(acc, 1.0 / static_cast<double>(logits.size()));
    }

    /// Attention scores S = lambda1 * s_proj + lambda2 * s_unc per sample and
    /// layer; s_unc is the negative prediction entropy sum_c p log p.
    Var fusion_scores(const std::vector<Var>& latents, const std::vector<Var>& probs,
                      const std::vector<Var>& log_probs) const {
        using namespace autograd;
        std::vector<Var> cols;
        cols.reserve(latents.size());
        for (std::size_t i = 0; i < latents.size(); ++i) {
            auto g = tanh_(add_bias(matmul(latents[i], gate_proj_.w), gate_proj_.b));
            auto s_proj = tanh_(add_bias(matmul(g, gate_out_.w), gate_out_.b));
            auto s_unc = row_sum(mul(probs[i], log_probs[i]));
            cols.push_back(add(scale(s_proj, cfg_.lambda_proj), scale(s_unc, cfg_.lambda_unc)));
        }
        return concat_cols(cols);
    }

    Var fusion_weights(const Var& scoresx) const {
        return autograd::softmax_rows(scoresx, cfg_.tau_fuse);
    }

    /// Concatenate per-layer latents scaled by their fusion weight.
    Var fuse(const std::vector<Var>& latents, const Var& weights) const {
        using namespace autograd;
        const std::size_t rows = weights->value.rows();
        std::vector<Var> blocks;
        blocks.reserve(latents.size());
        for (std::size_t i = 0; i < latents.size(); ++i) {
            auto w_col = pick_per_row(weights, std::vector<int>(rows, static_cast<int>(i)));
            blocks.push_back(mul_colvec(latents[i], w_col));
        }
        return concat_cols(blocks);
    }

    /// Class-weighted global cross-entropy: mean over batch of
    /// lambda_{y_n} * CE_n.
    Var global_ce(const Var& logits, const std::vector<int>& labels,
                  const std::vector<double>& class_weights) const {
        using namespace autograd;
        check_labels(labels);
        const std::size_t rows = logits->value.rows();
        Tensor lam = Tensor::matrix(rows, 1);
        for (std::size_t r = 0; r < rows; ++r)
            lam[r] = class_weights.empty() ? 1.0 : class_weights[static_cast<std::size_t>(labels[r])];
        auto nll = scale(pick_per_row(log_softmax_rows(logits, 1.0), labels), -1.0);
        return mean(mul(nll, make_const(lam)));
    }

    ForwardResult forward(const std::vector<Var>& views, bool train, long step) const {
        using namespace autograd;
        ForwardResult fr;
        fr.latents = encode_all(views, train, step);
        for (std::size_t i = 0; i < fr.latents.size(); ++i) {
            fr.layer_logits.push_back(layer_logits(i, fr.latents[i]));
            fr.layer_probs.push_back(softmax_rows(fr.layer_logits[i], 1.0));
        }
        std::vector<Var> log_probs;
        for (const auto& lg : fr.layer_logits) log_probs.push_back(log_softmax_rows(lg, 1.0));
        fr.scores = fusion_scores(fr.latents, fr.layer_probs, log_probs);
        fr.fusion_weights = fusion_weights(fr.scores);
        fr.fused = fuse(fr.latents, fr.fusion_weights);
        fr.global_logits = add_bias(matmul(fr.fused, global_head_.w), global_head_.b);
        return fr;
    }

    /// Joint objective: mean reconstruction + consensus + layer supervision +
    /// weighted global cross-entropy, with terms droppable for ablations.
    std::pair<Var, LossBreakdown> total_loss(const std::vector<Var>& views,
                                             const std::vector<int>& labels,
                                             const std::vector<double>& class_weights, bool train,
                                             long step) const {
        using namespace autograd;
        ForwardResult fr = forward(views, train, step);
        LossBreakdown bd;
        Var total;

        if (cfg_.use_rec) {
            Var acc;
            for (std::size_t i = 0; i < views.size(); ++i) {
                auto li = rec_loss(views[i], decode(i, fr.latents[i]));
                bd.rec_per_layer.push_back(li->value.item());
                acc = acc ? add(acc, li) : li;
            }
            auto rec_term = scale(acc, cfg_.w_rec / static_cast<double>(views.size()));
            bd.rec_mean = rec_term->value.item();
            total = rec_term;
        } else {
            bd.rec_per_layer.assign(views.size(), 0.0);
        }

        if (cfg_.use_con) {
            auto con = scale(consensus_loss(fr.latents), cfg_.w_con);
            bd.consensus = con->value.item();
            total = total ? add(total, con) : con;
        }

        if (cfg_.use_task) {
            auto lce = scale(layer_ce(fr.layer_logits, labels), cfg_.w_ce);
            bd.layer_ce = lce->value.item();
            total = total ? add(total, lce) : lce;
        }

        auto gce = scale(global_ce(fr.global_logits, labels, class_weights), cfg_.w_gce);
        bd.global_ce = gce->value.item();
        total = total ? add(total, gce) : gce;

        bd.total = total->value.item();
        return {total, bd};
    }

    /// Deterministic eval-mode prediction for a batch of rows.
    std::vector<Prediction> predict(const std::vector<Var>& views) const {
        ForwardResult fr = forward(views, /*train=*/false, /*step=*/0);
        auto probs = autograd::softmax_rows(fr.global_logits, 1.0);
        const std::size_t rows = probs->value.rows();
        const std::size_t m = fr.latents.size();
        std::vector<Prediction> out(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            Prediction& p = out[r];
            p.global_probs.resize(static_cast<std::size_t>(cfg_.class_count));
            for (int c = 0; c < cfg_.class_count; ++c)
                p.global_probs[static_cast<std::size_t>(c)] = probs->value.at(r, static_cast<std::size_t>(c));
            p.label = 0;
            for (int c = 1; c < cfg_.class_count; ++c)
                if (p.global_probs[static_cast<std::size_t>(c)] >
                    p.global_probs[static_cast<std::size_t>(p.label)])
                    p.label = c; // ties keep the lowest class index
            p.layer_probs.resize(m);
            p.fusion_weights.resize(m);
            for (std::size_t i = 0; i < m; ++i) {
                p.fusion_weights[i] = fr.fusion_weights->value.at(r, i);
                p.layer_probs[i].resize(static_cast<std::size_t>(cfg_.class_count));
                for (int c = 0; c < cfg_.class_count; ++c)
                    p.layer_probs[i][static_cast<std::size_t>(c)] =
                        fr.layer_probs[i]->value.at(r, static_cast<std::size_t>(c));
            }
            p.fused.resize(fr.fused->value.cols());
            for (std::size_t c = 0; c < fr.fused->value.cols(); ++c)
                p.fused[c] = fr.fused->value.at(r, c);
        }
        return out;
    }

private:
    struct Linear {
        Var w, b;
    };

    static Linear make_linear(std::size_t in, std::size_t out, Rng& rng, bool zero_init) {
        Tensor w = Tensor::matrix(in, out);
        if (!zero_init) {
            const double bound = std::sqrt(6.0 / static_cast<double>(in + out));
            for (std::size_t i = 0; i < w.size(); ++i) w[i] = uniform(rng, -bound, bound);
        }
        return {autograd::make_param(std::move(w)),
                autograd::make_param(Tensor::vec(out, 0.0))};
    }

    Var project(const Var& z) const {
        using namespace autograd;
        return tanh_(add_bias(matmul(z, scorer_.w), scorer_.b));
    }

    void check_labels(const std::vector<int>& labels) const {
        for (int l : labels)
            require(l >= 0 && l < cfg_.class_count, Errc::label_out_of_range,
                    "label " + std::to_string(l) + " outside [0, C)");
    }

    ModelConfig cfg_;
    std::uint64_t seed_;
    std::vector<std::vector<Linear>> encoders_;
    std::vector<std::vector<Linear>> decoders_;
    std::vector<Linear> heads_;
    Linear scorer_;
    Linear gate_proj_;
    Linear gate_out_;
    Linear global_head_;
};

} // namespace pacc::model
