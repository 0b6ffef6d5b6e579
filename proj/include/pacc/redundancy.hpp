#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pacc/compression.hpp"
#include "pacc/discrete.hpp"
#include "pacc/errors.hpp"
#include "pacc/pca.hpp"
#include "pacc/silhouette.hpp"
#include "pacc/tensor.hpp"
#include "pacc/util.hpp"

namespace pacc::info {

// Continuous matrices are turned into discrete codes by PCA projection
// followed by per-dimension quantile binning; the joint code is the tuple of
// per-dimension bin ids.

struct CodingResult {
    std::vector<int> codes;
    bool rank_deficient = false;
    std::size_t occupied_cells = 0;
};

inline CodingResult discretize_view(const Tensor& x, std::size_t pca_k, int bins) {
    const std::size_t n = x.rows();
    require(n >= static_cast<std::size_t>(bins), Errc::invalid_argument,
            "need at least `bins` rows");
    const std::size_t k = std::min(pca_k, std::min(n - 1, x.cols()));
    PcaResult pca;
    try {
        pca = pca_project_full(x, k);
    } catch (const Error& e) {
        if (e.code() != Errc::degenerate_rank) throw;
        // constant view: one symbol, zero information
        CodingResult res;
        res.codes.assign(n, 0);
        res.rank_deficient = true;
        res.occupied_cells = 1;
        return res;
    }
    std::vector<std::int64_t> packed(n, 0);
    std::vector<double> column(n);
    for (std::size_t c = 0; c < pca.k_used; ++c) {
        for (std::size_t r = 0; r < n; ++r) column[r] = pca.projected.at(r, c);
        const std::vector<int> codes = quantile_bin(column, bins);
        for (std::size_t r = 0; r < n; ++r)
            packed[r] = packed[r] * bins + codes[r];
    }
    CodingResult res;
    res.codes = compact_relabel(packed);
    res.rank_deficient = pca.rank_deficient;
    int mx = 0;
    for (int c : res.codes) mx = std::max(mx, c);
    res.occupied_cells = static_cast<std::size_t>(mx) + 1;
    return res;
}

/// Plug-in estimate of I(X;Y) in nats after PCA + quantile binning.
inline double view_mi(const Tensor& x, const std::vector<int>& labels, std::size_t pca_k,
                      int bins) {
    require(labels.size() == x.rows(), Errc::shape_mismatch, "labels must match rows");
    const CodingResult coded = discretize_view(x, pca_k, bins);
    return mutual_information(DiscreteJoint::from_codes(coded.codes, labels));
}

/// Normalized conditional MI between two views given labels:
/// I(code_i; code_j | Y) / min(H(code_i|Y), H(code_j|Y)), 0/0 -> 0.
inline double view_pair_cmi(const Tensor& xi, const Tensor& xj, const std::vector<int>& labels,
                            std::size_t pca_k, int bins) {
    require(xi.rows() == xj.rows() && labels.size() == xi.rows(), Errc::shape_mismatch,
            "views and labels must align");
    const std::vector<int> ci = discretize_view(xi, pca_k, bins).codes;
    const std::vector<int> cj = discretize_view(xj, pca_k, bins).codes;
    const double cmi = conditional_mi(DiscreteJoint::from_codes(ci, cj, labels));
    const double norm = std::min(conditional_entropy(ci, labels), conditional_entropy(cj, labels));
    if (norm <= 0.0) return 0.0;
    const double v = cmi / norm;
    return std::clamp(v, 0.0, 1.0);
}

struct NonRedundancyResult {
    bool nonredundant = false;
    double cmi_i_given_j = 0.0; // I(X_i; Y | X_j)
    double cmi_j_given_i = 0.0; // I(X_j; Y | X_i)
};

/// Definition-style test: the pair is non-redundant for Y when either
/// direction of conditional task information exceeds epsilon.
inline NonRedundancyResult nonredundancy_check(const Tensor& xi, const Tensor& xj,
                                               const std::vector<int>& labels, double epsilon,
                                               std::size_t pca_k, int bins) {
    const std::vector<int> ci = discretize_view(xi, pca_k, bins).codes;
    const std::vector<int> cj = discretize_view(xj, pca_k, bins).codes;
    NonRedundancyResult r;
    r.cmi_i_given_j = conditional_mi(DiscreteJoint::from_codes(ci, labels, cj));
    r.cmi_j_given_i = conditional_mi(DiscreteJoint::from_codes(cj, labels, ci));
    r.nonredundant = r.cmi_i_given_j > epsilon || r.cmi_j_given_i > epsilon;
    return r;
}

// ---------------------------------------------------------------------------
// Report assembly
// ---------------------------------------------------------------------------

struct RedundancyReport {
    std::vector<std::string> layer_names;
    std::vector<std::vector<double>> pairwise_cmi; // M x M, symmetric, diag 1
    std::vector<double> task_relevance;            // I(X_i; Y) in nats
    std::vector<double> compression_ratios;
    std::optional<double> silhouette_score;
    std::size_t pca_k = 0;
    int bins = 0;
    std::vector<std::string> warnings;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["layers"] = layer_names;
        j["pairwise_cmi"] = pairwise_cmi;
        j["task_relevance_nats"] = task_relevance;
        j["compression_ratio"] = compression_ratios;
        if (silhouette_score) j["silhouette"] = *silhouette_score;
        j["estimator"] = {{"pca_k", pca_k},
                          {"bins", bins},
                          {"mi", "plug-in histogram, natural log"},
                          {"cmi_normalizer", "min pooled conditional entropy"},
                          {"codec", "deflate (zlib default level)"},
                          {"ternary_packing", "-1->10, 0->00, 1->01"}};
        j["warnings"] = warnings;
        return j;
    }

    /// Heatmap matrix as CSV, one header row plus one row per layer.
    std::string cmi_csv() const {
        std::string out = "layer";
        for (const auto& n : layer_names) out += "," + n;
        out += "\n";
        for (std::size_t i = 0; i < layer_names.size(); ++i) {
            out += layer_names[i];
            for (std::size_t jx = 0; jx < layer_names.size(); ++jx) {
                char buf[40];
                std::snprintf(buf, sizeof(buf), ",%.6f", pairwise_cmi[i][jx]);
                out += buf;
            }
            out += "\n";
        }
        return out;
    }
};

/// Pairwise CMI heatmap, per-layer task relevance and compression ratios
/// for a list of equally tall matrices (raw views or embeddings).
inline RedundancyReport redundancy_report(const std::vector<const Tensor*>& views,
                                          const std::vector<std::string>& names,
                                          const std::vector<int>& labels, std::size_t pca_k,
                                          int bins, bool with_silhouette = false) {
    const std::size_t m = views.size();
    require(m >= 1, Errc::empty_dataset, "report needs at least one view");
    require(names.size() == m, Errc::shape_mismatch, "names must match views");

    RedundancyReport rep;
    rep.layer_names = names;
    rep.pca_k = pca_k;
    rep.bins = bins;
    rep.pairwise_cmi.assign(m, std::vector<double>(m, 1.0));
    rep.task_relevance.assign(m, 0.0);
    rep.compression_ratios.assign(m, 0.0);

    std::vector<CodingResult> coded(m);
    parallel_for(m, [&](std::size_t i) {
        coded[i] = discretize_view(*views[i], pca_k, bins);
        rep.task_relevance[i] =
            mutual_information(DiscreteJoint::from_codes(coded[i].codes, labels));
        rep.compression_ratios[i] = compression_ratio(*views[i]);
    });
    for (std::size_t i = 0; i < m; ++i) {
        if (coded[i].rank_deficient)
            rep.warnings.push_back("pca rank deficient for layer " + names[i]);
        if (labels.size() < 10 * coded[i].occupied_cells)
            rep.warnings.push_back("sparse cell occupancy for layer " + names[i] +
                                   " (N < 10x occupied cells)");
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
    std::vector<double> pair_vals(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t p) {
        const auto [i, j] = pairs[p];
        const double cmi = conditional_mi(DiscreteJoint::from_codes(coded[i].codes,
                                                                    coded[j].codes, labels));
        const double norm = std::min(conditional_entropy(coded[i].codes, labels),
                                     conditional_entropy(coded[j].codes, labels));
        pair_vals[p] = norm <= 0.0 ? 0.0 : std::clamp(cmi / norm, 0.0, 1.0);
    });
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto [i, j] = pairs[p];
        rep.pairwise_cmi[i][j] = pair_vals[p];
        rep.pairwise_cmi[j][i] = pair_vals[p];
    }

    if (with_silhouette) {
        std::size_t total_cols = 0;
        for (const auto* v : views) total_cols += v->cols();
        Tensor cat = Tensor::matrix(labels.size(), total_cols);
        std::size_t off = 0;
        for (const auto* v : views) {
            for (std::size_t r = 0; r < v->rows(); ++r)
                for (std::size_t c = 0; c < v->cols(); ++c) cat.at(r, off + c) = v->at(r, c);
            off += v->cols();
        }
        rep.silhouette_score = silhouette(cat, labels);
    }
    return rep;
}

} // namespace pacc::info
