#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "pacc/errors.hpp"
#include "pacc/tensor.hpp"

namespace pacc::info {

/// Mean silhouette coefficient (Euclidean). s(i) = (b-a)/max(a,b) with a the
/// mean distance to the own cluster and b the smallest mean distance to any
/// other cluster; points in singleton clusters contribute 0.
inline double silhouette(const Tensor& points, const std::vector<int>& labels) {
    const std::size_t n = points.rows(), d = points.cols();
    require(labels.size() == n && n >= 2, Errc::invalid_argument, "silhouette input shape");

    int c_max = 0;
    for (int l : labels) {
        require(l >= 0, Errc::label_out_of_range, "negative label");
        c_max = std::max(c_max, l);
    }
    const int classes = c_max + 1;
    std::vector<std::size_t> cluster_size(classes, 0);
    for (int l : labels) ++cluster_size[static_cast<std::size_t>(l)];
    int nonempty = 0;
    for (auto s : cluster_size)
        if (s > 0) ++nonempty;
    require(nonempty >= 2, Errc::single_class, "silhouette needs at least 2 classes");

    double total = 0.0;
    std::vector<double> dist_sum(classes);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(dist_sum.begin(), dist_sum.end(), 0.0);
        const double* pi = points.data() + i * d;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double* pj = points.data() + j * d;
            double sq = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                const double diff = pi[c] - pj[c];
                sq += diff * diff;
            }
            dist_sum[static_cast<std::size_t>(labels[j])] += std::sqrt(sq);
        }
        const auto own = static_cast<std::size_t>(labels[i]);
        if (cluster_size[own] <= 1) continue; // singleton: s(i) = 0
        const double a = dist_sum[own] / static_cast<double>(cluster_size[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (int c = 0; c < classes; ++c) {
            if (static_cast<std::size_t>(c) == own || cluster_size[c] == 0) continue;
            b = std::min(b, dist_sum[c] / static_cast<double>(cluster_size[c]));
        }
        const double denom = std::max(a, b);
        if (denom > 0.0) total += (b - a) / denom;
    }
    return total / static_cast<double>(n);
}

} // namespace pacc::info
