#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "pacc/errors.hpp"
#include "pacc/tensor.hpp"
#include "pacc/util.hpp"

namespace pacc::info {

// ---------------------------------------------------------------------------
// Symmetric eigendecomposition (cyclic Jacobi). Adequate for the covariance
// sizes we solve directly; larger inputs go through subspace iteration below.
// ---------------------------------------------------------------------------

struct EigResult {
    std::vector<double> values;        // descending
    std::vector<std::vector<double>> vectors; // vectors[i] pairs with values[i]
};

inline EigResult jacobi_eigh(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a[x][x] > a[y][y]; });

    EigResult r;
    r.values.reserve(n);
    r.vectors.reserve(n);
    for (auto idx : order) {
        r.values.push_back(a[idx][idx]);
        std::vector<double> col(n);
        for (std::size_t k = 0; k < n; ++k) col[k] = v[k][idx];
        r.vectors.push_back(std::move(col));
    }
    return r;
}

// ---------------------------------------------------------------------------
// PCA projection
// ---------------------------------------------------------------------------

struct PcaResult {
    Tensor projected;                 // N x k_used
    std::vector<double> eigenvalues;  // descending, length k_used
    std::size_t k_used = 0;
    bool rank_deficient = false;      // requested k exceeded numeric rank
};

namespace detail {

// y = (Xc^T (Xc v)) / (N-1), the covariance product without forming it.
inline void cov_apply(const Tensor& xc, const std::vector<double>& vin, std::vector<double>& vout,
                      std::vector<double>& scratch_n) {
    const std::size_t n = xc.rows(), d = xc.cols();
    for (std::size_t r = 0; r < n; ++r) {
        double acc = 0.0;
        const double* row = xc.data() + r * d;
        for (std::size_t c = 0; c < d; ++c) acc += row[c] * vin[c];
        scratch_n[r] = acc;
    }
    std::fill(vout.begin(), vout.end(), 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const double s = scratch_n[r];
        if (s == 0.0) continue;
        const double* row = xc.data() + r * d;
        for (std::size_t c = 0; c < d; ++c) vout[c] += s * row[c];
    }
    const double inv = 1.0 / static_cast<double>(n - 1);
    for (auto& x : vout) x *= inv;
}

inline void orthonormalize(std::vector<std::vector<double>>& basis) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            double dot = 0.0;
            for (std::size_t c = 0; c < basis[i].size(); ++c) dot += basis[i][c] * basis[j][c];
            for (std::size_t c = 0; c < basis[i].size(); ++c) basis[i][c] -= dot * basis[j][c];
        }
        double nrm = 0.0;
        for (double x : basis[i]) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (nrm > 1e-300)
            for (auto& x : basis[i]) x /= nrm;
        else
            std::fill(basis[i].begin(), basis[i].end(), 0.0);
    }
}

} // namespace detail

/// Project rows of X onto the top-k principal directions of the centered
/// data. Components are eigen-ordered descending and sign-fixed so the
/// largest-magnitude loading of each direction is positive (first index on
/// magnitude ties). If the numeric rank r is below k the projection is
/// reduced to r columns with rank_deficient set; a rank of zero (constant
/// input) raises DegenerateRank.
inline PcaResult pca_project_full(const Tensor& x, std::size_t k) {
    const std::size_t n = x.rows(), d = x.cols();
    require(n >= 2, Errc::invalid_argument, "pca needs at least 2 rows");
    require(k >= 1 && k <= std::min(n - 1, d), Errc::invalid_argument,
            "pca k out of range [1, min(N-1, d)]");

    Tensor xc = x;
    for (std::size_t c = 0; c < d; ++c) {
        double m = 0.0;
        for (std::size_t r = 0; r < n; ++r) m += xc.at(r, c);
        m /= static_cast<double>(n);
        for (std::size_t r = 0; r < n; ++r) xc.at(r, c) -= m;
    }

    std::vector<std::vector<double>> loadings; // each length d
    std::vector<double> eigvals;

    constexpr std::size_t kDenseLimit = 128;
    if (d <= kDenseLimit) {
        std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
        const double inv = 1.0 / static_cast<double>(n - 1);
        for (std::size_t r = 0; r < n; ++r) {
            const double* row = xc.data() + r * d;
            for (std::size_t i = 0; i < d; ++i) {
                if (row[i] == 0.0) continue;
                for (std::size_t j = i; j < d; ++j) cov[i][j] += row[i] * row[j];
            }
        }
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i; j < d; ++j) {
                cov[i][j] *= inv;
                cov[j][i] = cov[i][j];
            }
        EigResult eig = jacobi_eigh(std::move(cov));
        for (std::size_t i = 0; i < std::min(k, d); ++i) {
            eigvals.push_back(eig.values[i]);
            loadings.push_back(eig.vectors[i]);
        }
    } else {
        // Block power iteration with Rayleigh-Ritz refinement on the
        // matrix-free covariance product, oversampled for separation.
        const std::size_t p = std::min(d, k + 4);
        Rng rng(0x50414343u); // fixed start so results are reproducible
        std::vector<std::vector<double>> basis(p, std::vector<double>(d));
        for (auto& b : basis)
            for (auto& e : b) e = uniform(rng, -1.0, 1.0);
        detail::orthonormalize(basis);
        std::vector<double> scratch_n(n), next(d);
        for (int iter = 0; iter < 150; ++iter) {
            for (auto& b : basis) {
                detail::cov_apply(xc, b, next, scratch_n);
                b = next;
            }
            detail::orthonormalize(basis);
        }
        // Rayleigh-Ritz: eigendecompose B = V^T C V.
        std::vector<std::vector<double>> cv(p, std::vector<double>(d));
        for (std::size_t i = 0; i < p; ++i) detail::cov_apply(xc, basis[i], cv[i], scratch_n);
        std::vector<std::vector<double>> small(p, std::vector<double>(p, 0.0));
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j) {
                double dot = 0.0;
                for (std::size_t c = 0; c < d; ++c) dot += basis[i][c] * cv[j][c];
                small[i][j] = dot;
            }
        EigResult eig = jacobi_eigh(std::move(small));
        for (std::size_t i = 0; i < std::min(k, p); ++i) {
            eigvals.push_back(eig.values[i]);
            std::vector<double> dir(d, 0.0);
            for (std::size_t j = 0; j < p; ++j)
                for (std::size_t c = 0; c < d; ++c) dir[c] += eig.vectors[i][j] * basis[j][c];
            loadings.push_back(std::move(dir));
        }
    }

    // Numeric rank cut.
    const double top = eigvals.empty() ? 0.0 : std::max(eigvals[0], 0.0);
    const double tol = std::max(top * 1e-12, 1e-12);
    std::size_t k_used = 0;
    while (k_used < eigvals.size() && eigvals[k_used] > tol) ++k_used;
    require(k_used >= 1, Errc::degenerate_rank, "input has no variance");

    PcaResult res;
    res.rank_deficient = k_used < k;
    res.k_used = k_used;
    res.eigenvalues.assign(eigvals.begin(), eigvals.begin() + static_cast<long>(k_used));

    // Deterministic sign: largest-magnitude loading positive.
    for (std::size_t i = 0; i < k_used; ++i) {
        std::size_t arg = 0;
        for (std::size_t c = 1; c < d; ++c)
            if (std::fabs(loadings[i][c]) > std::fabs(loadings[i][arg])) arg = c;
        if (loadings[i][arg] < 0.0)
            for (auto& e : loadings[i]) e = -e;
    }

    res.projected = Tensor::matrix(n, k_used);
    for (std::size_t r = 0; r < n; ++r) {
        const double* row = xc.data() + r * d;
        for (std::size_t i = 0; i < k_used; ++i) {
            double acc = 0.0;
            for (std::size_t c = 0; c < d; ++c) acc += row[c] * loadings[i][c];
            res.projected.at(r, i) = acc;
        }
    }
    return res;
}

inline Tensor pca_project(const Tensor& x, std::size_t k) {
    return pca_project_full(x, k).projected;
}

// ---------------------------------------------------------------------------
// Quantile binning
// ---------------------------------------------------------------------------

/// Codes in [0, bins) with edges at empirical quantiles. Intervals are
/// left-closed; duplicate edges collapse, and edges at the minimum are
/// dropped so constant input maps to code 0.
inline std::vector<int> quantile_bin(const std::vector<double>& x, int bins) {
    require(bins >= 2, Errc::invalid_argument, "bins must be >= 2");
    std::vector<int> codes(x.size(), 0);
    if (x.empty()) return codes;
    std::vector<double> sorted(x);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> edges;
    for (int j = 1; j < bins; ++j) {
        const std::size_t pos = (static_cast<std::size_t>(j) * sorted.size()) / static_cast<std::size_t>(bins);
        double e = sorted[pos];
        if (e <= sorted.front()) {
            // Quantile landed on the minimum (heavy ties); split at the next
            // distinct value instead so the minimum keeps its own bin.
            auto it = std::upper_bound(sorted.begin(), sorted.end(), sorted.front());
            if (it == sorted.end()) break; // constant vector: no edges
            e = *it;
        }
        if (edges.empty() || e > edges.back()) edges.push_back(e);
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        int c = 0;
        for (double e : edges)
            if (x[i] >= e) ++c;
        codes[i] = c;
    }
    return codes;
}

} // namespace pacc::info
