#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "pacc/errors.hpp"

namespace pacc::info {

// Plug-in (histogram) estimators over dense count tensors. Natural log
// throughout; 0 * log 0 is taken as 0.

/// Joint count table over two or three discrete variables. For three
/// variables the last axis is the conditioning variable of conditional_mi.
class DiscreteJoint {
public:
    static DiscreteJoint joint2(std::size_t ka, std::size_t kb) {
        return DiscreteJoint({ka, kb});
    }
    static DiscreteJoint joint3(std::size_t ka, std::size_t kb, std::size_t ky) {
        return DiscreteJoint({ka, kb, ky});
    }

    static DiscreteJoint from_codes(const std::vector<int>& a, const std::vector<int>& b) {
        require(a.size() == b.size(), Errc::shape_mismatch, "code vectors differ in length");
        DiscreteJoint j({width(a), width(b)});
        for (std::size_t i = 0; i < a.size(); ++i) j.add2(a[i], b[i]);
        return j;
    }

    static DiscreteJoint from_codes(const std::vector<int>& a, const std::vector<int>& b,
                                    const std::vector<int>& y) {
        require(a.size() == b.size() && a.size() == y.size(), Errc::shape_mismatch,
                "code vectors differ in length");
        DiscreteJoint j({width(a), width(b), width(y)});
        for (std::size_t i = 0; i < a.size(); ++i) j.add3(a[i], b[i], y[i]);
        return j;
    }

    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t rank() const { return dims_.size(); }
    std::int64_t total() const { return total_; }

    void add2(std::size_t a, std::size_t b, std::int64_t n = 1) {
        counts_[a * dims_[1] + b] += n;
        total_ += n;
    }
    void add3(std::size_t a, std::size_t b, std::size_t y, std::int64_t n = 1) {
        counts_[(a * dims_[1] + b) * dims_[2] + y] += n;
        total_ += n;
    }

    std::int64_t at2(std::size_t a, std::size_t b) const { return counts_[a * dims_[1] + b]; }
    std::int64_t at3(std::size_t a, std::size_t b, std::size_t y) const {
        return counts_[(a * dims_[1] + b) * dims_[2] + y];
    }

    /// Marginal over one axis of a 2-variable joint.
    std::vector<std::int64_t> marginal2(int axis) const {
        std::vector<std::int64_t> m(dims_[axis], 0);
        for (std::size_t a = 0; a < dims_[0]; ++a)
            for (std::size_t b = 0; b < dims_[1]; ++b) m[axis == 0 ? a : b] += at2(a, b);
        return m;
    }

private:
    explicit DiscreteJoint(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
        std::size_t n = 1;
        for (auto d : dims_) n *= d;
        counts_.assign(n, 0);
    }

    static std::size_t width(const std::vector<int>& codes) {
        int mx = -1;
        for (int c : codes) {
            require(c >= 0, Errc::invalid_argument, "negative code");
            if (c > mx) mx = c;
        }
        return static_cast<std::size_t>(mx + 1);
    }

    std::vector<std::size_t> dims_;
    std::vector<std::int64_t> counts_;
    std::int64_t total_ = 0;
};

/// Shannon entropy of a count vector, in nats.
inline double discrete_entropy(const std::vector<std::int64_t>& counts) {
    std::int64_t total = 0;
    for (auto c : counts) {
        require(c >= 0, Errc::invalid_argument, "negative count");
        total += c;
    }
    require(total >= 1, Errc::empty_distribution, "entropy of an empty distribution");
    double h = 0.0;
    for (auto c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log(p);
    }
    return h;
}

/// I(A;B) of a 2-variable joint, in nats.
inline double mutual_information(const DiscreteJoint& j) {
    require(j.rank() == 2, Errc::shape_mismatch, "mutual_information expects a 2-variable joint");
    require(j.total() >= 1, Errc::empty_distribution, "mutual information of an empty joint");
    const auto ma = j.marginal2(0);
    const auto mb = j.marginal2(1);
    const double n = static_cast<double>(j.total());
    double mi = 0.0;
    for (std::size_t a = 0; a < j.dims()[0]; ++a) {
        for (std::size_t b = 0; b < j.dims()[1]; ++b) {
            const std::int64_t c = j.at2(a, b);
            if (c == 0) continue;
            const double pab = static_cast<double>(c) / n;
            const double pa = static_cast<double>(ma[a]) / n;
            const double pb = static_cast<double>(mb[b]) / n;
            mi += pab * std::log(pab / (pa * pb));
        }
    }
    return mi;
}

/// I(A;B|Y) of a 3-variable joint: expectation over Y of per-slice MI.
inline double conditional_mi(const DiscreteJoint& j) {
    require(j.rank() == 3, Errc::shape_mismatch, "conditional_mi expects a 3-variable joint");
    require(j.total() >= 1, Errc::empty_distribution, "conditional MI of an empty joint");
    const double n = static_cast<double>(j.total());
    double cmi = 0.0;
    for (std::size_t y = 0; y < j.dims()[2]; ++y) {
        std::int64_t slice_total = 0;
        for (std::size_t a = 0; a < j.dims()[0]; ++a)
            for (std::size_t b = 0; b < j.dims()[1]; ++b) slice_total += j.at3(a, b, y);
        if (slice_total == 0) continue;
        DiscreteJoint slice = DiscreteJoint::joint2(j.dims()[0], j.dims()[1]);
        for (std::size_t a = 0; a < j.dims()[0]; ++a)
            for (std::size_t b = 0; b < j.dims()[1]; ++b) {
                const std::int64_t c = j.at3(a, b, y);
                if (c > 0) slice.add2(a, b, c);
            }
        cmi += (static_cast<double>(slice_total) / n) * mutual_information(slice);
    }
    return cmi;
}

/// Pooled conditional entropy H(A|Y) of codes given labels, in nats.
inline double conditional_entropy(const std::vector<int>& codes, const std::vector<int>& labels) {
    require(codes.size() == labels.size() && !codes.empty(), Errc::empty_distribution,
            "conditional entropy needs aligned nonempty codes");
    std::unordered_map<int, std::unordered_map<int, std::int64_t>> per_class;
    std::unordered_map<int, std::int64_t> class_total;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        per_class[labels[i]][codes[i]] += 1;
        class_total[labels[i]] += 1;
    }
    const double n = static_cast<double>(codes.size());
    double h = 0.0;
    for (const auto& [y, hist] : per_class) {
        const double py = static_cast<double>(class_total[y]) / n;
        double hy = 0.0;
        for (const auto& [code, c] : hist) {
            const double p = static_cast<double>(c) / static_cast<double>(class_total[y]);
            hy -= p * std::log(p);
            (void)code;
        }
        h += py * hy;
    }
    return h;
}

/// Map arbitrary integer codes to dense ids in order of first appearance.
inline std::vector<int> compact_relabel(const std::vector<std::int64_t>& codes) {
    std::unordered_map<std::int64_t, int> ids;
    std::vector<int> out;
    out.reserve(codes.size());
    for (auto c : codes) {
        auto [it, inserted] = ids.emplace(c, static_cast<int>(ids.size()));
        out.push_back(it->second);
    }
    return out;
}

/// Fuse two code vectors into one composite variable (for joints over pairs).
inline std::vector<int> pair_codes(const std::vector<int>& a, const std::vector<int>& b) {
    require(a.size() == b.size(), Errc::shape_mismatch, "pair_codes length mismatch");
    std::vector<std::int64_t> packed(a.size());
    int bmax = 0;
    for (int v : b) bmax = std::max(bmax, v);
    const std::int64_t stride = static_cast<std::int64_t>(bmax) + 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        packed[i] = static_cast<std::int64_t>(a[i]) * stride + b[i];
    return compact_relabel(packed);
}

} // namespace pacc::info
