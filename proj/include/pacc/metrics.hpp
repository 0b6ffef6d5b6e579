#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "pacc/errors.hpp"

namespace pacc::eval {

struct ConfusionMatrix {
    int class_count = 0;
    std::vector<std::vector<std::int64_t>> counts; // rows true, cols predicted

    std::string to_csv() const {
        std::string out = "true\\pred";
        for (int c = 0; c < class_count; ++c) out += "," + std::to_string(c);
        out += "\n";
        for (int r = 0; r < class_count; ++r) {
            out += std::to_string(r);
            for (int c = 0; c < class_count; ++c) out += "," + std::to_string(counts[r][c]);
            out += "\n";
        }
        return out;
    }
};

struct MetricsReport {
    double accuracy = 0.0;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    std::vector<double> precision, recall, f1;
    std::vector<std::int64_t> support;
    bool zero_division_flagged = false; // some 0/0 was mapped to 0

    nlohmann::json to_json() const {
        return {{"accuracy", accuracy},
                {"macro_precision", macro_precision},
                {"macro_recall", macro_recall},
                {"macro_f1", macro_f1},
                {"per_class", {{"precision", precision}, {"recall", recall}, {"f1", f1},
                               {"support", support}}},
                {"zero_division_flagged", zero_division_flagged},
                {"conventions", "0/0 := 0; macro means include zero-support classes"}};
    }
};

inline ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                                 int class_count) {
    require(y_true.size() == y_pred.size(), Errc::shape_mismatch, "label vectors differ");
    ConfusionMatrix cm;
    cm.class_count = class_count;
    cm.counts.assign(static_cast<std::size_t>(class_count),
                     std::vector<std::int64_t>(static_cast<std::size_t>(class_count), 0));
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        require(y_true[i] >= 0 && y_true[i] < class_count, Errc::label_out_of_range, "y_true");
        require(y_pred[i] >= 0 && y_pred[i] < class_count, Errc::label_out_of_range, "y_pred");
        ++cm.counts[static_cast<std::size_t>(y_true[i])][static_cast<std::size_t>(y_pred[i])];
    }
    return cm;
}

/// Accuracy plus macro-averaged precision/recall/F1 with the 0/0 := 0
/// convention; zero-support classes stay in the macro mean.
inline MetricsReport metrics(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                             int class_count) {
    require(!y_true.empty(), Errc::empty_split, "no samples to score");
    ConfusionMatrix cm = confusion(y_true, y_pred, class_count);
    MetricsReport rep;
    std::int64_t correct = 0;
    for (int c = 0; c < class_count; ++c) correct += cm.counts[c][c];
    rep.accuracy = static_cast<double>(correct) / static_cast<double>(y_true.size());

    rep.precision.resize(class_count);
    rep.recall.resize(class_count);
    rep.f1.resize(class_count);
    rep.support.resize(class_count);
    for (int c = 0; c < class_count; ++c) {
        std::int64_t tp = cm.counts[c][c], fp = 0, fn = 0;
        for (int o = 0; o < class_count; ++o) {
            if (o == c) continue;
            fp += cm.counts[o][c];
            fn += cm.counts[c][o];
        }
        rep.support[c] = tp + fn;
        if (tp + fp == 0) {
            rep.precision[c] = 0.0;
            rep.zero_division_flagged = true;
        } else {
            rep.precision[c] = static_cast<double>(tp) / static_cast<double>(tp + fp);
        }
        if (tp + fn == 0) {
            rep.recall[c] = 0.0;
            rep.zero_division_flagged = true;
        } else {
            rep.recall[c] = static_cast<double>(tp) / static_cast<double>(tp + fn);
        }
        if (rep.precision[c] + rep.recall[c] == 0.0) {
            rep.f1[c] = 0.0;
            rep.zero_division_flagged = true;
        } else {
            rep.f1[c] =
                2.0 * rep.precision[c] * rep.recall[c] / (rep.precision[c] + rep.recall[c]);
        }
        rep.macro_precision += rep.precision[c];
        rep.macro_recall += rep.recall[c];
        rep.macro_f1 += rep.f1[c];
    }
    rep.macro_precision /= class_count;
    rep.macro_recall /= class_count;
    rep.macro_f1 /= class_count;
    return rep;
}

} // namespace pacc::eval
