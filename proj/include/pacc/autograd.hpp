#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pacc/errors.hpp"
#include "pacc/tensor.hpp"
#include "pacc/util.hpp"

namespace pacc::autograd {

// Reverse-mode differentiation over a fixed op set. Each op builds a Node
// whose backward closure scatters the output gradient into its parents.
// Graphs are plain shared_ptr DAGs; creation is cheap and nodes are freed
// when the last Var referencing them goes out of scope.

struct Node;
using Var = std::shared_ptr<Node>;

struct Node {
    Tensor value;
    Tensor grad; // allocated on demand during backward
    std::vector<Var> parents;
    std::function<void(Node&)> backfn; // empty for leaves
    bool requires_grad = false;

    void ensure_grad() {
        if (grad.size() != value.size()) grad = Tensor(value.shape());
    }
};

inline Var make_param(Tensor value) {
    auto n = std::make_shared<Node>();
    n->value = std::move(value);
    n->requires_grad = true;
    return n;
}

/// Leaf that never receives a gradient (batch inputs, label masks, weights).
inline Var make_const(Tensor value) {
    auto n = std::make_shared<Node>();
    n->value = std::move(value);
    n->requires_grad = false;
    return n;
}

namespace detail {

inline Var make_op(Tensor value, std::vector<Var> parents, std::function<void(Node&)> backfn) {
    auto n = std::make_shared<Node>();
    n->value = std::move(value);
    n->parents = std::move(parents);
    for (const auto& p : n->parents)
        if (p->requires_grad) n->requires_grad = true;
    if (n->requires_grad) n->backfn = std::move(backfn);
    return n;
}

constexpr double kLogFloor = 1e-12;

} // namespace detail

// ---------------------------------------------------------------------------
// Linear algebra
// ---------------------------------------------------------------------------

inline Var matmul(const Var& a, const Var& b) {
    require(a->value.cols() == b->value.rows(), Errc::shape_mismatch, "matmul inner dims");
    Tensor out = Tensor::matrix(a->value.rows(), b->value.cols());
    mm_nn_acc(a->value, b->value, out);
    return detail::make_op(std::move(out), {a, b}, [](Node& self) {
        Node& a = *self.parents[0];
        Node& b = *self.parents[1];
        if (a.requires_grad) {
            a.ensure_grad();
            mm_nt_acc(self.grad, b.value, a.grad); // dA = G * B^T
        }
        if (b.requires_grad) {
            b.ensure_grad();
            mm_tn_acc(a.value, self.grad, b.grad); // dB = A^T * G
        }
    });
}

/// a * b^T with both operands given row-major; used for pairwise scores.
inline Var matmul_nt(const Var& a, const Var& b) {
    require(a->value.cols() == b->value.cols(), Errc::shape_mismatch, "matmul_nt inner dims");
    Tensor out = Tensor::matrix(a->value.rows(), b->value.rows());
    mm_nt_acc(a->value, b->value, out);
    return detail::make_op(std::move(out), {a, b}, [](Node& self) {
        Node& a = *self.parents[0];
        Node& b = *self.parents[1];
        if (a.requires_grad) {
            a.ensure_grad();
            mm_nn_acc(self.grad, b.value, a.grad); // dA = G * B
        }
        if (b.requires_grad) {
            b.ensure_grad();
            mm_tn_acc(self.grad, a.value, b.grad); // dB = G^T * A
        }
    });
}

// ---------------------------------------------------------------------------
// Elementwise and broadcasting
// ---------------------------------------------------------------------------

inline Var add(const Var& a, const Var& b) {
    require(a->value.same_shape(b->value), Errc::shape_mismatch, "add shapes");
    Tensor out = a->value;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b->value[i];
    return detail::make_op(std::move(out), {a, b}, [](Node& self) {
        for (int k = 0; k < 2; ++k) {
            Node& p = *self.parents[k];
            if (!p.requires_grad) continue;
            p.ensure_grad();
            for (std::size_t i = 0; i < p.grad.size(); ++i) p.grad[i] += self.grad[i];
        }
    });
}

inline Var sub(const Var& a, const Var& b) {
    require(a->value.same_shape(b->value), Errc::shape_mismatch, "sub shapes");
    Tensor out = a->value;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b->value[i];
    return detail::make_op(std::move(out), {a, b}, [](Node& self) {
        Node& a = *self.parents[0];
        Node& b = *self.parents[1];
        if (a.requires_grad) {
            a.ensure_grad();
            for (std::size_t i = 0; i < a.grad.size(); ++i) a.grad[i] += self.grad[i];
        }
        if (b.requires_grad) {
            b.ensure_grad();
            for (std::size_t i = 0; i < b.grad.size(); ++i) b.grad[i] -= self.grad[i];
        }
    });
}

/// Row-broadcast bias addition: (B x D) + (D). The only broadcasting rule.
inline Var add_bias(const Var& m, const Var& bias) {
    const std::size_t rows = m->value.rows(), cols = m->value.cols();
    require(bias->value.size() == cols, Errc::shape_mismatch, "add_bias width");
    Tensor out = m->value;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) out.at(r, c) += bias->value[c];
    return detail::make_op(std::move(out), {m, bias}, [](Node& self) {
        Node& m = *self.parents[0];
        Node& bias = *self.parents[1];
        const std::size_t rows = self.value.rows(), cols = self.value.cols();
        if (m.requires_grad) {
            m.ensure_grad();
            for (std::size_t i = 0; i < m.grad.size(); ++i) m.grad[i] += self.grad[i];
        }
        if (bias.requires_grad) {
            bias.ensure_grad();
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c) bias.grad[c] += self.grad.at(r, c);
        }
    });
}

inline Var mul(const Var& a, const Var& b) {
    require(a->value.same_shape(b->value), Errc::shape_mismatch, "mul shapes");
    Tensor out = a->value;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b->value[i];
    return detail::make_op(std::move(out), {a, b}, [](Node& self) {
        Node& a = *self.parents[0];
        Node& b = *self.parents[1];
        if (a.requires_grad) {
            a.ensure_grad();
            for (std::size_t i = 0; i < a.grad.size(); ++i) a.grad[i] += self.grad[i] * b.value[i];
        }
        if (b.requires_grad) {
            b.ensure_grad();
            for (std::size_t i = 0; i < b.grad.size(); ++i) b.grad[i] += self.grad[i] * a.value[i];
        }
    });
}

/// Scale every row of (B x D) by the matching entry of a (B x 1) column.
inline Var mul_colvec(const Var& m, const Var& v) {
    const std::size_t rows = m->value.rows(), cols = m->value.cols();
    require(v->value.rows() == rows && v->value.cols() == 1, Errc::shape_mismatch, "mul_colvec");
    Tensor out = m->value;
    for (std::size_t r = 0; r < rows; ++r) {
        const double w = v->value[r];
        for (std::size_t c = 0; c < cols; ++c) out.at(r, c) *= w;
    }
    return detail::make_op(std::move(out), {m, v}, [](Node& self) {
        Node& m = *self.parents[0];
        Node& v = *self.parents[1];
        const std::size_t rows = self.value.rows(), cols = self.value.cols();
        if (m.requires_grad) {
            m.ensure_grad();
            for (std::size_t r = 0; r < rows; ++r) {
                const double w = v.value[r];
                for (std::size_t c = 0; c < cols; ++c) m.grad.at(r, c) += self.grad.at(r, c) * w;
            }
        }
        if (v.requires_grad) {
            v.ensure_grad();
            for (std::size_t r = 0; r < rows; ++r) {
                double acc = 0.0;
                for (std::size_t c = 0; c < cols; ++c) acc += self.grad.at(r, c) * m.value.at(r, c);
                v.grad[r] += acc;
            }
        }
    });
}

inline Var scale(const Var& a, double k) {
    Tensor out = a->value;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= k;
    return detail::make_op(std::move(out), {a}, [k](Node& self) {
        Node& a = *self.parents[0];
        a.ensure_grad();
        for (std::size_t i = 0; i < a.grad.size(); ++i) a.grad[i] += self.grad[i] * k;
    });
}

inline Var tanh_(const Var& a) {
    Tensor out = a->value;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::tanh(out[i]);
    return detail::make_op(std::move(out), {a}, [](Node& self) {
        Node& a = *self.parents[0];
        a.ensure_grad();
        for (std::size_t i = 0; i < a.grad.size(); ++i) {
            const double y = self.value[i];
            a.grad[i] += self.grad[i] * (1.0 - y * y);
        }
    });
}

inline Var relu(const Var& a) {
    Tensor out = a->value;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] > 0.0 ? out[i] : 0.0;
    return detail::make_op(std::move(out), {a}, [](Node& self) {
        Node& a = *self.parents[0];
        a.ensure_grad();
        for (std::size_t i = 0; i < a.grad.size(); ++i)
            if (a.value[i] > 0.0) a.grad[i] += self.grad[i];
    });
}

/// log(max(x, 1e-12)); the clamp is part of the contract, and clamped
/// entries propagate zero gradient.
inline Var log_(const Var& a) {
    Tensor out = a->value;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = std::log(out[i] > detail::kLogFloor ? out[i] : detail::kLogFloor);
    return detail::make_op(std::move(out), {a}, [](Node& self) {
        Node& a = *self.parents[0];
        a.ensure_grad();
        for (std::size_t i = 0; i < a.grad.size(); ++i)
            if (a.value[i] > detail::kLogFloor) a.grad[i] += self.grad[i] / a.value[i];
    });
}

inline Var exp_(const Var& a) {
    Tensor out = a->value;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::exp(out[i]);
    return detail::make_op(std::move(out), {a}, [](Node& self) {
        Node& a = *self.parents[0];
        a.ensure_grad();
        for (std::size_t i = 0; i < a.grad.size(); ++i) a.grad[i] += self.grad[i] * self.value[i];
    });
}

// ---------------------------------------------------------------------------
// Reductions and reshaping
// ---------------------------------------------------------------------------

inline Var sum(const Var& a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a->value.size(); ++i) acc += a->value[i];
    return detail::make_op(Tensor::scalar(acc), {a}, [](Node& self) {
        Node& a = *self.parents[0];
        a.ensure_grad();
        const double g = self.grad[0];
        for (std::size_t i = 0; i < a.grad.size(); ++i) a.grad[i] += g;
    });
}

inline Var mean(const Var& a) {
    require(a->value.size() > 0, Errc::shape_mismatch, "mean of empty tensor");
    double acc = 0.0;
    for (std::size_t i = 0; i < a->value.size(); ++i) acc += a->value[i];
    const double inv = 1.0 / static_cast<double>(a->value.size());
    return detail::make_op(Tensor::scalar(acc * inv), {a}, [inv](Node& self) {
        Node& a = *self.parents[0];
        a.ensure_grad();
        const double g = self.grad[0] * inv;
        for (std::size_t i = 0; i < a.grad.size(); ++i) a.grad[i] += g;
    });
}

/// (B x C) -> (B x 1) sum along each row.
inline Var row_sum(const Var& a) {
    const std::size_t rows = a->value.rows(), cols = a->value.cols();
    Tensor out = Tensor::matrix(rows, 1);
    for (std::size_t r = 0; r < rows; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < cols; ++c) acc += a->value.at(r, c);
        out[r] = acc;
    }
    return detail::make_op(std::move(out), {a}, [](Node& self) {
        Node& a = *self.parents[0];
        a.ensure_grad();
        const std::size_t rows = a.value.rows(), cols = a.value.cols();
        for (std::size_t r = 0; r < rows; ++r) {
            const double g = self.grad[r];
            for (std::size_t c = 0; c < cols; ++c) a.grad.at(r, c) += g;
        }
    });
}

/// Column-wise concatenation of equally tall matrices.
inline Var concat_cols(const std::vector<Var>& parts) {
    require(!parts.empty(), Errc::shape_mismatch, "concat of no tensors");
    const std::size_t rows = parts[0]->value.rows();
    std::size_t total = 0;
    for (const auto& p : parts) {
        require(p->value.rows() == rows, Errc::shape_mismatch, "concat row counts differ");
        total += p->value.cols();
    }
    Tensor out = Tensor::matrix(rows, total);
    std::size_t off = 0;
    for (const auto& p : parts) {
        const std::size_t pc = p->value.cols();
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < pc; ++c) out.at(r, off + c) = p->value.at(r, c);
        off += pc;
    }
    return detail::make_op(std::move(out), parts, [](Node& self) {
        const std::size_t rows = self.value.rows();
        std::size_t off = 0;
        for (auto& pv : self.parents) {
            Node& p = *pv;
            const std::size_t pc = p.value.cols();
            if (p.requires_grad) {
                p.ensure_grad();
                for (std::size_t r = 0; r < rows; ++r)
                    for (std::size_t c = 0; c < pc; ++c) p.grad.at(r, c) += self.grad.at(r, off + c);
            }
            off += pc;
        }
    });
}

// ---------------------------------------------------------------------------
// Row geometry
// ---------------------------------------------------------------------------

/// L2-normalize each row; all-zero rows pass through as zero rows and are
/// counted in *zero_rows when requested.
inline Var row_l2_normalize(const Var& a, int* zero_rows = nullptr) {
    const std::size_t rows = a->value.rows(), cols = a->value.cols();
    Tensor out = a->value;
    auto norms = std::make_shared<std::vector<double>>(rows, 0.0);
    int zeros = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < cols; ++c) s += out.at(r, c) * out.at(r, c);
        const double n = std::sqrt(s);
        (*norms)[r] = n;
        if (n == 0.0) {
            ++zeros;
            continue;
        }
        for (std::size_t c = 0; c < cols; ++c) out.at(r, c) /= n;
    }
    if (zero_rows) *zero_rows = zeros;
    return detail::make_op(std::move(out), {a}, [norms](Node& self) {
        Node& a = *self.parents[0];
        a.ensure_grad();
        const std::size_t rows = a.value.rows(), cols = a.value.cols();
        for (std::size_t r = 0; r < rows; ++r) {
            const double n = (*norms)[r];
            if (n == 0.0) continue;
            double dot = 0.0;
            for (std::size_t c = 0; c < cols; ++c) dot += self.grad.at(r, c) * self.value.at(r, c);
            for (std::size_t c = 0; c < cols; ++c)
                a.grad.at(r, c) += (self.grad.at(r, c) - self.value.at(r, c) * dot) / n;
        }
    });
}

/// Row-wise cosine similarity of two (B x D) matrices -> (B x 1).
/// Rows where either operand has zero norm yield similarity 0 and no gradient.
inline Var cosine_similarity_rows(const Var& a, const Var& b) {
    require(a->value.same_shape(b->value), Errc::shape_mismatch, "cosine shapes");
    const std::size_t rows = a->value.rows(), cols = a->value.cols();
    Tensor out = Tensor::matrix(rows, 1);
    auto an = std::make_shared<std::vector<double>>(rows);
    auto bn = std::make_shared<std::vector<double>>(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        double sa = 0.0, sb = 0.0, dot = 0.0;
        for (std::size_t c = 0; c < cols; ++c) {
            const double x = a->value.at(r, c), y = b->value.at(r, c);
            sa += x * x;
            sb += y * y;
            dot += x * y;
        }
        (*an)[r] = std::sqrt(sa);
        (*bn)[r] = std::sqrt(sb);
        out[r] = ((*an)[r] == 0.0 || (*bn)[r] == 0.0) ? 0.0 : dot / ((*an)[r] * (*bn)[r]);
    }
    return detail::make_op(std::move(out), {a, b}, [an, bn](Node& self) {
        Node& a = *self.parents[0];
        Node& b = *self.parents[1];
        const std::size_t rows = a.value.rows(), cols = a.value.cols();
        if (a.requires_grad) a.ensure_grad();
        if (b.requires_grad) b.ensure_grad();
        for (std::size_t r = 0; r < rows; ++r) {
            const double na = (*an)[r], nb = (*bn)[r];
            if (na == 0.0 || nb == 0.0) continue;
            const double g = self.grad[r];
            const double cosv = self.value[r];
            for (std::size_t c = 0; c < cols; ++c) {
                const double x = a.value.at(r, c), y = b.value.at(r, c);
                if (a.requires_grad) a.grad.at(r, c) += g * (y / (na * nb) - cosv * x / (na * na));
                if (b.requires_grad) b.grad.at(r, c) += g * (x / (na * nb) - cosv * y / (nb * nb));
            }
        }
    });
}

// ---------------------------------------------------------------------------
// Softmax family
// ---------------------------------------------------------------------------

inline Var softmax_rows(const Var& a, double tau = 1.0) {
    require(tau > 0.0, Errc::non_positive_temperature, "softmax temperature must be > 0");
    const std::size_t rows = a->value.rows(), cols = a->value.cols();
    Tensor out = Tensor::matrix(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        double mx = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < cols; ++c) mx = std::max(mx, a->value.at(r, c) / tau);
        double z = 0.0;
        for (std::size_t c = 0; c < cols; ++c) {
            const double e = std::exp(a->value.at(r, c) / tau - mx);
            out.at(r, c) = e;
            z += e;
        }
        for (std::size_t c = 0; c < cols; ++c) out.at(r, c) /= z;
    }
    return detail::make_op(std::move(out), {a}, [tau](Node& self) {
        Node& a = *self.parents[0];
        a.ensure_grad();
        const std::size_t rows = a.value.rows(), cols = a.value.cols();
        for (std::size_t r = 0; r < rows; ++r) {
            double dot = 0.0;
            for (std::size_t c = 0; c < cols; ++c) dot += self.grad.at(r, c) * self.value.at(r, c);
            for (std::size_t c = 0; c < cols; ++c)
                a.grad.at(r, c) += self.value.at(r, c) * (self.grad.at(r, c) - dot) / tau;
        }
    });
}

inline Var log_softmax_rows(const Var& a, double tau = 1.0) {
    require(tau > 0.0, Errc::non_positive_temperature, "softmax temperature must be > 0");
    const std::size_t rows = a->value.rows(), cols = a->value.cols();
    Tensor out = Tensor::matrix(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        double mx = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < cols; ++c) mx = std::max(mx, a->value.at(r, c) / tau);
        double z = 0.0;
        for (std::size_t c = 0; c < cols; ++c) z += std::exp(a->value.at(r, c) / tau - mx);
        const double lse = mx + std::log(z);
        for (std::size_t c = 0; c < cols; ++c) out.at(r, c) = a->value.at(r, c) / tau - lse;
    }
    return detail::make_op(std::move(out), {a}, [tau](Node& self) {
        Node& a = *self.parents[0];
        a.ensure_grad();
        const std::size_t rows = a.value.rows(), cols = a.value.cols();
        for (std::size_t r = 0; r < rows; ++r) {
            double gsum = 0.0;
            for (std::size_t c = 0; c < cols; ++c) gsum += self.grad.at(r, c);
            for (std::size_t c = 0; c < cols; ++c)
                a.grad.at(r, c) += (self.grad.at(r, c) - std::exp(self.value.at(r, c)) * gsum) / tau;
        }
    });
}

// ---------------------------------------------------------------------------
// Selection
// ---------------------------------------------------------------------------

/// out[r] = m[r, idx[r]] -> (B x 1). Used to pull per-sample label scores.
inline Var pick_per_row(const Var& m, const std::vector<int>& idx) {
    const std::size_t rows = m->value.rows(), cols = m->value.cols();
    require(idx.size() == rows, Errc::shape_mismatch, "pick_per_row index count");
    for (auto i : idx)
        require(i >= 0 && static_cast<std::size_t>(i) < cols, Errc::label_out_of_range,
                "row index out of range");
    Tensor out = Tensor::matrix(rows, 1);
    for (std::size_t r = 0; r < rows; ++r) out[r] = m->value.at(r, static_cast<std::size_t>(idx[r]));
    auto keep = std::make_shared<std::vector<int>>(idx);
    return detail::make_op(std::move(out), {m}, [keep](Node& self) {
        Node& m = *self.parents[0];
        m.ensure_grad();
        for (std::size_t r = 0; r < m.value.rows(); ++r)
            m.grad.at(r, static_cast<std::size_t>((*keep)[r])) += self.grad[r];
    });
}

/// Main diagonal of a square matrix -> (B x 1).
inline Var diag(const Var& m) {
    const std::size_t n = m->value.rows();
    require(m->value.cols() == n, Errc::shape_mismatch, "diag needs a square matrix");
    Tensor out = Tensor::matrix(n, 1);
    for (std::size_t r = 0; r < n; ++r) out[r] = m->value.at(r, r);
    return detail::make_op(std::move(out), {m}, [](Node& self) {
        Node& m = *self.parents[0];
        m.ensure_grad();
        for (std::size_t r = 0; r < m.value.rows(); ++r) m.grad.at(r, r) += self.grad[r];
    });
}

// ---------------------------------------------------------------------------
// Dropout
// ---------------------------------------------------------------------------

/// Inverted dropout. The mask is a pure function of the seed, so a forward
/// pass is reproducible and gradient checks stay exact. Identity when not
/// training or p == 0.
inline Var dropout(const Var& a, double p, bool train, std::uint64_t seed) {
    require(p >= 0.0 && p < 1.0, Errc::invalid_argument, "dropout rate must be in [0,1)");
    if (!train || p == 0.0) return a;
    Rng rng(seed);
    const double keep_scale = 1.0 / (1.0 - p);
    auto mask = std::make_shared<std::vector<double>>(a->value.size());
    Tensor out = a->value;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double m = uniform01(rng) < p ? 0.0 : keep_scale;
        (*mask)[i] = m;
        out[i] *= m;
    }
    return detail::make_op(std::move(out), {a}, [mask](Node& self) {
        Node& a = *self.parents[0];
        a.ensure_grad();
        for (std::size_t i = 0; i < a.grad.size(); ++i) a.grad[i] += self.grad[i] * (*mask)[i];
    });
}

// ---------------------------------------------------------------------------
// Backward
// ---------------------------------------------------------------------------

/// Reverse accumulation from a scalar objective. Gradients of every node
/// reachable from the objective are reset first; leaves outside the graph
/// keep whatever gradient they had (the trainer zeroes its parameters
/// before each step, so unreached parameters read as zero).
inline void backward(const Var& objective) {
    require(objective->value.size() == 1, Errc::non_scalar_objective,
            "backward requires a scalar objective");
    // Iterative post-order DFS over grad-requiring nodes; emission order is a
    // topological order of the DAG.
    std::vector<Node*> topo;
    std::unordered_set<Node*> seen;
    std::vector<std::pair<Node*, std::size_t>> stack;
    if (objective->requires_grad) {
        stack.emplace_back(objective.get(), 0);
        seen.insert(objective.get());
    }
    while (!stack.empty()) {
        auto& [node, next] = stack.back();
        if (next < node->parents.size()) {
            Node* p = node->parents[next++].get();
            if (p->requires_grad && seen.insert(p).second) stack.emplace_back(p, 0);
        } else {
            topo.push_back(node);
            stack.pop_back();
        }
    }
    for (Node* n : topo) {
        n->ensure_grad();
        n->grad.fill(0.0);
    }
    objective->ensure_grad();
    objective->grad[0] = 1.0;
    for (auto it = topo.rbegin(); it != topo.rend(); ++it)
        if ((*it)->backfn) (*it)->backfn(**it);
}

inline void zero_grad(const std::vector<Var>& params) {
    for (const auto& p : params) {
        p->ensure_grad();
        p->grad.fill(0.0);
    }
}

} // namespace pacc::autograd
