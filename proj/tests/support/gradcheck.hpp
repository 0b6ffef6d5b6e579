#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "pacc/autograd.hpp"

namespace testsupport {

// Independent central finite-difference oracle: perturbs raw parameter
// storage and re-evaluates the objective closure, never touching the
// reverse-mode path it is checking.
inline std::vector<std::vector<double>> fd_gradients(
    const std::function<double()>& eval, const std::vector<pacc::autograd::Var>& params,
    double h = 1e-5) {
    std::vector<std::vector<double>> grads;
    grads.reserve(params.size());
    for (const auto& p : params) {
        std::vector<double> g(p->value.size());
        for (std::size_t i = 0; i < p->value.size(); ++i) {
            const double orig = p->value[i];
            p->value[i] = orig + h;
            const double fp = eval();
            p->value[i] = orig - h;
            const double fm = eval();
            p->value[i] = orig;
            g[i] = (fp - fm) / (2.0 * h);
        }
        grads.push_back(std::move(g));
    }
    return grads;
}

inline double rel_error(double a, double b, double floor = 1e-8) {
    const double denom = std::max({std::fabs(a), std::fabs(b), floor});
    return std::fabs(a - b) / denom;
}

/// Max elementwise relative error between analytic and FD gradients.
inline double max_grad_rel_error(const std::function<double()>& eval,
                                 const std::function<pacc::autograd::Var()>& build,
                                 const std::vector<pacc::autograd::Var>& params,
                                 double h = 1e-5, double floor = 1e-8) {
    pacc::autograd::zero_grad(params);
    auto objective = build();
    pacc::autograd::backward(objective);
    auto fd = fd_gradients(eval, params, h);
    double worst = 0.0;
    for (std::size_t k = 0; k < params.size(); ++k) {
        params[k]->ensure_grad();
        for (std::size_t i = 0; i < fd[k].size(); ++i)
            worst = std::max(worst, rel_error(params[k]->grad[i], fd[k][i], floor));
    }
    return worst;
}

} // namespace testsupport
