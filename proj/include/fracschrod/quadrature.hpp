#pragma once

// Globally adaptive Gauss-Kronrod (10/21) quadrature for complex-valued
// integrands on a list of finite panels. Node tables come from Boost.Math.

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fracschrod/errors.hpp"

namespace fracschrod::quad {

using cplx = std::complex<double>;

struct AdaptiveResult {
    cplx value{};
    double error = 0.0;
    int segments = 0;
    bool converged = false;
};

struct AdaptiveOptions {
    double abs_tol = 1e-12;
    int max_segments = 4000;
};

namespace detail {

struct Segment {
    double a, b;
    cplx value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk21(F& f, double a, double b) {
    using K = boost::math::quadrature::gauss_kronrod<double, 21>;
    using G = boost::math::quadrature::gauss<double, 10>;
    const auto& x = K::abscissa();
    const auto& wk = K::weights();
    const auto& wg = G::weights();

    const double c = 0.5 * (a + b);
    const double r = 0.5 * (b - a);
    // x[0] == 0 for the odd Kronrod rule; Gauss-10 uses the odd-index nodes.
    cplx fc = f(c);
    cplx kron = wk[0] * fc;
    cplx gauss{};
    for (std::size_t i = 1; i < x.size(); ++i) {
        const cplx s = f(c - r * x[i]) + f(c + r * x[i]);
        kron += wk[i] * s;
        if (i % 2 == 1) gauss += wg[i / 2] * s;
    }
    kron *= r;
    gauss *= r;
    return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace detail

// Integrates f over the union of [breaks[i], breaks[i+1]]. Throws
// QuadratureFailure when the segment budget is exhausted.
template <class F>
AdaptiveResult integrate(F&& f, std::span<const double> breaks, const AdaptiveOptions& opt) {
    std::priority_queue<detail::Segment> heap;
    AdaptiveResult out;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        heap.push(detail::gk21(f, breaks[i], breaks[i + 1]));
    }
    auto totals = [&heap] {
        // priority_queue has no iteration; copy is fine at these sizes
        auto copy = heap;
        cplx v{};
        double e = 0.0;
        while (!copy.empty()) {
            v += copy.top().value;
            e += copy.top().error;
            copy.pop();
        }
        return std::pair{v, e};
    };

    double err_sum = 0.0;
    {
        auto [v, e] = totals();
        out.value = v;
        err_sum = e;
    }
    // Running totals are updated incrementally; a full recount every 64
    // steps keeps the accumulated rounding in check.
    int steps = 0;
    while (err_sum > opt.abs_tol) {
        if (static_cast<int>(heap.size()) >= opt.max_segments || heap.empty()) {
            out.error = err_sum;
            out.segments = static_cast<int>(heap.size());
            throw QuadratureFailure("adaptive quadrature: segment budget exhausted (error estimate " +
                                    std::to_string(err_sum) + ")");
        }
        detail::Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Cannot split further in double precision; accept this piece.
            out.error = err_sum;
            out.segments = static_cast<int>(heap.size()) + 1;
            heap.push({worst.a, worst.b, worst.value, 0.0});
            err_sum -= worst.error;
            continue;
        }
        detail::Segment left = detail::gk21(f, worst.a, mid);
        detail::Segment right = detail::gk21(f, mid, worst.b);
        out.value += left.value + right.value - worst.value;
        err_sum += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if (++steps % 64 == 0) {
            auto [v, e] = totals();
            out.value = v;
            err_sum = e;
        }
    }
    auto [v, e] = totals();
    out.value = v;
    out.error = e;
    out.segments = static_cast<int>(heap.size());
    out.converged = true;
    return out;
}

}  // namespace fracschrod::quad
