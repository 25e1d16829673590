#pragma once

// Fractional integrals and derivatives of uniformly sampled signals.
//
//   rl_integral        product-trapezoid rule, kernel moments exact per panel
//   caputo_derivative  L1 scheme, O(h^{2-nu}) for smooth data; orders in (1,2]
//                      go through the L1 scheme of order nu-1 applied to f'
//   rl_derivative      d/dt of rl_integral(f, 1 - nu)
//
// Identity residuals compare both sides of the operator identities used to
// recast the fractional evolution equation with a first-order time derivative.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fracschrod/specfun.hpp"

namespace fracschrod::fraccalc {

using cplx = std::complex<double>;
using specfun::FractionalOrder;

/// Complex samples on t_k = k * step, k = 0..n-1, n >= 3.
class SampledSignal {
public:
    SampledSignal(double step, std::vector<cplx> values);

    template <class F>
    static SampledSignal sample(F&& f, double t_end, std::size_t intervals) {
        const double h = t_end / static_cast<double>(intervals);
        std::vector<cplx> v(intervals + 1);
        for (std::size_t k = 0; k <= intervals; ++k) v[k] = f(static_cast<double>(k) * h);
        return SampledSignal(h, std::move(v));
    }

    double step() const { return step_; }
    std::size_t size() const { return values_.size(); }
    double time(std::size_t k) const { return static_cast<double>(k) * step_; }
    const std::vector<cplx>& values() const { return values_; }
    cplx operator[](std::size_t k) const { return values_[k]; }

private:
    double step_;
    std::vector<cplx> values_;
};

struct OperatorResidual {
    double max_abs = 0.0;
    double l2 = 0.0;                 // sqrt(h * sum |r_k|^2) over the window
    std::size_t window_begin = 0;    // first node included in the norms
    std::vector<double> per_node;    // |r_k| for every node; zero before the window
};

/// I^mu f, mu in (0, 1].
SampledSignal rl_integral(const SampledSignal& sig, double mu);

/// Caputo D^nu f. For nu in (0,1) the L1 scheme; nu == 1 is the first
/// derivative; nu in (1,2] applies the order nu-1 scheme to f'.
SampledSignal caputo_derivative(const SampledSignal& sig, FractionalOrder order);

/// Caputo derivative of order alpha in (0,1) at node n only, O(n) work.
cplx l1_caputo_at(std::span<const cplx> values, double step, double alpha, std::size_t n);

/// Riemann-Liouville D^nu f = d/dt I^{1-nu} f for 0 < nu <= 1.
SampledSignal rl_derivative(const SampledSignal& sig, FractionalOrder order);

/// Second-order finite-difference first derivative (one-sided at the ends).
SampledSignal first_derivative(const SampledSignal& sig);

struct ResidualWindow {
    std::optional<double> t_begin;   // default: 5 h
    std::optional<double> t_end;     // default: last node
};

/// D^{1-nu} D^nu y - [y' - (D^nu y)(0) t^{nu-1} / Gamma(nu)], 0 < nu < 1.
/// initial_caputo is (D^nu y)(0); it is zero for data with bounded y'.
OperatorResidual check_derivative_composition(const SampledSignal& sig, FractionalOrder order,
                                      std::optional<cplx> initial_caputo = std::nullopt,
                                      const ResidualWindow& window = {});

/// I^{nu-1} D^nu f - [f' - f'(0)], 1 < nu <= 2.
OperatorResidual check_integral_composition(const SampledSignal& sig, FractionalOrder order,
                                     const ResidualWindow& window = {});

/// Packs nodewise residuals into norms over the window.
OperatorResidual make_residual(std::span<const cplx> residual, double step, const ResidualWindow& window);

}  // namespace fracschrod::fraccalc
