#include "fracschrod/fraccalc.hpp"

#include <cmath>
#include <stdexcept>

namespace fracschrod::fraccalc {

SampledSignal::SampledSignal(double step, std::vector<cplx> values) : step_(step), values_(std::move(values)) {
    if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("SampledSignal: step must be > 0");
    if (values_.size() < 3) throw std::invalid_argument("SampledSignal: need at least 3 nodes");
}

namespace {

// b_k = (k+1)^{1-alpha} - k^{1-alpha}
std::vector<double> l1_weights(std::size_t n, double alpha) {
    std::vector<double> b(n);
    const double e = 1.0 - alpha;
    double prev = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double next = std::pow(static_cast<double>(k + 1), e);
        b[k] = next - prev;
        prev = next;
    }
    return b;
}

std::vector<cplx> l1_scheme(const std::vector<cplx>& f, double h, double alpha) {
    const std::size_t n = f.size();
    std::vector<cplx> diff(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) diff[j] = f[j + 1] - f[j];
    const std::vector<double> b = l1_weights(n, alpha);
    const double scale = std::pow(h, -alpha) / std::tgamma(2.0 - alpha);
    std::vector<cplx> out(n, 0.0);
    for (std::size_t m = 1; m < n; ++m) {
        cplx acc{};
        for (std::size_t j = 0; j < m; ++j) acc += b[m - 1 - j] * diff[j];
        out[m] = scale * acc;
    }
    return out;
}

std::vector<cplx> derivative_values(const std::vector<cplx>& f, double h) {
    const std::size_t n = f.size();
    std::vector<cplx> d(n);
    for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (f[k + 1] - f[k - 1]) / (2.0 * h);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return d;
}

std::size_t window_index(double t, double h) {
    const double k = std::ceil(t / h - 1e-9);
    return k <= 0.0 ? 0 : static_cast<std::size_t>(k);
}

}  // namespace

SampledSignal first_derivative(const SampledSignal& sig) {
    return SampledSignal(sig.step(), derivative_values(sig.values(), sig.step()));
}

SampledSignal rl_integral(const SampledSignal& sig, double mu) {
    if (!(mu > 0.0) || mu > 1.0) throw std::invalid_argument("rl_integral: mu must lie in (0, 1]");
    const auto& f = sig.values();
    const std::size_t n = f.size();
    const double h = sig.step();
    const double e = mu + 1.0;
    // c_k = (k+1)^{mu+1} - 2 k^{mu+1} + (k-1)^{mu+1} for k >= 1
    std::vector<double> p(n + 1);
    for (std::size_t k = 0; k <= n; ++k) p[k] = std::pow(static_cast<double>(k), e);
    const double scale = std::pow(h, mu) / std::tgamma(mu + 2.0);
    std::vector<cplx> out(n, 0.0);
    for (std::size_t m = 1; m < n; ++m) {
        const double dm = static_cast<double>(m);
        cplx acc = (p[m - 1] - (dm - 1.0 - mu) * std::pow(dm, mu)) * f[0];
        for (std::size_t j = 1; j < m; ++j) {
            const std::size_t k = m - j;
            acc += (p[k + 1] - 2.0 * p[k] + p[k - 1]) * f[j];
        }
        acc += f[m];
        out[m] = scale * acc;
    }
    return SampledSignal(h, std::move(out));
}

cplx l1_caputo_at(std::span<const cplx> values, double step, double alpha, std::size_t n) {
    if (!(alpha > 0.0) || alpha >= 1.0) throw std::invalid_argument("l1_caputo_at: alpha must lie in (0, 1)");
    if (n >= values.size()) throw std::out_of_range("l1_caputo_at: node index");
    if (n == 0) return 0.0;
    const double e = 1.0 - alpha;
    cplx acc{};
    for (std::size_t j = 0; j < n; ++j) {
        const double k = static_cast<double>(n - 1 - j);
        acc += (std::pow(k + 1.0, e) - std::pow(k, e)) * (values[j + 1] - values[j]);
    }
    return std::pow(step, -alpha) / std::tgamma(2.0 - alpha) * acc;
}

SampledSignal caputo_derivative(const SampledSignal& sig, FractionalOrder order) {
    const double nu = order.value();
    const double h = sig.step();
    if (nu < 1.0) return SampledSignal(h, l1_scheme(sig.values(), h, nu));
    auto d1 = derivative_values(sig.values(), h);
    if (nu == 1.0) return SampledSignal(h, std::move(d1));
    if (nu == 2.0) return SampledSignal(h, derivative_values(d1, h));
    return SampledSignal(h, l1_scheme(d1, h, nu - 1.0));
}

SampledSignal rl_derivative(const SampledSignal& sig, FractionalOrder order) {
    if (!order.sub_unit()) throw InvalidOrder("rl_derivative: 0 < nu <= 1 only");
    if (order.is_one()) return first_derivative(sig);
    return first_derivative(rl_integral(sig, 1.0 - order.value()));
}

OperatorResidual make_residual(std::span<const cplx> residual, double step, const ResidualWindow& window) {
    OperatorResidual out;
    const std::size_t n = residual.size();
    out.window_begin = window_index(window.t_begin.value_or(5.0 * step), step);
    std::size_t end = n;
    if (window.t_end) end = std::min(n, static_cast<std::size_t>(std::floor(*window.t_end / step + 1e-9)) + 1);
    out.per_node.assign(n, 0.0);
    double sq = 0.0;
    for (std::size_t k = out.window_begin; k < end; ++k) {
        const double a = std::abs(residual[k]);
        out.per_node[k] = a;
        out.max_abs = std::max(out.max_abs, a);
        sq += a * a;
    }
    out.l2 = std::sqrt(step * sq);
    return out;
}

OperatorResidual check_derivative_composition(const SampledSignal& sig, FractionalOrder order,
                                      std::optional<cplx> initial_caputo, const ResidualWindow& window) {
    const double nu = order.value();
    if (!(nu < 1.0)) throw InvalidOrder("check_derivative_composition: 0 < nu < 1 only");
    const double h = sig.step();
    const std::size_t n = sig.size();

    std::vector<cplx> inner = l1_scheme(sig.values(), h, nu);
    const cplx c0 = initial_caputo.value_or(0.0);
    inner[0] = c0;
    const std::vector<cplx> outer = l1_scheme(inner, h, 1.0 - nu);
    const std::vector<cplx> dy = derivative_values(sig.values(), h);
    const double g = std::tgamma(nu);

    std::vector<cplx> r(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) {
        const double t = static_cast<double>(k) * h;
        r[k] = outer[k] - (dy[k] - c0 * std::pow(t, nu - 1.0) / g);
    }
    return make_residual(r, h, window);
}

OperatorResidual check_integral_composition(const SampledSignal& sig, FractionalOrder order, const ResidualWindow& window) {
    if (order.sub_unit()) throw InvalidOrder("check_integral_composition: 1 < nu <= 2 only");
    const double h = sig.step();
    const SampledSignal dnu = caputo_derivative(sig, order);
    const SampledSignal lhs = rl_integral(dnu, order.value() - 1.0);
    const std::vector<cplx> dy = derivative_values(sig.values(), h);
    std::vector<cplx> r(sig.size());
    for (std::size_t k = 0; k < sig.size(); ++k) r[k] = lhs[k] - (dy[k] - dy[0]);
    return make_residual(r, h, window);
}

}  // namespace fracschrod::fraccalc
