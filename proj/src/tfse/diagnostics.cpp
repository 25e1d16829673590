#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracschrod/errors.hpp"
#include "fracschrod/parallel.hpp"
#include "fracschrod/tfse.hpp"

namespace fracschrod::tfse {

using specfun::Ray;

namespace {

constexpr double kPi = std::numbers::pi;

void require_same_grid(const GridField& a, const GridField& b, const char* who) {
    if (a.positions.size() != b.positions.size() || a.values.size() != b.values.size()) {
        throw std::invalid_argument(std::string(who) + ": fields must share a grid");
    }
}

std::vector<cplx> d_dx(const std::vector<cplx>& f, double h) {
    const std::size_t n = f.size();
    std::vector<cplx> d(n);
    for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (f[k + 1] - f[k - 1]) / (2.0 * h);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return d;
}

std::vector<cplx> d2_dx2(const std::vector<cplx>& f, double h) {
    const std::size_t n = f.size();
    if (n < 4) throw std::invalid_argument("second derivative needs at least 4 points");
    const double h2 = h * h;
    std::vector<cplx> d(n);
    for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (f[k + 1] - 2.0 * f[k] + f[k - 1]) / h2;
    d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
    return d;
}

GridField like(const GridField& shape, std::vector<cplx> values) {
    GridField g;
    g.positions = shape.positions;
    g.values = std::move(values);
    g.domain = shape.domain;
    g.box_width = shape.box_width;
    return g;
}

template <class F>
cplx trapezoid(const std::vector<double>& x, F&& f) {
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    const double h = x[1] - x[0];
    cplx acc = 0.5 * (f(0) + f(n - 1));
    for (std::size_t k = 1; k + 1 < n; ++k) acc += f(k);
    return h * acc;
}

double modal_rate(const WellMode& mode, const RunConfig& cfg) { return mode.omega_n + cfg.alpha(); }

}  // namespace

double total_probability(const GridField& field) {
    if (field.values.size() != field.positions.size()) throw std::invalid_argument("total_probability: size mismatch");
    return trapezoid(field.positions, [&](std::size_t k) { return cplx{std::norm(field.values[k])}; }).real();
}

cplx integrate(const GridField& field) {
    if (field.values.size() != field.positions.size()) throw std::invalid_argument("integrate: size mismatch");
    return trapezoid(field.positions, [&](std::size_t k) { return field.values[k]; });
}

GridField FieldHistory::frame(std::size_t k) const {
    if (k >= frames.size()) throw std::out_of_range("FieldHistory::frame: index");
    GridField g;
    g.positions = positions;
    g.values = frames[k];
    g.domain = domain;
    g.box_width = box_width;
    return g;
}

GridField weighted_history(const FieldHistory& history, FractionalOrder order, std::size_t last) {
    if (!order.sub_unit()) throw InvalidOrder("weighted_history: 0 < nu <= 1 only");
    if (history.frames.empty()) throw std::invalid_argument("weighted_history: empty history");
    if (last == SIZE_MAX) last = history.frames.size() - 1;
    if (last >= history.frames.size()) throw std::out_of_range("weighted_history: frame index");
    if (order.is_one()) return history.frame(last);
    if (!(history.step > 0.0)) throw std::invalid_argument("weighted_history: step must be > 0");

    const std::size_t nx = history.positions.size();
    for (const auto& f : history.frames) {
        if (f.size() != nx) throw std::invalid_argument("weighted_history: frame size mismatch");
    }
    const double alpha = 1.0 - order.value();
    std::vector<cplx> out(nx);
    parallel_for(nx, [&](std::size_t j) {
        std::vector<cplx> column(last + 1);
        for (std::size_t k = 0; k <= last; ++k) column[k] = history.frames[k][j];
        out[j] = fraccalc::l1_caputo_at(column, history.step, alpha, last);
    });
    GridField g;
    g.positions = history.positions;
    g.values = std::move(out);
    g.domain = history.domain;
    g.box_width = history.box_width;
    return g;
}

GridField initial_caputo(const GridField& psi0, const RunConfig& cfg) {
    const std::vector<cplx> dxx = d2_dx2(psi0.values, psi0.spacing());
    const cplx inv = 1.0 / specfun::unit_power(Ray::PlusI, cfg.nu.value());
    std::vector<cplx> out(dxx.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = (-cfg.beta() * dxx[k] + cfg.alpha() * psi0.values[k]) * inv;
    return like(psi0, std::move(out));
}

GridField probability_current(const GridField& psi, const GridField& weighted, const RunConfig& cfg) {
    require_same_grid(psi, weighted, "probability_current");
    const double nu = cfg.nu.value();
    const cplx cp = cfg.beta() / specfun::unit_power(Ray::PlusI, nu);
    const cplx cm = cfg.beta() / specfun::unit_power(Ray::MinusI, nu);
    const std::vector<cplx> dw = d_dx(weighted.values, psi.spacing());
    std::vector<cplx> j(psi.values.size());
    for (std::size_t k = 0; k < j.size(); ++k) {
        j[k] = cp * dw[k] * std::conj(psi.values[k]) + cm * psi.values[k] * std::conj(dw[k]);
    }
    return like(psi, std::move(j));
}

GridField source_term(const GridField& psi, const GridField& weighted, const GridField& initial, double t,
                      const RunConfig& cfg) {
    require_same_grid(psi, weighted, "source_term");
    const double nu = cfg.nu.value();
    if (!cfg.nu.is_one()) {
        require_same_grid(psi, initial, "source_term");
        if (!(t > 0.0)) throw SingularTime("source_term: the t^(nu-1) factor is singular at t = 0");
    }
    const cplx cp = 1.0 / specfun::unit_power(Ray::PlusI, nu);
    const cplx cm = 1.0 / specfun::unit_power(Ray::MinusI, nu);
    const double beta = cfg.beta();
    const double alpha = cfg.alpha();
    const double memory = cfg.nu.is_one() ? 0.0 : std::pow(t, nu - 1.0) / std::tgamma(nu);
    const double h = psi.spacing();
    const std::vector<cplx> dw = d_dx(weighted.values, h);
    const std::vector<cplx> dp = d_dx(psi.values, h);
    std::vector<cplx> s(psi.values.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        const cplx p = psi.values[k];
        const cplx w = weighted.values[k];
        cplx v = beta * (cp * dw[k] * std::conj(dp[k]) + cm * std::conj(dw[k]) * dp[k]);
        if (alpha != 0.0) v += alpha * (cp * w * std::conj(p) + cm * std::conj(w) * p);
        if (memory != 0.0) {
            const cplx m = initial.values[k];
            v += memory * (std::conj(p) * m + p * std::conj(m));
        }
        s[k] = v;
    }
    if (cfg.nu.is_one()) std::fill(s.begin(), s.end(), cplx{0.0});
    return like(psi, std::move(s));
}

cplx energy_average(const GridField& psi, const GridField& weighted) {
    require_same_grid(psi, weighted, "energy_average");
    return trapezoid(psi.positions, [&](std::size_t k) { return std::conj(psi.values[k]) * weighted.values[k]; });
}

// ---- recast residual -------------------------------------------------------

fraccalc::OperatorResidual hamiltonian_recast_residual(const ModalHistory& history, const RunConfig& cfg,
                                                       const fraccalc::ResidualWindow& window) {
    const double nu = cfg.nu.value();
    const double h = history.step;
    const fraccalc::SampledSignal sig(h, history.amplitudes);
    const std::size_t n = sig.size();
    const cplx c = (history.eigenvalue + cfg.alpha()) / specfun::unit_power(Ray::PlusI, nu);
    const fraccalc::SampledSignal dy = fraccalc::first_derivative(sig);
    std::vector<cplx> r(n, 0.0);

    if (cfg.nu.is_one()) {
        for (std::size_t k = 0; k < n; ++k) r[k] = dy[k] - c * sig[k];
    } else if (cfg.nu.sub_unit()) {
        const fraccalc::SampledSignal w = fraccalc::caputo_derivative(sig, FractionalOrder(1.0 - nu));
        const double g = std::tgamma(nu);
        for (std::size_t k = 1; k < n; ++k) {
            const double t = sig.time(k);
            r[k] = dy[k] - c * (w[k] + sig[0] * std::pow(t, nu - 1.0) / g);
        }
    } else {
        const fraccalc::SampledSignal in = fraccalc::rl_integral(sig, nu - 1.0);
        for (std::size_t k = 0; k < n; ++k) r[k] = dy[k] - (c * in[k] + history.initial_velocity);
    }
    return fraccalc::make_residual(r, h, window);
}

fraccalc::OperatorResidual hamiltonian_recast_residual(std::span<const ModalHistory> modes, const RunConfig& cfg,
                                                       const fraccalc::ResidualWindow& window) {
    if (modes.empty()) throw std::invalid_argument("hamiltonian_recast_residual: no modes");
    std::vector<fraccalc::OperatorResidual> parts(modes.size());
    parallel_for(modes.size(), [&](std::size_t m) { parts[m] = hamiltonian_recast_residual(modes[m], cfg, window); });
    fraccalc::OperatorResidual out;
    out.window_begin = parts.front().window_begin;
    out.per_node = parts.front().per_node;
    for (const auto& p : parts) {
        if (p.per_node.size() != out.per_node.size()) {
            throw std::invalid_argument("hamiltonian_recast_residual: modes must share a time grid");
        }
        for (std::size_t k = 0; k < p.per_node.size(); ++k) out.per_node[k] = std::max(out.per_node[k], p.per_node[k]);
    }
    double sq = 0.0;
    for (double v : out.per_node) {
        out.max_abs = std::max(out.max_abs, v);
        sq += v * v;
    }
    out.l2 = std::sqrt(modes.front().step * sq);
    return out;
}

// ---- probability growth ----------------------------------------------------

namespace {

double period(const WellMode& mode, const RunConfig& cfg) {
    const double rate = modal_rate(mode, cfg);
    if (!(rate > 0.0)) throw std::invalid_argument("well mode has zero rate; no oscillation period");
    return 2.0 * kPi / std::pow(rate, 1.0 / cfg.nu.value());
}

}  // namespace

ProbabilityEnvelope probability_envelope(const WellMode& mode, const RunConfig& cfg, double t_begin, double t_end,
                                         std::size_t windows, std::size_t samples_per_period,
                                         const KernelOptions& opt) {
    if (!cfg.nu.sub_unit()) throw InvalidOrder("probability_envelope: 0 < nu <= 1 only");
    if (windows < 2) throw std::invalid_argument("probability_envelope: need at least 2 windows");
    if (samples_per_period < 4) throw std::invalid_argument("probability_envelope: need at least 4 samples");
    const double p = period(mode, cfg);
    if (!(t_begin > 0.0) || !(t_end - p > t_begin)) {
        throw std::invalid_argument("probability_envelope: need 0 < t_begin < t_end - period");
    }
    const double nu = cfg.nu.value();
    const double limit = 1.0 / (nu * nu);
    ProbabilityEnvelope env;
    env.window_start.resize(windows);
    env.max_gap.resize(windows);
    env.lower.resize(windows);
    const double ratio = std::log((t_end - p) / t_begin) / static_cast<double>(windows - 1);
    for (std::size_t w = 0; w < windows; ++w) env.window_start[w] = t_begin * std::exp(ratio * static_cast<double>(w));

    const std::size_t total = windows * (samples_per_period + 1);
    std::vector<double> prob(total);
    parallel_for(total, [&](std::size_t idx) {
        const std::size_t w = idx / (samples_per_period + 1);
        const std::size_t s = idx % (samples_per_period + 1);
        const double t = env.window_start[w] + p * static_cast<double>(s) / static_cast<double>(samples_per_period);
        prob[idx] = std::norm(well_amplitude(mode, cfg, t, opt));
    });
    for (std::size_t w = 0; w < windows; ++w) {
        double gap = 0.0;
        double low = INFINITY;
        for (std::size_t s = 0; s <= samples_per_period; ++s) {
            const double v = prob[w * (samples_per_period + 1) + s];
            gap = std::max(gap, std::abs(v - limit));
            low = std::min(low, v);
        }
        env.max_gap[w] = gap;
        env.lower[w] = low;
    }

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double m = static_cast<double>(windows);
    for (std::size_t w = 0; w < windows; ++w) {
        const double x = std::log(env.window_start[w] + 0.5 * p);
        const double y = std::log(env.max_gap[w]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    env.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return env;
}

std::vector<double> lower_envelope(const WellMode& mode, const RunConfig& cfg, std::size_t periods,
                                   std::size_t samples_per_period, const KernelOptions& opt) {
    if (!cfg.nu.sub_unit()) throw InvalidOrder("lower_envelope: 0 < nu <= 1 only");
    if (samples_per_period < 4) throw std::invalid_argument("lower_envelope: need at least 4 samples");
    const double p = period(mode, cfg);
    const std::size_t total = periods * samples_per_period + 1;
    std::vector<double> prob(total);
    parallel_for(total, [&](std::size_t idx) {
        const double t = p * static_cast<double>(idx) / static_cast<double>(samples_per_period);
        prob[idx] = std::norm(well_amplitude(mode, cfg, t, opt));
    });
    std::vector<double> low(periods);
    for (std::size_t k = 0; k < periods; ++k) {
        const auto first = prob.begin() + static_cast<std::ptrdiff_t>(k * samples_per_period);
        low[k] = *std::min_element(first, first + static_cast<std::ptrdiff_t>(samples_per_period + 1));
    }
    return low;
}

std::vector<ContinuitySample> well_continuity(const WellMode& mode, const RunConfig& cfg,
                                              std::span<const double> times, double step, std::size_t intervals,
                                              const KernelOptions& opt) {
    if (!cfg.nu.sub_unit()) throw InvalidOrder("well_continuity: 0 < nu <= 1 only");
    if (!(step > 0.0)) throw std::invalid_argument("well_continuity: step must be > 0");
    if (times.empty()) return {};
    std::vector<std::size_t> index(times.size());
    std::size_t top = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double k = std::round(times[i] / step);
        if (!(k >= 1.0)) throw SingularTime("well_continuity: times must be at least one step past 0");
        index[i] = static_cast<std::size_t>(k);
        top = std::max(top, index[i]);
    }

    constexpr double kMaxHistoryNodes = 1e7;
    if (static_cast<double>(top + 2) * static_cast<double>(intervals + 1) > kMaxHistoryNodes) {
        throw std::invalid_argument("well_continuity: history of " + std::to_string(top + 2) + " frames x " +
                                    std::to_string(intervals + 1) +
                                    " nodes is too large; shorten the time range or raise the step");
    }
    std::vector<cplx> amp(top + 2);
    parallel_for(amp.size(), [&](std::size_t k) {
        amp[k] = well_amplitude(mode, cfg, static_cast<double>(k) * step, opt);
    });

    const GridField base = well_field(mode, 1.0, intervals);
    FieldHistory hist;
    hist.positions = base.positions;
    hist.domain = Domain::Box;
    hist.box_width = mode.a;
    hist.step = step;
    hist.frames.resize(amp.size());
    for (std::size_t k = 0; k < amp.size(); ++k) {
        hist.frames[k].resize(base.values.size());
        for (std::size_t j = 0; j < base.values.size(); ++j) hist.frames[k][j] = amp[k] * base.values[j];
    }
    const GridField init = initial_caputo(hist.frame(0), cfg);

    std::vector<ContinuitySample> out(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const std::size_t m = index[i];
        const double t = static_cast<double>(m) * step;
        const GridField psi = hist.frame(m);
        const GridField w = weighted_history(hist, cfg.nu, m);
        const GridField s = source_term(psi, w, init, t, cfg);
        const double ahead = total_probability(hist.frame(m + 1));
        const double behind = total_probability(hist.frame(m - 1));
        out[i] = {t, (ahead - behind) / (2.0 * step), integrate(s).real()};
    }
    return out;
}

}  // namespace fracschrod::tfse
