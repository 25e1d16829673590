#include "fracschrod/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fracschrod/quadrature.hpp"

namespace fracschrod::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
    // (-pi, pi]
    double r = std::remainder(a, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

double sin_nu_pi(double nu) {
    if (nu == 1.0 || nu == 2.0) return 0.0;
    return std::sin(nu * kPi);
}

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("time must be finite and >= 0");
}

// int_0^inf e^{-rt} r^{p-1+q} / D(r) dr with D(r) = (r^nu - rho e^{i nu pi})(r^nu - rho e^{-i nu pi}),
// evaluated in w = r^p, which turns r^{p-1} dr into dw / p.
cplx branch_cut_integral(cplx rho, double nu, double p, int q, double t, double abs_tol,
                         const KernelOptions& opt) {
    const double rho_abs = std::abs(rho);
    const double rho_arg = std::arg(rho);
    const cplx root_plus = std::polar(rho_abs, rho_arg + nu * kPi);
    const cplx root_minus = std::polar(rho_abs, rho_arg - nu * kPi);
    for (double ang : {rho_arg + nu * kPi, rho_arg - nu * kPi}) {
        if (std::abs(wrap_angle(ang)) < opt.root_margin) {
            throw DenominatorSingularity(
                "decay kernel: a root of the denominator lies within " + std::to_string(opt.root_margin) +
                " rad of the integration path (nu = " + std::to_string(nu) +
                "); the kernel has no unique value here");
        }
    }

    const double inv_p = 1.0 / p;
    const double x_exp = nu / p;
    auto integrand = [&](double w) -> cplx {
        if (w <= 0.0) {
            // r -> 0 limit; only finite when the total power is zero
            if (q == 0) return 1.0 / (p * root_plus * root_minus);
            return 0.0;
        }
        const double r = std::pow(w, inv_p);
        const double decay_arg = r * t;
        if (decay_arg > 745.0) return 0.0;
        const double x = (x_exp == 1.0) ? w : std::pow(w, x_exp);
        const cplx denom = (x - root_plus) * (x - root_minus);
        double num = std::exp(-decay_arg) / p;
        if (q != 0) num *= std::pow(r, q);
        return num / denom;
    };

    // Panel breaks at the root modulus and at the exponential scales.
    std::vector<double> breaks{0.0, std::pow(rho_abs, p / nu)};
    if (t > 0.0) {
        for (double m : {1.0, 8.0, 40.0}) breaks.push_back(std::pow(m / t, p));
    } else {
        breaks.push_back(1.0);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    const double w_end = 2.0 * breaks.back();
    breaks.push_back(w_end);

    quad::AdaptiveOptions qopt{0.5 * abs_tol, opt.max_segments};
    const cplx head = quad::integrate(integrand, breaks, qopt).value;

    // [w_end, inf) mapped onto (0, 1] by w = w_end / u
    auto tail_integrand = [&](double u) -> cplx {
        if (u <= 0.0) return 0.0;
        const double w = w_end / u;
        return integrand(w) * (w_end / (u * u));
    };
    const std::array<double, 2> unit{0.0, 1.0};
    const cplx tail = quad::integrate(tail_integrand, unit, qopt).value;
    return head + tail;
}

cplx kernel_prefactor(cplx rho, double nu) { return rho * sin_nu_pi(nu) / kPi; }

}  // namespace

FractionalOrder::FractionalOrder(double nu) : nu_(nu), regime_(Regime::SubUnit) {
    if (!std::isfinite(nu) || !(nu > 0.0) || nu > 2.0) {
        throw InvalidOrder("fractional order must satisfy 0 < nu <= 2 (got " + std::to_string(nu) + ")");
    }
    regime_ = nu <= 1.0 ? Regime::SubUnit : Regime::SuperUnit;
}

cplx unit_power(Ray ray, double nu) {
    const double angle = 0.5 * kPi * nu;
    return std::polar(1.0, ray == Ray::PlusI ? angle : -angle);
}

SeriesResult ml_series_detailed(cplx z, FractionalOrder order, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("ml_series: tol must be > 0");
    const double nu = order.value();
    cplx sum = 1.0;
    cplx zn = 1.0;
    int small_streak = 0;
    double last = 1.0;
    if (z == cplx{}) return {sum, 1, 0.0};
    for (int n = 1; n < kSeriesTermCap; ++n) {
        zn *= z;
        const double g = nu * n + 1.0;
        cplx term = (g < 170.0) ? zn / std::tgamma(g) : zn * std::exp(-std::lgamma(g));
        if (!std::isfinite(term.real()) || !std::isfinite(term.imag())) break;
        sum += term;
        last = std::abs(term);
        if (last <= tol * std::abs(sum)) {
            if (++small_streak == 2) return {sum, n + 1, last};
        } else {
            small_streak = 0;
        }
    }
    throw NonConvergence("ml_series: no convergence within " + std::to_string(kSeriesTermCap) +
                         " terms for |z| = " + std::to_string(std::abs(z)) +
                         "; use the oscillatory/decay decomposition");
}

cplx ml_series(cplx z, FractionalOrder order, double tol) { return ml_series_detailed(z, order, tol).value; }

cplx f_nu(const DecayKernelSpec& spec, double t, const KernelOptions& opt) {
    require_time(t);
    if (!(opt.tol > 0.0)) throw std::invalid_argument("f_nu: tol must be > 0");
    if (!std::isfinite(spec.rho.real()) || !std::isfinite(spec.rho.imag()))
        throw std::invalid_argument("f_nu: rho must be finite");
    const double nu = spec.order.value();
    const cplx pref = kernel_prefactor(spec.rho, nu);
    if (pref == cplx{}) return 0.0;
    const double tol = opt.tol / std::abs(pref);
    return pref * branch_cut_integral(spec.rho, nu, nu, 0, t, tol, opt);
}

cplx f_nu(const DecayKernelSpec& spec, double t, double tol) {
    KernelOptions opt;
    opt.tol = tol;
    return f_nu(spec, t, opt);
}

cplx f_nu_dt(const DecayKernelSpec& spec, double t, const KernelOptions& opt) {
    require_time(t);
    const double nu = spec.order.value();
    const cplx pref = kernel_prefactor(spec.rho, nu);
    if (pref == cplx{}) return 0.0;
    if (t == 0.0) throw SingularTime("d/dt F_nu is unbounded at t = 0");
    const double tol = opt.tol / std::abs(pref);
    return -pref * branch_cut_integral(spec.rho, nu, nu, 1, t, tol, opt);
}

MlDecomposition ml_complex_decomposed(double sigma, Ray ray, FractionalOrder order, double t,
                                      const KernelOptions& opt) {
    if (!order.sub_unit()) throw InvalidOrder("ml_complex_decomposed needs 0 < nu <= 1; use ml_two_ic");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be >= 0");
    require_time(t);
    if (sigma == 0.0) return {1.0, 0.0, 1.0};
    const double nu = order.value();
    const double freq = std::pow(sigma, 1.0 / nu);
    const double phase = (ray == Ray::PlusI ? 1.0 : -1.0) * freq * t;
    const cplx osc = std::polar(1.0 / nu, phase);
    const cplx decay = f_nu({sigma * unit_power(ray, nu), order}, t, opt);
    return {osc, decay, osc - decay};
}

MlDecomposition ml_complex_decomposed(double sigma, Ray ray, FractionalOrder order, double t, double tol) {
    KernelOptions opt;
    opt.tol = tol;
    return ml_complex_decomposed(sigma, ray, order, t, opt);
}

cplx ml_complex_decomposed_dt(double sigma, Ray ray, FractionalOrder order, double t,
                              const KernelOptions& opt) {
    if (!order.sub_unit()) throw InvalidOrder("ml_complex_decomposed_dt needs 0 < nu <= 1");
    require_time(t);
    if (sigma == 0.0) return 0.0;
    const double nu = order.value();
    const double sgn = ray == Ray::PlusI ? 1.0 : -1.0;
    const double freq = std::pow(sigma, 1.0 / nu);
    if (t == 0.0 && !order.is_one()) throw SingularTime("dA/dt diverges like t^(nu-1) at t = 0");
    const cplx osc_dt = cplx{0.0, sgn * freq} * std::polar(1.0 / nu, sgn * freq * t);
    if (order.is_one()) return osc_dt;
    return osc_dt - f_nu_dt({sigma * unit_power(ray, nu), order}, t, opt);
}

cplx two_ic_velocity_kernel(const DecayKernelSpec& spec, double t, const KernelOptions& opt) {
    require_time(t);
    const double nu = spec.order.value();
    if (spec.order.sub_unit()) throw InvalidOrder("two_ic_velocity_kernel needs 1 < nu <= 2");
    const cplx pref = kernel_prefactor(spec.rho, nu);
    if (pref == cplx{}) return 0.0;
    const double tol = opt.tol / std::abs(pref);
    // r^{nu-2} dr = dw / (nu - 1) with w = r^{nu-1}
    return pref * branch_cut_integral(spec.rho, nu, nu - 1.0, 0, t, tol, opt);
}

cplx ml_two_ic(double sigma, FractionalOrder order, cplx a0, cplx a1, double t, Ray ray,
               const KernelOptions& opt) {
    if (order.sub_unit()) throw InvalidOrder("ml_two_ic needs 1 < nu <= 2");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be >= 0");
    require_time(t);
    if (sigma == 0.0) return a0 + a1 * t;
    if (a0 == cplx{} && a1 == cplx{}) return 0.0;

    const double nu = order.value();
    const double freq = std::pow(sigma, 1.0 / nu);
    const double base = (ray == Ray::PlusI ? 0.5 : -0.5) * kPi;

    cplx res0{}, res1{};
    for (int k = -1; k <= 1; ++k) {
        const double ang = base + 2.0 * kPi * k / nu;
        if (std::abs(std::abs(ang) - kPi) < opt.root_margin) {
            throw DenominatorSingularity("ml_two_ic: a pole sits on the branch cut (nu = " +
                                         std::to_string(nu) + ", close to 4/3)");
        }
        if (std::abs(ang) >= kPi) continue;
        const cplx s = std::polar(freq, ang);
        const cplx e = std::exp(s * t) / nu;
        res0 += e;
        res1 += e / s;
    }

    const DecayKernelSpec spec{sigma * unit_power(ray, nu), order};
    cplx out{};
    if (a0 != cplx{}) out += a0 * (res0 - f_nu(spec, t, opt));
    if (a1 != cplx{}) out += a1 * (res1 + two_ic_velocity_kernel(spec, t, opt));
    return out;
}

}  // namespace fracschrod::specfun
