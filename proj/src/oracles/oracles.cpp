#include "fracschrod/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace fracschrod::oracles {

namespace {

constexpr double kPi = std::numbers::pi;

// i^nu on the principal branch, computed locally.
cplx i_pow(double nu) { return std::polar(1.0, 0.5 * kPi * nu); }

struct ContourPole {
    cplx u;              // preimage of the pole under s = mu (1 + iu)^2
    bool left_of_path;   // inside the parabola's opening, not swept by the deformation
};

ContourPole locate_pole(double omega, double mu) {
    const cplx s0{0.0, omega};
    const cplx root = std::sqrt(s0 / mu);  // principal root has Re > 0, like 1 + iu
    const cplx u = (root - 1.0) / cplx{0.0, 1.0};
    const bool left = 0.0 < mu - omega * omega / (4.0 * mu);
    return {u, left};
}

}  // namespace

void InversionSpec::validate() const {
    if (!(sigma > 0.0)) throw std::invalid_argument("InversionSpec: sigma must be > 0");
    if (nodes < 16) throw std::invalid_argument("InversionSpec: node count must be >= 16");
    if (!(scale > 0.0)) throw std::invalid_argument("InversionSpec: scale must be > 0");
    if (!(clash_margin >= 0.0)) throw std::invalid_argument("InversionSpec: clash_margin must be >= 0");
}

InversionSpec auto_inversion_spec(double sigma, specfun::FractionalOrder order, double t) {
    InversionSpec best{sigma, order};
    double best_gap = -1.0;
    const double omega = std::pow(sigma, 1.0 / order.value());
    for (double scale : {4.0, 2.0, 8.0, 1.0}) {
        const double gap = std::abs(locate_pole(omega, scale / t).u.imag());
        if (gap > best_gap + 0.05) {
            best_gap = gap;
            best.scale = scale;
        }
    }
    return best;
}

cplx residue_term(double sigma, specfun::FractionalOrder order, double t) {
    const double nu = order.value();
    return std::polar(1.0 / nu, std::pow(sigma, 1.0 / nu) * t);
}

cplx laplace_invert_ml(const InversionSpec& spec, double t) {
    spec.validate();
    if (!(t > 0.0)) throw std::invalid_argument("laplace_invert_ml: t must be > 0");
    const double nu = spec.order.value();
    const cplx c = spec.sigma * i_pow(nu);
    const double omega = std::pow(spec.sigma, 1.0 / nu);
    const double mu = spec.scale / t;

    const ContourPole pole = locate_pole(omega, mu);
    if (std::abs(pole.u.imag()) < spec.clash_margin) {
        throw ContourClash("laplace_invert_ml: pole preimage at Im u = " + std::to_string(pole.u.imag()) +
                           " is inside the safety margin; change the contour scale");
    }

    const cplx iu_unit{0.0, 1.0};
    auto integrand = [&](double u) -> cplx {
        const cplx one_iu = 1.0 + iu_unit * u;
        const cplx s = mu * one_iu * one_iu;
        const cplx g = std::pow(s, nu - 1.0) / (std::pow(s, nu) - c);
        return std::exp(s * t) * g * one_iu;
    };

    // e^{mu t (1 - u^2)} has dropped by e^{-40} at |u| = half_width.
    const double half_width = std::sqrt(1.0 + 40.0 / spec.scale);
    auto trapezoid = [&](int n) {
        const double h = 2.0 * half_width / n;
        cplx acc{};
        for (int k = 0; k <= n; ++k) {
            const double w = (k == 0 || k == n) ? 0.5 : 1.0;
            acc += w * integrand(-half_width + k * h);
        }
        return acc * h * mu / kPi;
    };

    int n = spec.nodes;
    cplx prev = trapezoid(n);
    cplx curr = prev;
    bool agreed = false;
    while (n < spec.max_nodes) {
        n *= 2;
        curr = trapezoid(n);
        if (std::abs(curr - prev) <= spec.agreement * std::max(1.0, std::abs(curr))) {
            agreed = true;
            break;
        }
        prev = curr;
    }
    if (!agreed) throw NonConvergence("laplace_invert_ml: node doubling did not settle");
    if (!pole.left_of_path) curr += residue_term(spec.sigma, spec.order, t);
    return curr;
}

cplx hankel_branch_cut(double sigma, specfun::FractionalOrder order, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("hankel_branch_cut: t must be >= 0");
    const double nu = order.value();
    if (sigma == 0.0 || nu == 1.0) return 0.0;
    const cplx c = sigma * i_pow(nu);
    const double sn = std::sin(nu * kPi);
    const double cs = std::cos(nu * kPi);

    auto f = [&](double x) -> cplx {
        const double half_pi_sinh = 0.5 * kPi * std::sinh(x);
        if (half_pi_sinh < -700.0 || half_pi_sinh > 700.0) return 0.0;
        const double r = std::exp(half_pi_sinh);
        if (r * t > 745.0) return 0.0;
        const double jac = 0.5 * kPi * std::cosh(x) * r;
        const double rn = std::pow(r, nu);
        const cplx denom = rn * rn - 2.0 * c * cs * rn + c * c;
        return std::exp(-r * t) * std::pow(r, nu - 1.0) / denom * jac;
    };

    const double x_max = 5.5;
    double h = 0.5;
    auto sum_level = [&](double step, bool odd_only) {
        cplx acc{};
        const int n = static_cast<int>(std::lround(x_max / step));
        for (int k = -n; k <= n; ++k) {
            if (odd_only && (k % 2 == 0)) continue;
            acc += f(k * step);
        }
        return acc;
    };
    cplx sum = sum_level(h, false);
    cplx integral = sum * h;
    for (int level = 0; level < 12; ++level) {
        h *= 0.5;
        sum += sum_level(h, true);
        const cplx next = sum * h;
        const bool done = std::abs(next - integral) <= 1e-13 * std::max(1.0, std::abs(next));
        integral = next;
        if (done && level >= 2) break;
    }
    return -c * sn / kPi * integral;
}

double erfc_closed_form(double z) {
    if (z < 0.0) return 2.0 - erfc_closed_form(-z);
    if (z < 2.5) {
        // erf(z) = 2/sqrt(pi) e^{-z^2} sum_n 2^n z^{2n+1} / (1*3*...*(2n+1)); all terms positive
        double term = z;
        double sum = z;
        const double z2 = z * z;
        for (int n = 1; n < 200; ++n) {
            term *= 2.0 * z2 / (2.0 * n + 1.0);
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return 1.0 - 2.0 / std::sqrt(kPi) * std::exp(-z2) * sum;
    }
    // Continued fraction erfc(z) = e^{-z^2}/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))),
    // evaluated with the modified Lentz method.
    const double tiny = 1e-300;
    double f = z;
    double c = z;
    double d = 0.0;
    for (int k = 1; k < 500; ++k) {
        const double a = 0.5 * k;
        d = z + a * d;
        if (std::abs(d) < tiny) d = tiny;
        c = z + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-z * z) / std::sqrt(kPi) / f;
}

double ml_half_closed_form(double z) { return std::exp(z * z) * erfc_closed_form(-z); }

using mp = boost::multiprecision::cpp_bin_float_50;

struct ExtendedSeries::Table {
    std::mutex lock;
    std::vector<mp> inv_gamma;  // 1 / Gamma(nu n + 1)

    void extend(double nu, std::size_t n) {
        const mp nu_mp(nu);
        while (inv_gamma.size() < n) {
            const mp arg = nu_mp * mp(static_cast<double>(inv_gamma.size())) + 1;
            inv_gamma.push_back(1 / boost::math::tgamma(arg));
        }
    }
};

ExtendedSeries::ExtendedSeries(double nu) : nu_(nu), table_(std::make_unique<Table>()) {
    if (!(nu > 0.0)) throw std::invalid_argument("ExtendedSeries: nu must be > 0");
    table_->extend(nu_, 256);
}

ExtendedSeries::~ExtendedSeries() = default;
ExtendedSeries::ExtendedSeries(ExtendedSeries&&) noexcept = default;
ExtendedSeries& ExtendedSeries::operator=(ExtendedSeries&&) noexcept = default;

cplx ExtendedSeries::operator()(cplx z) const {
    const mp zr(z.real()), zi(z.imag());
    mp pr = 1, pi = 0;        // z^n
    mp sr = 0, si = 0;        // partial sum
    const mp stop("1e-24");
    constexpr std::size_t cap = 40000;
    double prev_mag = 0.0;
    for (std::size_t n = 0; n < cap; ++n) {
        mp g;
        {
            std::lock_guard<std::mutex> guard(table_->lock);
            if (n >= table_->inv_gamma.size()) table_->extend(nu_, 2 * table_->inv_gamma.size());
            g = table_->inv_gamma[n];
        }
        const mp tr = pr * g, ti = pi * g;
        sr += tr;
        si += ti;
        const double mag = static_cast<double>(abs(tr) + abs(ti));
        if (n > 2 && mag <= prev_mag && mp(mag) < stop) {
            return {static_cast<double>(sr), static_cast<double>(si)};
        }
        prev_mag = mag;
        const mp nr = pr * zr - pi * zi;
        pi = pr * zi + pi * zr;
        pr = nr;
    }
    throw NonConvergence("ExtendedSeries: no convergence within the term cap");
}

}  // namespace fracschrod::oracles
