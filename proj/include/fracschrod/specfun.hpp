#pragma once

// Mittag-Leffler function E_nu for the arguments that appear in the
// time-fractional Schrodinger problem, its split into an oscillatory
// residue term and a monotone branch-cut term F_nu, and the two-initial-
// condition solution for orders 1 < nu <= 2.
//
// Branches are fixed: i^nu = exp(i pi nu / 2), (-i)^nu = exp(-i pi nu / 2),
// sigma^(1/nu) is the positive real root.

#include <complex>

#include "fracschrod/errors.hpp"

namespace fracschrod::specfun {

using cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

enum class Regime { SubUnit, SuperUnit };

/// Order nu of the Caputo time derivative, 0 < nu <= 2.
class FractionalOrder {
public:
    explicit FractionalOrder(double nu);

    double value() const { return nu_; }
    Regime regime() const { return regime_; }
    bool sub_unit() const { return regime_ == Regime::SubUnit; }
    bool is_one() const { return nu_ == 1.0; }

private:
    double nu_;
    Regime regime_;
};

/// Which imaginary ray the argument lives on: sigma * (+i)^nu or sigma * (-i)^nu.
enum class Ray { PlusI, MinusI };

/// i^nu or (-i)^nu on the principal branch.
cplx unit_power(Ray ray, double nu);

/// Parameters (rho, nu) of the decay kernel F_nu(rho, t).
struct DecayKernelSpec {
    cplx rho;
    FractionalOrder order;
};

/// E_nu on an imaginary ray, split as total = oscillatory - decay.
struct MlDecomposition {
    cplx oscillatory;
    cplx decay;
    cplx total;
};

struct KernelOptions {
    double tol = kDefaultTol;  // absolute, on the returned quantity
    // Roots of w^2 - 2 rho cos(nu pi) w + rho^2 closer than this (radians)
    // to the positive real axis raise DenominatorSingularity.
    double root_margin = 1e-3;
    int max_segments = 4000;
};

struct SeriesResult {
    cplx value;
    int terms;
    double truncation_bound;  // magnitude of the last term added
};

inline constexpr int kSeriesTermCap = 200;

/// Power series sum z^n / Gamma(nu n + 1). Stops once two successive terms
/// fall below tol * |partial sum|; throws NonConvergence past kSeriesTermCap.
SeriesResult ml_series_detailed(cplx z, FractionalOrder order, double tol = kDefaultTol);
cplx ml_series(cplx z, FractionalOrder order, double tol = kDefaultTol);

/// F_nu(rho, t) = (rho sin(nu pi) / pi) int_0^inf e^{-rt} r^{nu-1} dr
///                / (r^{2nu} - 2 rho cos(nu pi) r^nu + rho^2).
cplx f_nu(const DecayKernelSpec& spec, double t, const KernelOptions& opt = {});
cplx f_nu(const DecayKernelSpec& spec, double t, double tol);

/// d/dt F_nu(rho, t); requires t > 0 for nu < 1.
cplx f_nu_dt(const DecayKernelSpec& spec, double t, const KernelOptions& opt = {});

/// E_nu(sigma (+-i)^nu t^nu) = exp(+-i sigma^(1/nu) t) / nu - F_nu(sigma (+-i)^nu, t).
/// sigma == 0 bypasses the split and returns E_nu(0) = 1.
MlDecomposition ml_complex_decomposed(double sigma, Ray ray, FractionalOrder order, double t,
                                      const KernelOptions& opt = {});
MlDecomposition ml_complex_decomposed(double sigma, Ray ray, FractionalOrder order, double t,
                                      double tol);

/// Time derivative of ml_complex_decomposed(...).total, assembled from the
/// derivative of the residue term and the differentiated kernel integral.
cplx ml_complex_decomposed_dt(double sigma, Ray ray, FractionalOrder order, double t,
                              const KernelOptions& opt = {});

/// Solution of D^nu A = sigma (+-i)^nu A, A(0) = a0, A'(0) = a1 for
/// 1 < nu <= 2: every pole of s^{nu-1}/(s^nu - c) on the principal sheet
/// contributes exp(s_k t)/nu (and exp(s_k t)/(nu s_k) for the a1 part), the
/// branch cut contributes -F_nu(c, t) and +G(c, t) respectively.
cplx ml_two_ic(double sigma, FractionalOrder order, cplx a0, cplx a1, double t,
               Ray ray = Ray::PlusI, const KernelOptions& opt = {});

/// The a1 branch-cut term G(c,t) = (c sin(nu pi)/pi) int e^{-rt} r^{nu-2} / D(r) dr.
cplx two_ic_velocity_kernel(const DecayKernelSpec& spec, double t, const KernelOptions& opt = {});

}  // namespace fracschrod::specfun
