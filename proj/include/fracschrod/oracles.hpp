#pragma once

// Independent cross-checks for the Mittag-Leffler machinery. Nothing here
// calls into specfun evaluators: the Laplace inversion walks a parabolic
// Bromwich contour, the branch-cut integral is done directly in r with a
// double-exponential rule, and the series oracle runs in 50-digit arithmetic.

#include <complex>
#include <memory>

#include "fracschrod/errors.hpp"
#include "fracschrod/specfun.hpp"

namespace fracschrod::oracles {

using cplx = std::complex<double>;

/// Parameters for inverting s^{nu-1} / (s^nu - sigma i^nu) along the
/// parabola s(u) = mu (1 + iu)^2 with mu = scale / t.
struct InversionSpec {
    double sigma;
    specfun::FractionalOrder order;
    int nodes = 32;             // initial trapezoid node count, >= 16
    double scale = 4.0;         // mu * t, > 0
    double clash_margin = 0.05; // minimum |Im u| of the pole preimage
    double agreement = 1e-7;    // successive-doubling stopping criterion
    int max_nodes = 1 << 17;

    void validate() const;
};

/// Picks the contour scale that keeps the pole farthest from the path.
InversionSpec auto_inversion_spec(double sigma, specfun::FractionalOrder order, double t);

/// A(t)/A0 for D^nu A = sigma i^nu A by direct Bromwich quadrature.
/// Throws ContourClash when the pole is within clash_margin of the path.
cplx laplace_invert_ml(const InversionSpec& spec, double t);

/// exp(i sigma^{1/nu} t) / nu, the pole contribution.
cplx residue_term(double sigma, specfun::FractionalOrder order, double t);

/// The branch-cut contribution -(c sin(nu pi)/pi) int_0^inf e^{-rt} r^{nu-1} dr /
/// (r^{2nu} - 2 c cos(nu pi) r^nu + c^2), c = sigma i^nu, integrated in r
/// with an exp-sinh double-exponential rule.
cplx hankel_branch_cut(double sigma, specfun::FractionalOrder order, double t);

/// Complementary error function, |z| <= 6, ~1e-13 relative.
double erfc_closed_form(double z);

/// E_{1/2}(z) = exp(z^2) erfc(-z) for real z.
double ml_half_closed_form(double z);

/// Power series of E_nu evaluated in 50 significant digits, for arguments
/// where double-precision cancellation makes the plain series useless.
class ExtendedSeries {
public:
    explicit ExtendedSeries(double nu);
    ~ExtendedSeries();
    ExtendedSeries(ExtendedSeries&&) noexcept;
    ExtendedSeries& operator=(ExtendedSeries&&) noexcept;

    double nu() const { return nu_; }
    cplx operator()(cplx z) const;

private:
    struct Table;
    double nu_;
    std::unique_ptr<Table> table_;
};

}  // namespace fracschrod::oracles
