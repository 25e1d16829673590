#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fracschrod/oracles.hpp"
#include "fracschrod/specfun.hpp"

using namespace fracschrod;
using namespace fracschrod::specfun;

namespace {

void expect_close(cplx got, cplx want, double tol) {
    EXPECT_LE(std::abs(got - want), tol) << "got " << got << " want " << want;
}

}  // namespace

TEST(FractionalOrder, Validation) {
    EXPECT_THROW(FractionalOrder(0.0), InvalidOrder);
    EXPECT_THROW(FractionalOrder(-0.5), InvalidOrder);
    EXPECT_THROW(FractionalOrder(2.5), InvalidOrder);
    EXPECT_THROW(FractionalOrder(std::numeric_limits<double>::quiet_NaN()), InvalidOrder);
    EXPECT_TRUE(FractionalOrder(0.5).sub_unit());
    EXPECT_TRUE(FractionalOrder(1.0).sub_unit());
    EXPECT_TRUE(FractionalOrder(1.0).is_one());
    EXPECT_EQ(FractionalOrder(1.5).regime(), Regime::SuperUnit);
    EXPECT_EQ(FractionalOrder(2.0).regime(), Regime::SuperUnit);
}

TEST(UnitPower, PrincipalBranch) {
    expect_close(unit_power(Ray::PlusI, 1.0), {0.0, 1.0}, 1e-15);
    expect_close(unit_power(Ray::MinusI, 1.0), {0.0, -1.0}, 1e-15);
    expect_close(unit_power(Ray::PlusI, 0.5), std::polar(1.0, M_PI / 4), 1e-15);
    expect_close(unit_power(Ray::MinusI, 0.5), std::conj(unit_power(Ray::PlusI, 0.5)), 0.0);
    expect_close(unit_power(Ray::PlusI, 2.0), {-1.0, 0.0}, 1e-15);
}

TEST(MlSeries, Examples) {
    expect_close(ml_series(0.0, FractionalOrder(0.5)), 1.0, 0.0);
    expect_close(ml_series(1.0, FractionalOrder(1.0)), std::exp(1.0), 1e-12);
    expect_close(ml_series(1.0, FractionalOrder(0.5), 1e-15), 5.0089800807622833, 1e-12);
    expect_close(ml_series(1.0, FractionalOrder(0.5), 1e-15), oracles::ml_half_closed_form(1.0), 1e-12);
}

TEST(MlSeries, CosineAtOrderTwo) {
    for (double t = 0.0; t <= 3.0; t += 0.25) {
        expect_close(ml_series(-t * t, FractionalOrder(2.0), 1e-15), std::cos(t), 1e-13);
    }
}

TEST(MlSeries, ReportsTerms) {
    const auto r = ml_series_detailed(0.5, FractionalOrder(1.0), 1e-14);
    EXPECT_GT(r.terms, 5);
    EXPECT_LT(r.terms, kSeriesTermCap);
    EXPECT_LE(r.truncation_bound, 1e-13);
}

TEST(MlSeries, NonConvergenceForLargeArgument) {
    EXPECT_THROW(ml_series(cplx(0.0, 400.0), FractionalOrder(0.5)), NonConvergence);
}

TEST(MlSeries, BadTolerance) {
    EXPECT_THROW(ml_series(1.0, FractionalOrder(0.5), 0.0), std::invalid_argument);
}

TEST(DecayKernel, SpecialValues) {
    EXPECT_EQ(f_nu({0.0, FractionalOrder(0.5)}, 1.3), cplx(0.0));
    EXPECT_EQ(f_nu({1.0, FractionalOrder(1.0)}, 2.0), cplx(0.0));
    expect_close(f_nu({1.0, FractionalOrder(0.5)}, 0.0), 1.0, 1e-10);
    for (double nu : {0.2, 0.4, 0.7, 0.9}) {
        for (double rho : {0.3, 1.0, 4.0}) {
            expect_close(f_nu({rho, FractionalOrder(nu)}, 0.0), (1.0 - nu) / nu, 1e-10);
        }
    }
}

TEST(DecayKernel, FrozenValues) {
    expect_close(f_nu({1.0, FractionalOrder(0.5)}, 1.0, 1e-14), 0.42758357615580711, 1e-12);
    expect_close(f_nu({2.0, FractionalOrder(0.75)}, 0.5, 1e-14), 0.12608921477655824, 1e-12);
}

TEST(DecayKernel, BoundAndMonotoneProperty) {
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> nu_dist(0.1, 0.95);
    std::uniform_real_distribution<double> rho_dist(0.05, 5.0);
    for (int trial = 0; trial < 25; ++trial) {
        const double nu = nu_dist(rng);
        const double rho = rho_dist(rng);
        const DecayKernelSpec spec{rho, FractionalOrder(nu)};
        double prev = (1.0 - nu) / nu + 1e-10;
        for (double t = 0.0; t <= 8.0; t += 0.4) {
            const cplx f = f_nu(spec, t);
            EXPECT_NEAR(f.imag(), 0.0, 1e-12);
            EXPECT_GE(f.real(), -1e-10) << "nu=" << nu << " rho=" << rho << " t=" << t;
            EXPECT_LE(f.real(), prev + 1e-10) << "nu=" << nu << " rho=" << rho << " t=" << t;
            prev = f.real();
        }
    }
}

TEST(DecayKernel, DerivativeMatchesFiniteDifference) {
    const DecayKernelSpec spec{unit_power(Ray::MinusI, 0.6) * 1.5, FractionalOrder(0.6)};
    const KernelOptions opt{1e-13};
    for (double t : {0.3, 1.0, 3.0}) {
        const double h = 1e-4;
        const cplx fd = (f_nu(spec, t + h, opt) - f_nu(spec, t - h, opt)) / (2.0 * h);
        expect_close(f_nu_dt(spec, t, opt), fd, 1e-7);
    }
}

TEST(DecayKernel, DerivativeSingularAtZero) {
    EXPECT_THROW(f_nu_dt({1.0, FractionalOrder(0.5)}, 0.0), SingularTime);
}

TEST(DecayKernel, NegativeTime) {
    EXPECT_THROW(f_nu({1.0, FractionalOrder(0.5)}, -1.0), std::invalid_argument);
}

TEST(Decomposition, ZeroSigma) {
    const auto d = ml_complex_decomposed(0.0, Ray::MinusI, FractionalOrder(0.5), 1.0);
    expect_close(d.total, 1.0, 0.0);
    expect_close(d.oscillatory - d.decay, d.total, 0.0);
}

TEST(Decomposition, EulerAtUnitOrder) {
    const auto d = ml_complex_decomposed(1.0, Ray::MinusI, FractionalOrder(1.0), M_PI);
    expect_close(d.total, -1.0, 1e-14);
    EXPECT_EQ(d.decay, cplx(0.0));
}

TEST(Decomposition, TotalIsOscillatoryMinusDecay) {
    for (double t : {0.0, 0.7, 4.0}) {
        const auto d = ml_complex_decomposed(1.3, Ray::PlusI, FractionalOrder(0.4), t);
        EXPECT_EQ(d.total, d.oscillatory - d.decay);
        EXPECT_NEAR(std::abs(d.oscillatory), 1.0 / 0.4, 1e-14);
    }
}

TEST(Decomposition, StartsAtOne) {
    for (double nu : {0.25, 0.5, 0.8}) {
        expect_close(ml_complex_decomposed(2.0, Ray::MinusI, FractionalOrder(nu), 0.0).total, 1.0, 1e-10);
    }
}

TEST(Decomposition, RaysAreConjugate) {
    for (double t : {0.5, 2.0, 6.0}) {
        const auto p = ml_complex_decomposed(0.8, Ray::PlusI, FractionalOrder(0.7), t).total;
        const auto m = ml_complex_decomposed(0.8, Ray::MinusI, FractionalOrder(0.7), t).total;
        expect_close(m, std::conj(p), 1e-12);
    }
}

TEST(Decomposition, MatchesSeriesExample) {
    const cplx z = unit_power(Ray::MinusI, 0.5) * std::sqrt(2.0);
    expect_close(ml_complex_decomposed(1.0, Ray::MinusI, FractionalOrder(0.5), 2.0).total,
                 ml_series(z, FractionalOrder(0.5), 1e-15), 1e-9);
}

TEST(Decomposition, FrozenValues) {
    expect_close(ml_complex_decomposed(1.0, Ray::MinusI, FractionalOrder(0.5), 2.0, 1e-13).total,
                 {-1.1370378783511985, -2.0268137918541953}, 1e-11);
    expect_close(ml_complex_decomposed(2.0, Ray::PlusI, FractionalOrder(0.7), 3.0, 1e-13).total,
                 {-0.3555929241300641, 1.4505258687796652}, 1e-11);
    expect_close(ml_complex_decomposed(2.0, Ray::PlusI, FractionalOrder(0.3), 5.0, 1e-13).total,
                 {3.0660161455306287, 0.58016042846233362}, 1e-11);
}

TEST(Decomposition, SeriesAgreementProperty) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> nu_dist(0.05, 0.999);
    std::uniform_real_distribution<double> sigma_dist(1e-3, 3.0);
    std::uniform_real_distribution<double> t_dist(0.0, 5.0);
    for (int trial = 0; trial < 40; ++trial) {
        const double nu = nu_dist(rng);
        const double sigma = sigma_dist(rng);
        const double t = t_dist(rng);
        // the 50-digit reference loses everything once the largest series
        // term, about exp(sigma^{1/nu} t), passes 1e26
        if (std::pow(sigma, 1.0 / nu) * t > 60.0) {
            --trial;
            continue;
        }
        const Ray ray = trial % 2 ? Ray::PlusI : Ray::MinusI;
        const oracles::ExtendedSeries reference(nu);
        const cplx z = sigma * unit_power(ray, nu) * std::pow(t, nu);
        const cplx got = ml_complex_decomposed(sigma, ray, FractionalOrder(nu), t).total;
        EXPECT_LE(std::abs(got - reference(z)), 10.0 * kDefaultTol)
            << "nu=" << nu << " sigma=" << sigma << " t=" << t;
    }
}

TEST(Decomposition, DecayVanishesAtLargeTime) {
    const FractionalOrder nu(0.5);
    const double early = std::abs(ml_complex_decomposed(1.0, Ray::MinusI, nu, 1.0).decay);
    const double late = std::abs(ml_complex_decomposed(1.0, Ray::MinusI, nu, 1e4).decay);
    EXPECT_LT(late, 0.05 * early);
}

TEST(Decomposition, DerivativeMatchesFiniteDifference) {
    const FractionalOrder nu(0.5);
    const KernelOptions opt{1e-13};
    for (double t : {0.5, 1.5, 4.0}) {
        const double h = 1e-4;
        const cplx fd = (ml_complex_decomposed(1.0, Ray::MinusI, nu, t + h, opt).total -
                         ml_complex_decomposed(1.0, Ray::MinusI, nu, t - h, opt).total) /
                        (2.0 * h);
        expect_close(ml_complex_decomposed_dt(1.0, Ray::MinusI, nu, t, opt), fd, 1e-7);
    }
}

TEST(Decomposition, RejectsSuperUnit) {
    EXPECT_THROW(ml_complex_decomposed(1.0, Ray::PlusI, FractionalOrder(1.5), 1.0), InvalidOrder);
}

TEST(TwoIc, OrderTwoIsHarmonic) {
    const double sigma = 2.0;
    const double w = std::sqrt(sigma);
    for (double t = 0.0; t <= 3.0; t += 0.5) {
        const cplx got = ml_two_ic(sigma, FractionalOrder(2.0), 1.0, 0.5, t);
        expect_close(got, std::cos(w * t) + 0.5 * std::sin(w * t) / w, 1e-9);
    }
}

TEST(TwoIc, OrderTwoMatchesSeries) {
    for (double t = 0.0; t <= 3.0; t += 0.5) {
        expect_close(ml_two_ic(1.0, FractionalOrder(2.0), 1.0, 0.0, t, Ray::MinusI),
                     ml_series(-t * t, FractionalOrder(2.0), 1e-15), 1e-9);
    }
}

TEST(TwoIc, InitialValue) {
    for (double nu : {1.2, 1.5, 1.8}) {
        expect_close(ml_two_ic(0.7, FractionalOrder(nu), 1.0, 0.0, 0.0, Ray::MinusI), 1.0, 1e-9);
    }
}

TEST(TwoIc, ZeroSigmaIsAffine) {
    expect_close(ml_two_ic(0.0, FractionalOrder(1.5), 2.0, 3.0, 1.5), 2.0 + 3.0 * 1.5, 1e-12);
}

TEST(TwoIc, ZeroData) {
    for (double t : {0.0, 1.0, 5.0}) {
        EXPECT_EQ(ml_two_ic(1.0, FractionalOrder(1.5), 0.0, 0.0, t), cplx(0.0));
    }
}

TEST(TwoIc, FrozenValue) {
    expect_close(ml_two_ic(1.0, FractionalOrder(1.5), 1.0, 0.5, 1.3, Ray::MinusI, {1e-13}),
                 {0.69882832192487021, -0.61658774331534971}, 1e-11);
}

TEST(TwoIc, MatchesExtendedSeriesWithoutVelocity) {
    const oracles::ExtendedSeries reference(1.5);
    for (double t : {0.5, 1.0, 2.0}) {
        const cplx z = unit_power(Ray::MinusI, 1.5) * std::pow(t, 1.5);
        expect_close(ml_two_ic(1.0, FractionalOrder(1.5), 1.0, 0.0, t, Ray::MinusI), reference(z), 1e-9);
    }
}

TEST(TwoIc, Errors) {
    EXPECT_THROW(ml_two_ic(1.0, FractionalOrder(4.0 / 3.0), 1.0, 0.0, 1.0), DenominatorSingularity);
    EXPECT_THROW(ml_two_ic(1.0, FractionalOrder(0.5), 1.0, 0.0, 1.0), InvalidOrder);
}
