#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fracschrod/fraccalc.hpp"
#include "fracschrod/specfun.hpp"
#include "fracschrod/tfse.hpp"

using namespace fracschrod;
using namespace fracschrod::tfse;

namespace {

constexpr double kPi = std::numbers::pi;

RunConfig config(double nu, double nm = 0.5, double nv = 0.0) { return RunConfig(FractionalOrder(nu), nm, nv); }

FieldHistory well_history(const WellMode& mode, const RunConfig& cfg, double step, std::size_t frames,
                          std::size_t intervals) {
    FieldHistory h;
    const auto first = well_field(mode, 1.0, intervals);
    h.positions = first.positions;
    h.domain = Domain::Box;
    h.box_width = mode.a;
    h.step = step;
    for (std::size_t k = 0; k < frames; ++k) {
        const cplx amp = well_amplitude(mode, cfg, static_cast<double>(k) * step, {1e-12});
        h.frames.push_back(well_field(mode, amp, intervals).values);
    }
    return h;
}

GridField line(std::vector<cplx> values, double x0, double x1) {
    GridField f;
    f.positions = uniform_grid(x0, x1, values.size());
    f.values = std::move(values);
    return f;
}

}  // namespace

TEST(Config, Validation) {
    EXPECT_THROW(config(0.5, 0.0), std::invalid_argument);
    EXPECT_THROW(config(0.5, 1.0, -1.0), std::invalid_argument);
    const auto cfg = config(0.5, 2.0, 0.3);
    EXPECT_DOUBLE_EQ(cfg.beta(), 0.25);
    EXPECT_DOUBLE_EQ(cfg.dispersion(2.0), 1.3);
}

TEST(Grid, Uniform) {
    const auto g = uniform_grid(-1.0, 1.0, 5);
    ASSERT_EQ(g.size(), 5u);
    EXPECT_DOUBLE_EQ(g[2], 0.0);
    EXPECT_DOUBLE_EQ(g[4], 1.0);
    EXPECT_THROW(uniform_grid(0.0, 1.0, 1), std::invalid_argument);
    EXPECT_THROW(uniform_grid(1.0, 1.0, 4), std::invalid_argument);
}

TEST(Packets, GaussianIsNormalised) {
    const auto p = gaussian_packet(0.0, 1.0, 8.0, 321);
    EXPECT_NEAR(spectral_probability(p), 1.0, 1e-10);
    const auto q = gaussian_packet(2.0, 0.7, 10.0, 401, 2.0);
    EXPECT_NEAR(spectral_probability(q), 4.0, 1e-9);
    EXPECT_THROW(gaussian_packet(0.0, 0.0, 8.0, 321), std::invalid_argument);
    const auto z = zero_packet(p);
    EXPECT_EQ(spectral_probability(z), 0.0);
}

TEST(Packets, Validation) {
    auto p = gaussian_packet(0.0, 1.0, 8.0, 33);
    EXPECT_NO_THROW(p.validate());
    p.wavenumbers.back() += 0.5;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    auto q = gaussian_packet(0.0, 1.0, 8.0, 33);
    for (auto& w : q.wavenumbers) w += 0.1;
    EXPECT_THROW(q.validate(), std::invalid_argument);
}

TEST(Fields, Validation) {
    GridField box;
    box.positions = uniform_grid(0.0, 1.0, 5);
    box.values = {0.0, 1.0, 1.0, 1.0, 0.5};
    box.domain = Domain::Box;
    box.box_width = 1.0;
    EXPECT_THROW(box.validate(), std::invalid_argument);
    box.values.back() = 0.0;
    EXPECT_NO_THROW(box.validate());

    TimeSeries ts{{0.0, 1.0, 1.0}, {1.0, 2.0, 3.0}, "x"};
    EXPECT_THROW(ts.validate(), std::invalid_argument);
}

TEST(FreeParticle, ZeroTimeLeavesPacket) {
    const auto p0 = gaussian_packet(1.0, 1.0, 8.0, 161);
    const auto p = free_spectrum_evolve(p0, config(0.5), 0.0);
    for (std::size_t k = 0; k < p0.amplitudes.size(); ++k) {
        EXPECT_NEAR(std::abs(p.amplitudes[k] - p0.amplitudes[k]), 0.0, 1e-10);
    }
}

TEST(FreeParticle, UnitOrderIsSchrodinger) {
    const auto cfg = config(1.0);
    const auto p0 = gaussian_packet(0.0, 1.0, 8.0, 161);
    const double t = 2.5;
    const auto p = free_spectrum_evolve(p0, cfg, t);
    for (std::size_t k = 0; k < p0.amplitudes.size(); ++k) {
        const cplx want = p0.amplitudes[k] * std::exp(cplx(0.0, -cfg.dispersion(p0.wavenumbers[k]) * t));
        EXPECT_NEAR(std::abs(p.amplitudes[k] - want), 0.0, 1e-10);
        EXPECT_EQ(p.decay[k], cplx(0.0));
    }
    EXPECT_NEAR(spectral_probability(p), 1.0, 1e-10);
}

TEST(FreeParticle, ZeroWavenumberIsStationary) {
    const auto p0 = gaussian_packet(0.0, 1.0, 8.0, 161);
    const std::size_t mid = 80;
    ASSERT_EQ(p0.wavenumbers[mid], 0.0);
    for (double t : {0.5, 3.0, 40.0}) {
        const auto p = free_spectrum_evolve(p0, config(0.6), t);
        EXPECT_EQ(p.amplitudes[mid], p0.amplitudes[mid]);
    }
}

TEST(FreeParticle, SplitIsAdditive) {
    const auto p = free_spectrum_evolve(gaussian_packet(0.0, 1.0, 8.0, 161), config(0.5), 1.0);
    const auto x = uniform_grid(-10.0, 10.0, 201);
    const auto f = free_field(p, x);
    for (std::size_t k = 0; k < x.size(); ++k) {
        EXPECT_NEAR(std::abs(f.psi.values[k] - f.psi_s.values[k] - f.psi_d.values[k]), 0.0, 1e-10);
    }
}

TEST(FreeParticle, OscillatoryPieceHasFixedModulus) {
    const double nu = 0.5;
    const auto p0 = gaussian_packet(0.0, 1.0, 8.0, 81);
    for (double t : {0.5, 5.0}) {
        const auto p = free_spectrum_evolve(p0, config(nu), t);
        for (std::size_t k = 0; k < p0.amplitudes.size(); ++k) {
            if (p0.wavenumbers[k] == 0.0) continue;  // degenerate node, no split
            EXPECT_NEAR(std::norm(p.oscillatory[k]), std::norm(p0.amplitudes[k]) / (nu * nu), 1e-12);
        }
    }
}

TEST(FreeParticle, UnitOrderHasNoDecayField) {
    const auto p = free_spectrum_evolve(gaussian_packet(0.0, 1.0, 8.0, 161), config(1.0), 1.0);
    const auto x = uniform_grid(-10.0, 10.0, 101);
    const auto f = free_field(p, x);
    for (const auto& v : f.psi_d.values) EXPECT_EQ(v, cplx(0.0));
    EXPECT_NEAR(total_probability(f.psi), 1.0, 1e-6);
}

TEST(FreeParticle, DecayFieldFades) {
    const auto p0 = gaussian_packet(0.0, 1.0, 8.0, 161);
    const auto x = uniform_grid(-20.0, 20.0, 401);
    double prev = INFINITY;
    for (double t : {1.0, 10.0, 100.0}) {
        const double n = total_probability(free_field(free_spectrum_evolve(p0, config(0.5), t), x).psi_d);
        EXPECT_LT(n, prev);
        prev = n;
    }
}

TEST(FreeParticle, ProbabilityRisesTowardLimit) {
    const double nu = 0.5;
    const auto p0 = gaussian_packet(0.0, 1.0, 8.0, 321);
    double prev = 1.0;
    for (double t : {1.0, 10.0, 100.0, 1000.0}) {
        const double p = spectral_probability(free_spectrum_evolve(p0, config(nu), t));
        EXPECT_GT(p, prev);
        EXPECT_LT(p, 1.0 / (nu * nu));
        prev = p;
    }
    // low wavenumbers evolve on the slow scale omega^{-1/nu}
    EXPECT_GT(prev, 3.5);
}

TEST(FreeParticle, HighOrderInitialData) {
    const auto p0 = gaussian_packet(0.5, 1.0, 8.0, 81);
    const auto p = free_spectrum_high_order(p0, zero_packet(p0), config(1.5), 0.0);
    for (std::size_t k = 0; k < p0.amplitudes.size(); ++k) {
        EXPECT_NEAR(std::abs(p.amplitudes[k] - p0.amplitudes[k]), 0.0, 1e-9);
    }
    const auto z = zero_packet(p0);
    for (double t : {0.0, 1.0, 3.0}) {
        const auto q = free_spectrum_high_order(z, z, config(1.5), t);
        for (const auto& v : q.amplitudes) EXPECT_EQ(v, cplx(0.0));
    }
}

TEST(FreeParticle, OrderTwoIsWaveLike) {
    const auto cfg = config(2.0);
    const auto p0 = gaussian_packet(0.0, 1.0, 4.0, 41);
    const double t = 1.7;
    const auto p = free_spectrum_high_order(p0, zero_packet(p0), cfg, t);
    for (std::size_t k = 0; k < p0.amplitudes.size(); ++k) {
        const double w = cfg.dispersion(p0.wavenumbers[k]);
        const cplx series = specfun::ml_series(-w * t * t, FractionalOrder(2.0), 1e-15);
        EXPECT_NEAR(std::abs(p.amplitudes[k] - p0.amplitudes[k] * series), 0.0, 1e-9);
    }
}

TEST(FreeParticle, HighOrderErrors) {
    const auto p0 = gaussian_packet(0.0, 1.0, 8.0, 81);
    EXPECT_THROW(free_spectrum_high_order(p0, zero_packet(p0), config(4.0 / 3.0), 1.0), DenominatorSingularity);
    EXPECT_THROW(free_spectrum_high_order(p0, zero_packet(p0), config(0.5), 1.0), InvalidOrder);
    const auto other = gaussian_packet(0.0, 1.0, 6.0, 81);
    EXPECT_THROW(free_spectrum_high_order(p0, other, config(1.5), 1.0), std::invalid_argument);
    EXPECT_THROW(free_spectrum_evolve(p0, config(1.5), 1.0), InvalidOrder);
}

TEST(Well, ModeParameters) {
    const auto cfg = config(0.5);
    const auto m1 = well_mode(1, kPi, cfg);
    const auto m2 = well_mode(2, kPi, cfg);
    EXPECT_DOUBLE_EQ(m1.lambda_n, 1.0);
    EXPECT_DOUBLE_EQ(m2.lambda_n / m1.lambda_n, 4.0);
    EXPECT_THROW(well_mode(0, kPi, cfg), std::invalid_argument);
    EXPECT_THROW(well_mode(1, -1.0, cfg), std::invalid_argument);
}

TEST(Well, BasisIsNormalised) {
    const auto cfg = config(0.5);
    for (int n = 1; n <= 5; ++n) {
        const auto f = well_field(well_mode(n, 2.0, cfg), 1.0, 2000);
        EXPECT_NEAR(total_probability(f), 1.0, 1e-8) << "n=" << n;
        EXPECT_EQ(f.values.front(), cplx(0.0));
        EXPECT_EQ(f.values.back(), cplx(0.0));
        EXPECT_NO_THROW(f.validate());
    }
}

TEST(Well, Amplitude) {
    const auto cfg = config(0.5);
    const auto m = well_mode(1, kPi, cfg);
    EXPECT_NEAR(std::abs(well_amplitude(m, cfg, 0.0) - 1.0), 0.0, 1e-10);
    const cplx a1 = well_amplitude(m, cfg, 1.0, {1e-13});
    EXPECT_NEAR(std::abs(a1 - cplx(0.66501651582843091, -1.9132617571707038)), 0.0, 1e-11);
    EXPECT_NEAR(std::abs(well_amplitude(m, cfg, 1e4)), 2.0, 0.02);
}

TEST(Well, UnitOrderAmplitudeHasUnitModulus) {
    const auto cfg = config(1.0);
    const auto m = well_mode(2, kPi, cfg);
    for (double t : {0.3, 2.0, 11.0}) {
        const cplx a = well_amplitude(m, cfg, t);
        EXPECT_NEAR(std::abs(a - std::exp(cplx(0.0, -m.omega_n * t))), 0.0, 1e-12);
    }
}

TEST(Well, PotentialShiftsTheRate) {
    const auto plain = config(1.0, 0.5, 0.0);
    const auto shifted = config(1.0, 0.5, 0.7);
    const auto m = well_mode(1, kPi, plain);
    const cplx a = well_amplitude(m, shifted, 2.0);
    EXPECT_NEAR(std::abs(a - std::exp(cplx(0.0, -(1.0 + 0.7) * 2.0))), 0.0, 1e-12);
}

TEST(Well, ProbabilityLimits) {
    const auto m = well_mode(1, kPi, config(1.0));
    for (double t : {0.0, 3.0, 50.0}) {
        const auto f = well_field(m, well_amplitude(m, config(1.0), t), 400);
        EXPECT_NEAR(total_probability(f), 1.0, 1e-8);
    }
    const auto half = config(0.5);
    const auto mh = well_mode(1, kPi, half);
    EXPECT_NEAR(total_probability(well_field(mh, well_amplitude(mh, half, 1e4), 400)), 4.0, 0.05);
}

TEST(Energy, Levels) {
    const auto cfg = config(0.5);
    const auto m = well_mode(1, kPi, cfg);
    EXPECT_DOUBLE_EQ(energy_level_limit(m, cfg), 4.0);
    EXPECT_DOUBLE_EQ(energy_spacing_unit(kPi, cfg), 4.0);
    EXPECT_NEAR(energy_level_limit(well_mode(2, kPi, cfg), cfg) - energy_level_limit(m, cfg), 15.0 * 4.0, 1e-9);
    const cplx e1 = energy_level(m, cfg, 1.0, {1e-13});
    EXPECT_NEAR(std::abs(e1 - cplx(3.6048397146951912, 1.0285842137397427)), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(energy_level(m, cfg, 1e4) - 4.0) / 4.0, 0.0, 0.02);
    EXPECT_THROW(energy_level(m, cfg, 0.0), SingularTime);
}

TEST(Energy, UnitOrderIsConstant) {
    const auto cfg = config(1.0);
    const auto m = well_mode(3, 2.0, cfg);
    for (double t : {0.0, 0.5, 9.0}) EXPECT_NEAR(std::abs(energy_level(m, cfg, t) - m.omega_n), 0.0, 1e-10);
}

TEST(Diagnostics, WeightedHistory) {
    FieldHistory h;
    h.positions = uniform_grid(-1.0, 1.0, 11);
    h.step = 0.01;
    for (int k = 0; k < 50; ++k) h.frames.emplace_back(11, cplx(1.5, -0.5));
    const auto w = weighted_history(h, FractionalOrder(0.5));
    for (const auto& v : w.values) EXPECT_EQ(v, cplx(0.0));
    const auto same = weighted_history(h, FractionalOrder(1.0), 20);
    for (const auto& v : same.values) EXPECT_EQ(v, cplx(1.5, -0.5));
}

TEST(Diagnostics, EnergyAverage) {
    const auto m = well_mode(1, kPi, config(1.0));
    const auto f = well_field(m, 1.0, 400);
    EXPECT_NEAR(std::abs(energy_average(f, f) - 1.0), 0.0, 1e-8);
    const auto zero = well_field(m, 0.0, 400);
    EXPECT_EQ(energy_average(zero, f), cplx(0.0));
}

TEST(Diagnostics, EnergyAverageMatchesModalHistory) {
    const auto cfg = config(0.5);
    const auto m = well_mode(1, kPi, cfg);
    const double step = 1e-2;
    const auto h = well_history(m, cfg, step, 101, 200);
    const auto w = weighted_history(h, cfg.nu);
    const auto avg = energy_average(h.frame(100), w);
    std::vector<cplx> amps;
    for (int k = 0; k <= 100; ++k) amps.push_back(well_amplitude(m, cfg, k * step, {1e-12}));
    const cplx modal = std::conj(amps.back()) * fraccalc::l1_caputo_at(amps, step, 0.5, 100);
    EXPECT_NEAR(std::abs(avg - modal), 0.0, 1e-6);
}

TEST(Diagnostics, InitialCaputoOfWellMode) {
    const auto cfg = config(0.5, 0.5, 0.25);
    const auto m = well_mode(1, kPi, cfg);
    const auto f = well_field(m, 1.0, 2000);
    const auto d = initial_caputo(f, cfg);
    const cplx c = (m.lambda_n + cfg.alpha()) / specfun::unit_power(specfun::Ray::PlusI, 0.5);
    for (std::size_t k = 0; k < f.values.size(); k += 50) {
        EXPECT_NEAR(std::abs(d.values[k] - c * f.values[k]), 0.0, 1e-5);
    }
}

TEST(Diagnostics, CurrentStandingWave) {
    const auto cfg = config(1.0);
    const auto f = well_field(well_mode(1, kPi, cfg), 1.0, 400);
    const auto j = probability_current(f, f, cfg);
    for (std::size_t k = 1; k + 1 < j.values.size(); ++k) EXPECT_NEAR(std::abs(j.values[k]), 0.0, 1e-12);
}

TEST(Diagnostics, CurrentPlaneWave) {
    const auto cfg = config(1.0, 0.5);
    const double lambda = 1.3;
    const auto x = uniform_grid(-2.0, 2.0, 4001);
    std::vector<cplx> v;
    for (double xi : x) v.push_back(std::exp(cplx(0.0, lambda * xi)));
    const auto f = line(v, -2.0, 2.0);
    const auto j = probability_current(f, f, cfg);
    for (std::size_t k = 1; k + 1 < x.size(); ++k) {
        EXPECT_NEAR(j.values[k].real(), 2.0 * cfg.beta() * lambda, 1e-6);
        EXPECT_NEAR(j.values[k].imag(), 0.0, 1e-12);
    }
    const auto zero = line(std::vector<cplx>(x.size(), 0.0), -2.0, 2.0);
    for (const auto& z : probability_current(zero, zero, cfg).values) EXPECT_EQ(z, cplx(0.0));
}

TEST(Diagnostics, SourceTerm) {
    const auto unit = config(1.0);
    const auto f = well_field(well_mode(1, kPi, unit), cplx(0.3, 0.8), 100);
    const auto init = initial_caputo(f, unit);
    for (const auto& s : source_term(f, f, init, 1.0, unit).values) EXPECT_EQ(s, cplx(0.0));

    const auto half = config(0.5);
    const auto zero = well_field(well_mode(1, kPi, half), 0.0, 100);
    for (const auto& s : source_term(zero, zero, zero, 1.0, half).values) EXPECT_EQ(s, cplx(0.0));
    EXPECT_THROW(source_term(f, f, init, 0.0, half), SingularTime);
}

TEST(Diagnostics, Continuity) {
    for (double nu : {0.5, 0.75}) {
        const auto cfg = config(nu);
        const auto m = well_mode(1, kPi, cfg);
        const std::vector<double> times{0.5, 1.7, 4.0};
        const auto samples = well_continuity(m, cfg, times, 2e-3, 128);
        ASSERT_EQ(samples.size(), times.size());
        for (const auto& s : samples) {
            EXPECT_LE(std::abs(s.dprob_dt - s.source_integral), 0.02 * std::abs(s.dprob_dt))
                << "nu=" << nu << " t=" << s.t;
        }
    }
}

TEST(Diagnostics, ContinuityRefusesHugeHistories) {
    const auto cfg = config(0.5);
    const auto m = well_mode(1, kPi, cfg);
    const std::vector<double> times{1e4};
    EXPECT_THROW(well_continuity(m, cfg, times, 1e-3, 128), std::invalid_argument);
}

TEST(Recast, ZeroFieldAndUnitOrder) {
    const auto cfg = config(0.5);
    const ModalHistory zero{1e-3, std::vector<cplx>(1001, 0.0), 1.0};
    EXPECT_EQ(hamiltonian_recast_residual(zero, cfg).max_abs, 0.0);

    const auto unit = config(1.0);
    const auto m = well_mode(1, kPi, unit);
    ModalHistory h{1e-3, {}, m.lambda_n};
    for (int k = 0; k <= 2000; ++k) h.amplitudes.push_back(well_amplitude(m, unit, k * 1e-3));
    EXPECT_LT(hamiltonian_recast_residual(h, unit, {0.1, 2.0}).max_abs, 1e-5);
}

TEST(Recast, SubUnitWellMode) {
    const auto cfg = config(0.5);
    const auto m = well_mode(1, kPi, cfg);
    ModalHistory h{1e-3, {}, m.lambda_n};
    for (int k = 0; k <= 2000; ++k) h.amplitudes.push_back(well_amplitude(m, cfg, k * 1e-3, {1e-12}));
    const auto r = hamiltonian_recast_residual(h, cfg, {0.1, 2.0});
    EXPECT_LE(r.max_abs, 5e-3);

    const auto m2 = well_mode(2, kPi, cfg);
    ModalHistory h2{1e-3, {}, m2.lambda_n};
    for (int k = 0; k <= 2000; ++k) h2.amplitudes.push_back(well_amplitude(m2, cfg, k * 1e-3, {1e-12}));
    const auto r_second = hamiltonian_recast_residual(h2, cfg, {0.1, 2.0});
    const std::vector<ModalHistory> both{h, h2};
    const auto r2 = hamiltonian_recast_residual(both, cfg, {0.1, 2.0});
    EXPECT_EQ(r2.max_abs, std::max(r.max_abs, r_second.max_abs));
    EXPECT_EQ(r2.window_begin, r.window_begin);
}

TEST(Recast, SuperUnitTwoInitialConditions) {
    const auto cfg = config(1.5);
    const double lambda = 1.0;
    ModalHistory h{1e-3, {}, lambda, cplx(0.0, 0.5)};
    for (int k = 0; k <= 2000; ++k) {
        h.amplitudes.push_back(specfun::ml_two_ic(lambda, FractionalOrder(1.5), 1.0, cplx(0.0, 0.5), k * 1e-3,
                                                  specfun::Ray::MinusI, {1e-12}));
    }
    EXPECT_LE(hamiltonian_recast_residual(h, cfg, {0.1, 2.0}).max_abs, 5e-3);
}

TEST(Envelope, LowerEnvelopeNonDecreasing) {
    const auto cfg = config(0.5);
    const auto m = well_mode(1, kPi, cfg);
    const auto low = lower_envelope(m, cfg, 12);
    ASSERT_EQ(low.size(), 12u);
    for (std::size_t k = 1; k < low.size(); ++k) EXPECT_GE(low[k], low[k - 1] - 1e-9);
    EXPECT_LT(low.back(), 4.0);
}

TEST(Envelope, GapShrinksLikePowerLaw) {
    const auto cfg = config(0.5);
    const auto m = well_mode(1, kPi, cfg);
    const auto env = probability_envelope(m, cfg, 1e2, 1e4, 5, 24);
    ASSERT_EQ(env.max_gap.size(), 5u);
    EXPECT_NEAR(env.slope, -0.5, 0.15);
    for (std::size_t k = 1; k < env.max_gap.size(); ++k) EXPECT_LT(env.max_gap[k], env.max_gap[k - 1]);
}
