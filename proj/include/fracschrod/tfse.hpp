#pragma once

// Closed-form solutions of the time-fractional Schrodinger equation
//
//     (i T_p)^nu D_t^nu psi = -(L_p^2 / 2 N_m) psi_xx + N_v psi
//
// in units T_p = L_p = hbar = 1, for a free particle (spectral evolution,
// one Mittag-Leffler factor per wavenumber) and for the infinite well
// (separable modes), together with the diagnostics built on them:
// probability, probability current and source, weighted energy average,
// time-dependent energy levels and the first-order-in-time recast residual.
//
// N_v enters as a uniform potential offset: every modal rate is
// omega + N_v, with omega = lambda^2 / (2 N_m) for wavenumber lambda.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fracschrod/fraccalc.hpp"
#include "fracschrod/specfun.hpp"

namespace fracschrod::tfse {

using cplx = std::complex<double>;
using specfun::FractionalOrder;
using specfun::KernelOptions;

struct RunConfig {
    FractionalOrder nu;
    double n_m = 1.0;   // particle mass in Planck masses, > 0
    double n_v = 0.0;   // potential in Planck energies, >= 0

    RunConfig(FractionalOrder order, double mass, double potential = 0.0);

    double alpha() const { return n_v; }
    double beta() const { return 1.0 / (2.0 * n_m); }
    /// omega(lambda) = beta lambda^2 + alpha.
    double dispersion(double lambda) const { return beta() * lambda * lambda + alpha(); }
};

/// Fourier amplitudes Psi(lambda) on a symmetric uniform grid. The forward
/// transform is int e^{-i lambda x} psi dx, the inverse carries 1/(2 pi).
/// After evolution the oscillatory and decay pieces are kept alongside the
/// total (amplitudes = oscillatory + decay).
struct SpectralPacket {
    std::vector<double> wavenumbers;
    std::vector<cplx> amplitudes;
    std::vector<cplx> oscillatory;
    std::vector<cplx> decay;
    double time = 0.0;

    double spacing() const;
    bool has_split() const { return !oscillatory.empty(); }
    void validate() const;
};

/// Unit-norm Gaussian psi0(x) = (2 pi w^2)^{-1/4} exp(-(x-x0)^2 / (4 w^2)), sampled
/// in Fourier space on count points of [-lambda_max, lambda_max].
SpectralPacket gaussian_packet(double center, double width, double lambda_max, std::size_t count,
                               cplx scale = 1.0);
SpectralPacket zero_packet(const SpectralPacket& like);

enum class Domain { Line, Box };

struct GridField {
    std::vector<double> positions;   // uniform
    std::vector<cplx> values;
    Domain domain = Domain::Line;
    double box_width = 0.0;          // Box only

    double spacing() const { return positions.size() > 1 ? positions[1] - positions[0] : 0.0; }
    void validate() const;
};

std::vector<double> uniform_grid(double start, double stop, std::size_t count);

struct WellMode {
    int n;
    double a;
    double lambda_n;  // (n pi / a)^2 / (2 N_m)
    double omega_n;   // lambda_n / T_p^nu

    double basis(double x) const;  // sqrt(2/a) sin(n pi x / a)
};

/// Time-indexed series with strictly increasing times.
struct TimeSeries {
    std::vector<double> times;
    std::vector<cplx> values;
    std::string label;

    void validate() const;
};

// ---- free particle -------------------------------------------------------

SpectralPacket free_spectrum_evolve(const SpectralPacket& packet0, const RunConfig& cfg, double t,
                                    const KernelOptions& opt = {});

struct FreeFields {
    GridField psi;
    GridField psi_s;  // oscillatory piece
    GridField psi_d;  // decay piece
};

/// Inverse transform of the total and of both pieces onto the points x.
FreeFields free_field(const SpectralPacket& packet, std::span<const double> x);

/// Inverse transform of the amplitudes only.
GridField inverse_transform(const SpectralPacket& packet, std::span<const double> x);

/// 1 < nu <= 2 with Psi(0) = packet0 and dPsi/dt(0) = packet1.
SpectralPacket free_spectrum_high_order(const SpectralPacket& packet0, const SpectralPacket& packet1,
                                        const RunConfig& cfg, double t, const KernelOptions& opt = {});

/// (1 / 2 pi) int |Psi|^2 d lambda, equal to int |psi|^2 dx by Parseval.
double spectral_probability(const SpectralPacket& packet);

// ---- infinite well -------------------------------------------------------

WellMode well_mode(int n, double a, const RunConfig& cfg);

/// A(t) with A(0) = 1 for the mode: E_nu((omega_n + N_v)(-it)^nu).
cplx well_amplitude(const WellMode& mode, const RunConfig& cfg, double t, const KernelOptions& opt = {});

/// psi(x) = amplitude * sqrt(2/a) sin(n pi x / a) on points+1 nodes across [0, a].
GridField well_field(const WellMode& mode, cplx amplitude, std::size_t intervals);

/// E_n(t) = i hbar conj(A) dA/dt, with dA/dt from the analytic split.
cplx energy_level(const WellMode& mode, const RunConfig& cfg, double t, const KernelOptions& opt = {});

/// Large-time level lambda^{1/nu} / nu^2 and the level-spacing unit
/// (pi^2 / (2 a^2 N_m))^{1/nu} / nu^2.
double energy_level_limit(const WellMode& mode, const RunConfig& cfg);
double energy_spacing_unit(double a, const RunConfig& cfg);

// ---- diagnostics on fields ----------------------------------------------

/// int |psi|^2 dx, trapezoid rule on the field grid.
double total_probability(const GridField& field);

/// Stack of fields sampled at t_k = k * step on a shared spatial grid.
struct FieldHistory {
    std::vector<double> positions;
    Domain domain = Domain::Line;
    double box_width = 0.0;
    double step = 0.0;
    std::vector<std::vector<cplx>> frames;

    GridField frame(std::size_t k) const;
};

/// psi~ = D^{1-nu} psi at frame `last` (default: the final frame), per x.
/// nu == 1 gives psi itself.
GridField weighted_history(const FieldHistory& history, FractionalOrder order, std::size_t last = SIZE_MAX);

/// (D^nu psi)(0) read off the equation: (-beta psi0_xx + alpha psi0) / i^nu.
GridField initial_caputo(const GridField& psi0, const RunConfig& cfg);

GridField probability_current(const GridField& psi, const GridField& weighted, const RunConfig& cfg);

/// Source S(x, t); the initial-value memory term is dropped at nu == 1.
GridField source_term(const GridField& psi, const GridField& weighted, const GridField& initial, double t,
                      const RunConfig& cfg);

/// int psi* psi~ dx.
cplx energy_average(const GridField& psi, const GridField& weighted);

/// Trapezoid integral of a field's values.
cplx integrate(const GridField& field);

// ---- recast residual -----------------------------------------------------

/// One modal amplitude sampled at t_k = k * step. eigenvalue is the spatial
/// rate (lambda_n or omega(lambda)); N_v is added from the config.
struct ModalHistory {
    double step;
    std::vector<cplx> amplitudes;
    double eigenvalue;
    cplx initial_velocity = 0.0;   // dA/dt(0), orders 1 < nu <= 2
};

/// Residual of the first-order-in-time form of the modal equation:
///   nu < 1 : A' - [ c D^{1-nu} A + c A(0) t^{nu-1} / Gamma(nu) ],  c = (lambda + N_v) / i^nu
///   nu = 1 : A' - c A
///   nu > 1 : A' - [ c I^{nu-1} A + A'(0) ]
fraccalc::OperatorResidual hamiltonian_recast_residual(const ModalHistory& history, const RunConfig& cfg,
                                                       const fraccalc::ResidualWindow& window = {});

/// Node-wise maximum over several modes (e.g. every wavenumber of a packet).
fraccalc::OperatorResidual hamiltonian_recast_residual(std::span<const ModalHistory> modes, const RunConfig& cfg,
                                                       const fraccalc::ResidualWindow& window = {});

// ---- probability growth --------------------------------------------------

struct ProbabilityEnvelope {
    std::vector<double> window_start;  // start of each one-period window
    std::vector<double> max_gap;       // max | |A|^2 - 1/nu^2 | inside the window
    std::vector<double> lower;         // min |A|^2 inside the window
    double slope = 0.0;                // least-squares log-log slope of max_gap
};

/// Samples |A(t)|^2 on `windows` log-spaced one-period windows in [t_begin, t_end].
ProbabilityEnvelope probability_envelope(const WellMode& mode, const RunConfig& cfg, double t_begin, double t_end,
                                         std::size_t windows, std::size_t samples_per_period = 48,
                                         const KernelOptions& opt = {});

/// min |A|^2 over consecutive periods [k P, (k+1) P], k = 0..periods-1.
std::vector<double> lower_envelope(const WellMode& mode, const RunConfig& cfg, std::size_t periods,
                                   std::size_t samples_per_period = 48, const KernelOptions& opt = {});

struct ContinuitySample {
    double t;
    double dprob_dt;         // centered difference of int |psi|^2
    double source_integral;  // int S dx
};

/// Samples a well mode on a (time step, spatial grid) lattice and compares
/// d/dt int P dx against int S dx at the requested times.
std::vector<ContinuitySample> well_continuity(const WellMode& mode, const RunConfig& cfg,
                                              std::span<const double> times, double step,
                                              std::size_t intervals, const KernelOptions& opt = {});

}  // namespace fracschrod::tfse
