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

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

bool uniform(std::span<const double> x, double rel) {
    const double h = x[1] - x[0];
    if (!(h > 0.0)) return false;
    for (std::size_t k = 1; k < x.size(); ++k) {
        if (std::abs((x[k] - x[k - 1]) - h) > rel * h) return false;
    }
    return true;
}

}  // namespace

RunConfig::RunConfig(FractionalOrder order, double mass, double potential)
    : nu(order), n_m(mass), n_v(potential) {
    require_finite(mass, "n_m");
    require_finite(potential, "n_v");
    if (!(mass > 0.0)) throw std::invalid_argument("RunConfig: n_m must be > 0");
    if (potential < 0.0) throw std::invalid_argument("RunConfig: n_v must be >= 0");
}

std::vector<double> uniform_grid(double start, double stop, std::size_t count) {
    require_finite(start, "grid start");
    require_finite(stop, "grid stop");
    if (count < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
    if (!(stop > start)) throw std::invalid_argument("uniform_grid: stop must exceed start");
    std::vector<double> g(count);
    const double h = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) g[k] = start + static_cast<double>(k) * h;
    g.back() = stop;
    return g;
}

double SpectralPacket::spacing() const {
    return wavenumbers.size() > 1 ? wavenumbers[1] - wavenumbers[0] : 0.0;
}

void SpectralPacket::validate() const {
    const std::size_t n = wavenumbers.size();
    if (n < 3) throw std::invalid_argument("SpectralPacket: need at least 3 wavenumbers");
    if (amplitudes.size() != n) throw std::invalid_argument("SpectralPacket: amplitude count mismatch");
    if (has_split() && (oscillatory.size() != n || decay.size() != n)) {
        throw std::invalid_argument("SpectralPacket: split piece count mismatch");
    }
    if (!uniform(wavenumbers, 1e-9)) throw std::invalid_argument("SpectralPacket: grid is not uniform");
    const double span = wavenumbers.back() - wavenumbers.front();
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(wavenumbers[k] + wavenumbers[n - 1 - k]) > 1e-9 * span) {
            throw std::invalid_argument("SpectralPacket: grid is not symmetric about 0");
        }
    }
    double norm = 0.0;
    for (const cplx& a : amplitudes) norm += std::norm(a);
    if (!std::isfinite(norm)) throw std::invalid_argument("SpectralPacket: non-finite amplitudes");
}

SpectralPacket gaussian_packet(double center, double width, double lambda_max, std::size_t count, cplx scale) {
    require_finite(center, "packet center");
    if (!(width > 0.0) || !std::isfinite(width)) throw std::invalid_argument("gaussian_packet: width must be > 0");
    if (!(lambda_max > 0.0)) throw std::invalid_argument("gaussian_packet: lambda_max must be > 0");
    SpectralPacket p;
    p.wavenumbers = uniform_grid(-lambda_max, lambda_max, count);
    p.amplitudes.resize(count);
    const double norm = std::pow(8.0 * kPi * width * width, 0.25);
    for (std::size_t k = 0; k < count; ++k) {
        const double l = p.wavenumbers[k];
        p.amplitudes[k] = scale * norm * std::exp(-width * width * l * l) * std::polar(1.0, -l * center);
    }
    return p;
}

SpectralPacket zero_packet(const SpectralPacket& like) {
    SpectralPacket p;
    p.wavenumbers = like.wavenumbers;
    p.amplitudes.assign(like.wavenumbers.size(), 0.0);
    p.time = like.time;
    return p;
}

void GridField::validate() const {
    if (positions.size() < 3) throw std::invalid_argument("GridField: need at least 3 points");
    if (values.size() != positions.size()) throw std::invalid_argument("GridField: value count mismatch");
    if (!uniform(positions, 1e-9)) throw std::invalid_argument("GridField: positions are not uniform");
    if (domain == Domain::Box) {
        if (!(box_width > 0.0)) throw std::invalid_argument("GridField: box width must be > 0");
        if (std::abs(values.front()) > 1e-12 || std::abs(values.back()) > 1e-12) {
            throw std::invalid_argument("GridField: box field does not vanish at the walls");
        }
    }
}

double WellMode::basis(double x) const { return std::sqrt(2.0 / a) * std::sin(n * kPi * x / a); }

void TimeSeries::validate() const {
    if (times.size() != values.size()) throw std::invalid_argument("TimeSeries: size mismatch");
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!(times[k] > times[k - 1])) throw std::invalid_argument("TimeSeries: times must increase strictly");
    }
}

// ---- free particle ---------------------------------------------------------

SpectralPacket free_spectrum_evolve(const SpectralPacket& packet0, const RunConfig& cfg, double t,
                                    const KernelOptions& opt) {
    if (!cfg.nu.sub_unit()) throw InvalidOrder("free_spectrum_evolve: 0 < nu <= 1 only");
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("free_spectrum_evolve: t must be >= 0");
    packet0.validate();
    const std::size_t n = packet0.wavenumbers.size();
    SpectralPacket out;
    out.wavenumbers = packet0.wavenumbers;
    out.amplitudes.resize(n);
    out.oscillatory.resize(n);
    out.decay.resize(n);
    out.time = packet0.time + t;
    parallel_for(n, [&](std::size_t k) {
        const cplx a0 = packet0.amplitudes[k];
        const auto d = specfun::ml_complex_decomposed(cfg.dispersion(packet0.wavenumbers[k]), Ray::MinusI, cfg.nu,
                                                      t, opt);
        out.amplitudes[k] = a0 * d.total;
        out.oscillatory[k] = a0 * d.oscillatory;
        out.decay[k] = -a0 * d.decay;
    });
    return out;
}

namespace {

std::vector<cplx> transform_values(const SpectralPacket& packet, const std::vector<cplx>& amps,
                                   std::span<const double> x) {
    const std::size_t n = packet.wavenumbers.size();
    const double scale = packet.spacing() / (2.0 * kPi);
    std::vector<cplx> out(x.size());
    parallel_for(x.size(), [&](std::size_t j) {
        cplx acc{};
        for (std::size_t k = 0; k < n; ++k) {
            const double w = (k == 0 || k + 1 == n) ? 0.5 : 1.0;
            acc += w * amps[k] * std::polar(1.0, packet.wavenumbers[k] * x[j]);
        }
        out[j] = scale * acc;
    });
    return out;
}

GridField line_field(std::span<const double> x, std::vector<cplx> values) {
    GridField f;
    f.positions.assign(x.begin(), x.end());
    f.values = std::move(values);
    f.domain = Domain::Line;
    return f;
}

}  // namespace

GridField inverse_transform(const SpectralPacket& packet, std::span<const double> x) {
    packet.validate();
    return line_field(x, transform_values(packet, packet.amplitudes, x));
}

FreeFields free_field(const SpectralPacket& packet, std::span<const double> x) {
    packet.validate();
    FreeFields f;
    f.psi = line_field(x, transform_values(packet, packet.amplitudes, x));
    if (packet.has_split()) {
        f.psi_s = line_field(x, transform_values(packet, packet.oscillatory, x));
        f.psi_d = line_field(x, transform_values(packet, packet.decay, x));
    } else {
        f.psi_s = f.psi;
        f.psi_d = line_field(x, std::vector<cplx>(x.size(), 0.0));
    }
    return f;
}

SpectralPacket free_spectrum_high_order(const SpectralPacket& packet0, const SpectralPacket& packet1,
                                        const RunConfig& cfg, double t, const KernelOptions& opt) {
    if (cfg.nu.sub_unit()) throw InvalidOrder("free_spectrum_high_order: 1 < nu <= 2 only");
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("free_spectrum_high_order: t must be >= 0");
    packet0.validate();
    packet1.validate();
    if (packet0.wavenumbers != packet1.wavenumbers) {
        throw std::invalid_argument("free_spectrum_high_order: packets must share a grid");
    }
    const std::size_t n = packet0.wavenumbers.size();
    SpectralPacket out;
    out.wavenumbers = packet0.wavenumbers;
    out.amplitudes.resize(n);
    out.time = packet0.time + t;
    parallel_for(n, [&](std::size_t k) {
        out.amplitudes[k] = specfun::ml_two_ic(cfg.dispersion(packet0.wavenumbers[k]), cfg.nu, packet0.amplitudes[k],
                                               packet1.amplitudes[k], t, Ray::MinusI, opt);
    });
    return out;
}

double spectral_probability(const SpectralPacket& packet) {
    packet.validate();
    const std::size_t n = packet.amplitudes.size();
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double w = (k == 0 || k + 1 == n) ? 0.5 : 1.0;
        acc += w * std::norm(packet.amplitudes[k]);
    }
    return acc * packet.spacing() / (2.0 * kPi);
}

// ---- infinite well ---------------------------------------------------------

WellMode well_mode(int n, double a, const RunConfig& cfg) {
    if (n < 1) throw std::invalid_argument("well_mode: n must be >= 1");
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("well_mode: a must be > 0");
    const double k = n * kPi / a;
    const double lambda = k * k * cfg.beta();
    return {n, a, lambda, lambda};
}

cplx well_amplitude(const WellMode& mode, const RunConfig& cfg, double t, const KernelOptions& opt) {
    if (!cfg.nu.sub_unit()) throw InvalidOrder("well_amplitude: 0 < nu <= 1 only");
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("well_amplitude: t must be >= 0");
    return specfun::ml_complex_decomposed(mode.omega_n + cfg.alpha(), Ray::MinusI, cfg.nu, t, opt).total;
}

GridField well_field(const WellMode& mode, cplx amplitude, std::size_t intervals) {
    if (intervals < 2) throw std::invalid_argument("well_field: need at least 2 intervals");
    GridField f;
    f.positions = uniform_grid(0.0, mode.a, intervals + 1);
    f.values.resize(intervals + 1);
    for (std::size_t j = 0; j <= intervals; ++j) f.values[j] = amplitude * mode.basis(f.positions[j]);
    f.values.front() = 0.0;
    f.values.back() = 0.0;
    f.domain = Domain::Box;
    f.box_width = mode.a;
    return f;
}

cplx energy_level(const WellMode& mode, const RunConfig& cfg, double t, const KernelOptions& opt) {
    if (!cfg.nu.sub_unit()) throw InvalidOrder("energy_level: 0 < nu <= 1 only");
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("energy_level: t must be >= 0");
    if (t == 0.0 && !cfg.nu.is_one()) throw SingularTime("energy_level: dA/dt diverges at t = 0 for nu < 1");
    const double rate = mode.omega_n + cfg.alpha();
    const cplx a = specfun::ml_complex_decomposed(rate, Ray::MinusI, cfg.nu, t, opt).total;
    const cplx da = specfun::ml_complex_decomposed_dt(rate, Ray::MinusI, cfg.nu, t, opt);
    return cplx{0.0, 1.0} * std::conj(a) * da;
}

double energy_level_limit(const WellMode& mode, const RunConfig& cfg) {
    const double nu = cfg.nu.value();
    return std::pow(mode.omega_n + cfg.alpha(), 1.0 / nu) / (nu * nu);
}

double energy_spacing_unit(double a, const RunConfig& cfg) {
    if (!(a > 0.0)) throw std::invalid_argument("energy_spacing_unit: a must be > 0");
    const double nu = cfg.nu.value();
    return std::pow(kPi * kPi * cfg.beta() / (a * a), 1.0 / nu) / (nu * nu);
}

}  // namespace fracschrod::tfse
