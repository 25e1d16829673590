#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "fracschrod/errors.hpp"
#include "fracschrod/parallel.hpp"
#include "fracschrod/tfse.hpp"
#include "fracschrod/verify.hpp"
#include "output.hpp"

namespace tfse_cli {

namespace fs = std::filesystem;
using fracschrod::specfun::FractionalOrder;
using fracschrod::specfun::KernelOptions;
using fracschrod::specfun::Ray;
using cplx = std::complex<double>;

namespace {

// Name/value pairs in flag order; they become both the manifest parameters
// and the argv a replay feeds back in.
struct Params {
    std::vector<std::pair<std::string, std::string>> items;

    void add(const std::string& key, const std::string& value) { items.emplace_back(key, value); }
    void add(const std::string& key, double value) { items.emplace_back(key, format_number(value)); }
    void flag(const std::string& key, bool on) {
        if (on) items.emplace_back(key, "");
    }
};

RunManifest start_manifest(const std::string& command, const Params& p, double tol) {
    RunManifest m;
    m.version = FRACSCHROD_VERSION;
    m.command = command;
    for (const auto& [k, v] : p.items) {
        m.argv.push_back("--" + k);
        if (!v.empty()) m.argv.push_back(v);
        m.parameters[k] = v.empty() ? "true" : v;
    }
    m.tolerances["kernel_abs_tol"] = tol;
    m.threads = fracschrod::worker_count();
    return m;
}

void write_manifest(const fs::path& dir, const std::string& name, const RunManifest& m) {
    fs::create_directories(dir);
    std::ofstream f(dir / name);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    f << m.to_json();
}

std::string zero_pad(std::size_t k, std::size_t total) {
    const std::size_t width = std::to_string(total > 0 ? total - 1 : 0).size();
    std::string s = std::to_string(k);
    return std::string(width > s.size() ? width - s.size() : 0, '0') + s;
}

// ---- ml ------------------------------------------------------------------

struct MlArgs {
    double nu = 0.5;
    double sigma = 1.0;
    std::string sign = "plus";
    std::string t_grid;
    double tol = 1e-10;
    std::string format = "csv";
    std::string output;
};

int cmd_ml(const MlArgs& a, std::ostream& out) {
    const FractionalOrder order(a.nu);
    if (!order.sub_unit()) throw fracschrod::InvalidOrder("ml: 0 < nu <= 1 only");
    const std::vector<double> ts = parse_grid(a.t_grid);
    const Ray ray = a.sign == "plus" ? Ray::PlusI : Ray::MinusI;
    const Format fmt = parse_format(a.format);

    Params p;
    p.add("nu", a.nu);
    p.add("sigma", a.sigma);
    p.add("sign", a.sign);
    p.add("t-grid", a.t_grid);
    p.add("tol", a.tol);
    p.add("format", a.format);

    Table t;
    t.add_meta("command", "ml");
    t.add_meta("nu", a.nu);
    t.add_meta("sigma", a.sigma);
    t.add_meta("sign", a.sign);
    t.add_meta("tol", a.tol);
    t.columns = {"t", "re_total", "im_total", "re_osc", "im_osc", "re_decay", "im_decay"};
    t.rows.resize(ts.size());
    KernelOptions ko;
    ko.tol = a.tol;
    fracschrod::parallel_for(ts.size(), [&](std::size_t k) {
        const auto d = fracschrod::specfun::ml_complex_decomposed(a.sigma, ray, order, ts[k], ko);
        t.rows[k] = {ts[k], d.total.real(), d.total.imag(), d.oscillatory.real(), d.oscillatory.imag(),
                     d.decay.real(), d.decay.imag()};
    });

    const std::string bytes = render(t, fmt);
    if (a.output.empty()) {
        out << bytes;
        return kOk;
    }
    const fs::path path(a.output);
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    RunManifest m = start_manifest("ml", p, a.tol);
    emit_file(dir, path.filename().string(), bytes, m);
    write_manifest(dir, path.stem().string() + ".manifest.json", m);
    return kOk;
}

// ---- well ----------------------------------------------------------------

struct WellArgs {
    double nu = 0.5;
    int n = 1;
    double a = std::numbers::pi;
    double nm = 0.5;
    double nv = 0.0;
    std::string t_grid;
    std::vector<std::string> emit{"probability"};
    double step = 2e-3;
    std::size_t intervals = 128;
    double tol = 1e-10;
    std::string format = "csv";
    std::string out_dir = ".";
};

int cmd_well(const WellArgs& a) {
    using namespace fracschrod::tfse;
    const RunConfig cfg(FractionalOrder(a.nu), a.nm, a.nv);
    if (!cfg.nu.sub_unit()) throw fracschrod::InvalidOrder("well: 0 < nu <= 1 only");
    const WellMode mode = well_mode(a.n, a.a, cfg);
    const std::vector<double> ts = parse_grid(a.t_grid);
    const Format fmt = parse_format(a.format);
    KernelOptions ko;
    ko.tol = a.tol;

    Params p;
    p.add("nu", a.nu);
    p.add("n", std::to_string(a.n));
    p.add("a", a.a);
    p.add("nm", a.nm);
    p.add("nv", a.nv);
    p.add("t-grid", a.t_grid);
    std::string emit_list;
    for (const auto& e : a.emit) emit_list += (emit_list.empty() ? "" : ",") + e;
    p.add("emit", emit_list);
    p.add("step", a.step);
    p.add("intervals", std::to_string(a.intervals));
    p.add("tol", a.tol);
    p.add("format", a.format);
    RunManifest m = start_manifest("well", p, a.tol);

    auto base_meta = [&](Table& t, const std::string& what) {
        t.add_meta("command", "well");
        t.add_meta("emit", what);
        t.add_meta("nu", a.nu);
        t.add_meta("n", std::to_string(a.n));
        t.add_meta("a", a.a);
        t.add_meta("nm", a.nm);
        t.add_meta("nv", a.nv);
        t.add_meta("lambda_n", mode.lambda_n);
    };
    const double nu = cfg.nu.value();

    for (const std::string& what : a.emit) {
        Table t;
        base_meta(t, what);
        t.rows.resize(ts.size());
        if (what == "amplitude" || what == "probability") {
            if (what == "amplitude") {
                t.columns = {"t", "re", "im", "abs"};
            } else {
                t.columns = {"t", "probability"};
                t.add_meta("limit", 1.0 / (nu * nu));
            }
            fracschrod::parallel_for(ts.size(), [&](std::size_t k) {
                const cplx amp = well_amplitude(mode, cfg, ts[k], ko);
                if (what == "amplitude") {
                    t.rows[k] = {ts[k], amp.real(), amp.imag(), std::abs(amp)};
                } else {
                    // The basis is normalized, so int |psi|^2 dx = |A|^2.
                    t.rows[k] = {ts[k], std::norm(amp)};
                }
            });
        } else if (what == "energy") {
            t.columns = {"t", "re_energy", "im_energy"};
            t.add_meta("limit", energy_level_limit(mode, cfg));
            t.add_meta("spacing_unit", energy_spacing_unit(a.a, cfg));
            fracschrod::parallel_for(ts.size(), [&](std::size_t k) {
                const cplx e = energy_level(mode, cfg, ts[k], ko);
                t.rows[k] = {ts[k], e.real(), e.imag()};
            });
        } else if (what == "continuity") {
            t.columns = {"t", "dprob_dt", "source_integral", "difference"};
            t.add_meta("step", a.step);
            t.add_meta("intervals", std::to_string(a.intervals));
            const auto samples = well_continuity(mode, cfg, ts, a.step, a.intervals, ko);
            for (std::size_t k = 0; k < samples.size(); ++k) {
                const auto& s = samples[k];
                t.rows[k] = {s.t, s.dprob_dt, s.source_integral, s.dprob_dt - s.source_integral};
            }
        } else {
            throw std::invalid_argument("well: unknown --emit value '" + what + "'");
        }
        emit_file(a.out_dir, "well_" + what + extension(fmt), render(t, fmt), m);
    }
    write_manifest(a.out_dir, "well.manifest.json", m);
    return kOk;
}

// ---- free ----------------------------------------------------------------

struct FreeArgs {
    double nu = 0.5;
    double nm = 0.5;
    double nv = 0.0;
    std::string packet = "gaussian:0:1";
    std::string packet1;
    std::string x_grid = "-20:20:401";
    std::string lambda_grid = "-8:8:321";
    std::string t_grid;
    bool high_order = false;
    double tol = 1e-10;
    std::string format = "csv";
    std::string out_dir = ".";
};

struct PacketSpec {
    double center = 0.0;
    double width = 1.0;
    double scale = 1.0;
};

PacketSpec parse_packet(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string s; std::getline(ss, s, ':');) parts.push_back(s);
    if (parts.size() < 3 || parts.size() > 4 || parts[0] != "gaussian") {
        throw std::invalid_argument("packet '" + text + "' must look like gaussian:center:width[:scale]");
    }
    PacketSpec p;
    try {
        p.center = std::stod(parts[1]);
        p.width = std::stod(parts[2]);
        if (parts.size() == 4) p.scale = std::stod(parts[3]);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("packet '" + text + "': bad number");
    }
    return p;
}

int cmd_free(const FreeArgs& a) {
    using namespace fracschrod::tfse;
    const RunConfig cfg(FractionalOrder(a.nu), a.nm, a.nv);
    if (!cfg.nu.sub_unit() && !a.high_order) {
        throw std::invalid_argument("free: 1 < nu <= 2 needs --high-order");
    }
    if (cfg.nu.sub_unit() && a.high_order) throw std::invalid_argument("free: --high-order needs 1 < nu <= 2");
    if (!a.packet1.empty() && !a.high_order) throw std::invalid_argument("free: --packet1 needs --high-order");
    const std::vector<double> xs = parse_grid(a.x_grid);
    const std::vector<double> lambdas = parse_grid(a.lambda_grid);
    const std::vector<double> ts = parse_grid(a.t_grid);
    if (lambdas.size() < 3 || std::abs(lambdas.front() + lambdas.back()) > 1e-12 * lambdas.back()) {
        throw std::invalid_argument("free: --lambda-grid must be symmetric, -L:L:count with count >= 3");
    }
    const Format fmt = parse_format(a.format);
    KernelOptions ko;
    ko.tol = a.tol;

    const PacketSpec s0 = parse_packet(a.packet);
    const SpectralPacket p0 = gaussian_packet(s0.center, s0.width, lambdas.back(), lambdas.size(), s0.scale);
    SpectralPacket p1 = zero_packet(p0);
    if (!a.packet1.empty()) {
        const PacketSpec s1 = parse_packet(a.packet1);
        p1 = gaussian_packet(s1.center, s1.width, lambdas.back(), lambdas.size(), s1.scale);
    }

    Params p;
    p.add("nu", a.nu);
    p.add("nm", a.nm);
    p.add("nv", a.nv);
    p.add("packet", a.packet);
    if (!a.packet1.empty()) p.add("packet1", a.packet1);
    p.add("x-grid", a.x_grid);
    p.add("lambda-grid", a.lambda_grid);
    p.add("t-grid", a.t_grid);
    p.flag("high-order", a.high_order);
    p.add("tol", a.tol);
    p.add("format", a.format);
    RunManifest m = start_manifest("free", p, a.tol);

    Table prob;
    prob.add_meta("command", "free");
    prob.add_meta("nu", a.nu);
    prob.add_meta("limit", a.high_order ? NAN : 1.0 / (a.nu * a.nu));
    prob.columns = {"t", "spectral_probability", "spatial_probability"};

    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double t = ts[k];
        const SpectralPacket pk =
            a.high_order ? free_spectrum_high_order(p0, p1, cfg, t, ko) : free_spectrum_evolve(p0, cfg, t, ko);
        const FreeFields f = free_field(pk, xs);

        Table field;
        field.add_meta("command", "free");
        field.add_meta("nu", a.nu);
        field.add_meta("t", t);
        field.columns = {"x", "re", "im", "abs2"};
        for (std::size_t j = 0; j < xs.size(); ++j) {
            const cplx v = f.psi.values[j];
            field.rows.push_back({xs[j], v.real(), v.imag(), std::norm(v)});
        }
        const std::string tag = zero_pad(k, ts.size());
        emit_file(a.out_dir, "field_" + tag + extension(fmt), render(field, fmt), m);

        if (pk.has_split()) {
            Table split;
            split.add_meta("command", "free");
            split.add_meta("nu", a.nu);
            split.add_meta("t", t);
            split.columns = {"x", "re_s", "im_s", "re_d", "im_d"};
            for (std::size_t j = 0; j < xs.size(); ++j) {
                const cplx s = f.psi_s.values[j];
                const cplx d = f.psi_d.values[j];
                split.rows.push_back({xs[j], s.real(), s.imag(), d.real(), d.imag()});
            }
            emit_file(a.out_dir, "split_" + tag + extension(fmt), render(split, fmt), m);
        }
        prob.rows.push_back({t, spectral_probability(pk), total_probability(f.psi)});
    }
    emit_file(a.out_dir, std::string("probability") + extension(fmt), render(prob, fmt), m);
    write_manifest(a.out_dir, "free.manifest.json", m);
    return kOk;
}

// ---- verify --------------------------------------------------------------

int cmd_verify(const std::string& suite, bool quick, std::ostream& out) {
    fracschrod::verify::VerifyOptions opt;
    opt.quick = quick;
    const auto results = fracschrod::verify::run_suite(fracschrod::verify::parse_suite(suite), opt);
    int failed = 0;
    for (const auto& r : results) {
        out << fracschrod::verify::format_line(r) << "\n";
        failed += r.passed ? 0 : 1;
    }
    out << results.size() << " checks, " << failed << " failed\n";
    return failed == 0 ? kOk : kVerificationFailed;
}

// ---- replay --------------------------------------------------------------

bool same_numbers(const std::string& original, const std::string& replayed, const std::string& name, double rel) {
    if (original == replayed) return true;
    const bool json_file = name.size() >= 5 && name.substr(name.size() - 5) == ".json";
    std::vector<std::vector<double>> ra, rb;
    if (json_file) {
        const auto ja = nlohmann::json::parse(original);
        const auto jb = nlohmann::json::parse(replayed);
        auto rows = [](const nlohmann::json& j) {
            std::vector<std::vector<double>> r;
            for (const auto& row : j.at("rows")) {
                std::vector<double> v;
                for (const auto& x : row) v.push_back(x.is_null() ? NAN : x.get<double>());
                r.push_back(v);
            }
            return r;
        };
        ra = rows(ja);
        rb = rows(jb);
    } else {
        std::istringstream sa(original), sb(replayed);
        ra = read_csv(sa).rows;
        rb = read_csv(sb).rows;
    }
    if (ra.size() != rb.size()) return false;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        if (ra[i].size() != rb[i].size()) return false;
        for (std::size_t j = 0; j < ra[i].size(); ++j) {
            const double x = ra[i][j], y = rb[i][j];
            if (std::isnan(x) && std::isnan(y)) continue;
            if (!(std::abs(x - y) <= rel * std::max({1.0, std::abs(x), std::abs(y)}))) return false;
        }
    }
    return true;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot read " + p.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int cmd_replay(const std::string& manifest_path, std::string out_dir, double rel, std::ostream& out,
               std::ostream& err) {
    const fs::path mpath(manifest_path);
    const RunManifest m = RunManifest::from_json(slurp(mpath));
    const fs::path origin = mpath.has_parent_path() ? mpath.parent_path() : fs::path(".");
    if (out_dir.empty()) out_dir = (origin / "replay").string();
    if (m.command != "ml" && m.command != "well" && m.command != "free") {
        throw std::invalid_argument("replay: manifest command '" + m.command + "' cannot be replayed");
    }

    std::vector<std::string> args{m.command};
    args.insert(args.end(), m.argv.begin(), m.argv.end());
    if (m.command == "ml") {
        if (m.outputs.size() != 1) throw std::invalid_argument("replay: ml manifest must list one output");
        args.push_back("--output");
        args.push_back((fs::path(out_dir) / m.outputs.front().file).string());
    } else {
        args.push_back("--out-dir");
        args.push_back(out_dir);
    }
    const int code = run(args, out, err);
    if (code != kOk) return code;

    int mismatches = 0;
    for (const auto& o : m.outputs) {
        const std::string fresh = slurp(fs::path(out_dir) / o.file);
        const bool exact = hex64(fnv1a64(fresh)) == o.fnv1a64;
        bool ok = exact;
        if (!exact) ok = same_numbers(slurp(origin / o.file), fresh, o.file, rel);
        out << (ok ? "match " : "DIFFER ") << o.file << (exact ? " (checksum)" : ok ? " (within tolerance)" : "")
            << "\n";
        mismatches += ok ? 0 : 1;
    }
    return mismatches == 0 ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Time-fractional Schrodinger equation toolkit"};
    app.set_version_flag("--version", FRACSCHROD_VERSION);
    app.set_config("--config", "", "key=value file with one [command] section per subcommand");
    app.require_subcommand(1);

    MlArgs ml;
    auto* ml_cmd = app.add_subcommand("ml", "Mittag-Leffler function on an imaginary ray with its oscillatory/decay split");
    ml_cmd->fallthrough();
    ml_cmd->add_option("--nu", ml.nu, "order, 0 < nu <= 1")->required();
    ml_cmd->add_option("--sigma", ml.sigma, "sigma >= 0")->required();
    ml_cmd->add_option("--sign", ml.sign, "ray (+i or -i)")->check(CLI::IsMember({"plus", "minus"}))->capture_default_str();
    ml_cmd->add_option("--t-grid", ml.t_grid, "start:stop:count")->required();
    ml_cmd->add_option("--tol", ml.tol, "absolute tolerance")->capture_default_str();
    ml_cmd->add_option("--format", ml.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    ml_cmd->add_option("--output", ml.output, "file to write (stdout if omitted)");

    WellArgs well;
    auto* well_cmd = app.add_subcommand("well", "Infinite-well mode: amplitude, probability, energy, continuity");
    well_cmd->fallthrough();
    well_cmd->add_option("--nu", well.nu, "order, 0 < nu <= 1")->required();
    well_cmd->add_option("--n", well.n, "mode number >= 1")->capture_default_str();
    well_cmd->add_option("--a", well.a, "box width")->capture_default_str();
    well_cmd->add_option("--nm", well.nm, "mass in Planck masses")->capture_default_str();
    well_cmd->add_option("--nv", well.nv, "uniform potential in Planck energies")->capture_default_str();
    well_cmd->add_option("--t-grid", well.t_grid, "start:stop:count")->required();
    well_cmd->add_option("--emit", well.emit, "quantities to write")
        ->delimiter(',')
        ->check(CLI::IsMember({"amplitude", "probability", "energy", "continuity"}))
        ->capture_default_str();
    well_cmd->add_option("--step", well.step, "time step of the continuity history")->capture_default_str();
    well_cmd->add_option("--intervals", well.intervals, "spatial intervals for continuity")->capture_default_str();
    well_cmd->add_option("--tol", well.tol, "absolute tolerance")->capture_default_str();
    well_cmd->add_option("--format", well.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    well_cmd->add_option("--out-dir", well.out_dir)->capture_default_str();

    FreeArgs fr;
    auto* free_cmd = app.add_subcommand("free", "Free-particle Gaussian packet evolved in Fourier space");
    free_cmd->fallthrough();
    free_cmd->add_option("--nu", fr.nu, "order, 0 < nu <= 2")->required();
    free_cmd->add_option("--nm", fr.nm, "mass in Planck masses")->capture_default_str();
    free_cmd->add_option("--nv", fr.nv, "uniform potential in Planck energies")->capture_default_str();
    free_cmd->add_option("--packet", fr.packet, "gaussian:center:width[:scale]")->capture_default_str();
    free_cmd->add_option("--packet1", fr.packet1, "initial velocity packet (with --high-order)");
    free_cmd->add_option("--x-grid", fr.x_grid, "start:stop:count")->capture_default_str();
    free_cmd->add_option("--lambda-grid", fr.lambda_grid, "-L:L:count")->capture_default_str();
    free_cmd->add_option("--t-grid", fr.t_grid, "start:stop:count")->required();
    free_cmd->add_flag("--high-order", fr.high_order, "two initial conditions, 1 < nu <= 2");
    free_cmd->add_option("--tol", fr.tol, "absolute tolerance")->capture_default_str();
    free_cmd->add_option("--format", fr.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    free_cmd->add_option("--out-dir", fr.out_dir)->capture_default_str();

    std::string suite = "all";
    bool quick = false;
    auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance checks");
    verify_cmd->fallthrough();
    verify_cmd->add_option("--suite", suite)->check(CLI::IsMember({"specfun", "fraccalc", "tfse", "all"}))
        ->capture_default_str();
    verify_cmd->add_flag("--quick", quick, "smaller grids");

    std::string manifest;
    std::string replay_dir;
    double replay_tol = 1e-12;
    auto* replay_cmd = app.add_subcommand("replay", "Re-run a manifest and compare outputs");
    replay_cmd->fallthrough();
    replay_cmd->add_option("manifest", manifest, "manifest JSON")->required();
    replay_cmd->add_option("--out-dir", replay_dir, "where to write the re-run (default: <manifest dir>/replay)");
    replay_cmd->add_option("--rel-tol", replay_tol, "relative tolerance when bytes differ")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (ml_cmd->parsed()) return cmd_ml(ml, out);
        if (well_cmd->parsed()) return cmd_well(well);
        if (free_cmd->parsed()) return cmd_free(fr);
        if (verify_cmd->parsed()) return cmd_verify(suite, quick, out);
        if (replay_cmd->parsed()) return cmd_replay(manifest, replay_dir, replay_tol, out, err);
    } catch (const fracschrod::DenominatorSingularity& e) {
        err << "numerical failure: " << e.what() << "\n"
            << "hint: near nu = 4/3 a pole of the transform lies on the branch cut; move nu away from 4/3\n";
        return kNumerical;
    } catch (const fracschrod::NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace tfse_cli
