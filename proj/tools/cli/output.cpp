#include "output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tfse_cli {

using nlohmann::json;

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const Table& table) {
    for (const auto& [k, v] : table.meta) os << "# " << k << "=" << v << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_number(row[c]);
        os << "\n";
    }
}

void write_json(std::ostream& os, const Table& table) {
    json meta = json::object();
    for (const auto& [k, v] : table.meta) meta[k] = v;
    json rows = json::array();
    for (const auto& row : table.rows) rows.push_back(row);
    json doc{{"meta", meta}, {"columns", table.columns}, {"rows", rows}};
    os << doc.dump() << "\n";
}

namespace {

double parse_number(const std::string& s) {
    if (s == "nan") return NAN;
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

}  // namespace

Table read_csv(std::istream& is) {
    Table t;
    std::string line;
    bool header = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            const std::string key = line.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
            t.meta.emplace_back(key, eq == std::string::npos ? "" : line.substr(eq + 1));
        } else if (!header) {
            t.columns = split(line, ',');
            header = true;
        } else {
            std::vector<double> row;
            for (const auto& cell : split(line, ',')) row.push_back(parse_number(cell));
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw std::invalid_argument("unknown format '" + name + "'");
}

const char* extension(Format f) { return f == Format::Csv ? ".csv" : ".json"; }

std::string render(const Table& table, Format f) {
    std::ostringstream os;
    if (f == Format::Csv) {
        write_csv(os, table);
    } else {
        write_json(os, table);
    }
    return os.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::vector<double> parse_grid(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw std::invalid_argument("grid '" + text + "' must look like start:stop:count");
    const double a = parse_number(parts[0]);
    const double b = parse_number(parts[1]);
    std::size_t n = 0;
    const auto res = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), n);
    if (res.ec != std::errc() || res.ptr != parts[2].data() + parts[2].size() || n == 0) {
        throw std::invalid_argument("grid '" + text + "': count must be a positive integer");
    }
    if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("grid '" + text + "': non-finite bound");
    if (n == 1) {
        if (a != b) throw std::invalid_argument("grid '" + text + "': a single point needs start == stop");
        return {a};
    }
    if (!(b > a)) throw std::invalid_argument("grid '" + text + "': stop must exceed start");
    std::vector<double> g(n);
    for (std::size_t k = 0; k < n; ++k) g[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
    return g;
}

std::string RunManifest::to_json() const {
    json outs = json::array();
    for (const auto& o : outputs) outs.push_back({{"file", o.file}, {"fnv1a64", o.fnv1a64}, {"bytes", o.bytes}});
    json doc{{"tool", tool},
             {"version", version},
             {"command", command},
             {"argv", argv},
             {"parameters", parameters},
             {"tolerances", tolerances},
             {"threads", threads},
             {"outputs", outs}};
    return doc.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
    const json doc = json::parse(text);
    RunManifest m;
    m.tool = doc.at("tool").get<std::string>();
    m.version = doc.at("version").get<std::string>();
    m.command = doc.at("command").get<std::string>();
    m.argv = doc.at("argv").get<std::vector<std::string>>();
    m.parameters = doc.at("parameters").get<std::map<std::string, std::string>>();
    m.tolerances = doc.at("tolerances").get<std::map<std::string, double>>();
    m.threads = doc.at("threads").get<unsigned>();
    for (const auto& o : doc.at("outputs")) {
        m.outputs.push_back({o.at("file").get<std::string>(), o.at("fnv1a64").get<std::string>(),
                             o.at("bytes").get<std::size_t>()});
    }
    return m;
}

void emit_file(const std::filesystem::path& dir, const std::string& name, const std::string& bytes,
               RunManifest& manifest) {
    std::filesystem::create_directories(dir);
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    f << bytes;
    manifest.outputs.push_back({name, hex64(fnv1a64(bytes)), bytes.size()});
}

}  // namespace tfse_cli
