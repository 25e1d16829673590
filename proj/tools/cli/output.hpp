#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace tfse_cli {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

/// Numeric table with `#` metadata lines ahead of a one-line header.
struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_meta(std::string key, std::string value) { meta.emplace_back(std::move(key), std::move(value)); }
    void add_meta(std::string key, double value) { meta.emplace_back(std::move(key), format_number(value)); }
};

void write_csv(std::ostream& os, const Table& table);
void write_json(std::ostream& os, const Table& table);

/// Parses text written by write_csv; metadata lines are kept.
Table read_csv(std::istream& is);

enum class Format { Csv, Json };
Format parse_format(const std::string& name);
const char* extension(Format f);

/// Writes the table and returns the bytes written, for checksumming.
std::string render(const Table& table, Format f);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

/// "start:stop:count"; count 1 needs start == stop.
std::vector<double> parse_grid(const std::string& text);

struct OutputRecord {
    std::string file;      // relative to the manifest's directory
    std::string fnv1a64;
    std::size_t bytes = 0;
};

struct RunManifest {
    std::string tool = "tfse";
    std::string version;
    std::string command;
    std::vector<std::string> argv;                 // subcommand arguments without the output location
    std::map<std::string, std::string> parameters; // every option with its resolved value
    std::map<std::string, double> tolerances;
    unsigned threads = 1;
    std::vector<OutputRecord> outputs;

    std::string to_json() const;
    static RunManifest from_json(const std::string& text);
};

/// Writes bytes to dir/name and records the checksum in the manifest.
void emit_file(const std::filesystem::path& dir, const std::string& name, const std::string& bytes,
               RunManifest& manifest);

}  // namespace tfse_cli
