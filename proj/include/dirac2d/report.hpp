#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace dirac2d {

enum class OutFormat { csv, json, both };

std::string format_double(double v); // shortest round-trip decimal
std::string sha256_hex(const std::string& bytes);

// Collects experiment tables and writes them under one directory,
// closing with a manifest that lists every emitted file and its hash.
class ReportSink {
public:
    ReportSink(std::string out_dir, OutFormat format);

    void add_table(const std::string& name, const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows);
    void add_json(const std::string& name, const nlohmann::json& payload);

    // config echo + seed + versions + wall time + per-file hashes
    void write_manifest(const nlohmann::json& run_info);

    const std::string& dir() const { return dir_; }

private:
    void emit(const std::string& filename, const std::string& bytes);

    std::string dir_;
    OutFormat format_;
    std::vector<std::pair<std::string, std::string>> hashes_;
};

std::string csv_encode(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows);

} // namespace dirac2d
