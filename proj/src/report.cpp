#include "dirac2d/report.hpp"

#include <fmt/format.h>
#include <openssl/sha.h>

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace dirac2d {

std::string format_double(double v) { return fmt::format("{}", v); }

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), digest);
    std::string hex;
    hex.reserve(2 * SHA256_DIGEST_LENGTH);
    static const char* k = "0123456789abcdef";
    for (unsigned char c : digest) {
        hex.push_back(k[c >> 4]);
        hex.push_back(k[c & 0xf]);
    }
    return hex;
}

namespace {

std::string csv_field(const std::string& s) {
    bool needs = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

} // namespace

std::string csv_encode(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ",";
        out += csv_field(header[i]);
    }
    out += "\r\n";
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::invalid_argument("csv_encode: row width differs from header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += csv_field(row[i]);
        }
        out += "\r\n";
    }
    return out;
}

ReportSink::ReportSink(std::string out_dir, OutFormat format)
    : dir_(std::move(out_dir)), format_(format) {
    std::filesystem::create_directories(dir_);
}

void ReportSink::emit(const std::string& filename, const std::string& bytes) {
    std::string path = dir_ + "/" + filename;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("ReportSink: cannot open " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("ReportSink: write failed for " + path);
    hashes_.emplace_back(filename, sha256_hex(bytes));
}

void ReportSink::add_table(const std::string& name, const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& rows) {
    if (format_ == OutFormat::csv || format_ == OutFormat::both)
        emit(name + ".csv", csv_encode(header, rows));
    if (format_ == OutFormat::json || format_ == OutFormat::both) {
        nlohmann::json j;
        j["header"] = header;
        j["rows"] = rows;
        emit(name + ".json", j.dump(2) + "\n");
    }
}

void ReportSink::add_json(const std::string& name, const nlohmann::json& payload) {
    emit(name + ".json", payload.dump(2) + "\n");
}

void ReportSink::write_manifest(const nlohmann::json& run_info) {
    nlohmann::json m = run_info;
    nlohmann::json files = nlohmann::json::array();
    for (const auto& [name, hash] : hashes_) {
        files.push_back({{"file", name}, {"sha256", hash}});
    }
    m["files"] = files;
    std::string path = dir_ + "/manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("ReportSink: cannot open " + path);
    std::string bytes = m.dump(2) + "\n";
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

} // namespace dirac2d
