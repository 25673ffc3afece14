#include "vortexlab/report.hpp"

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vortexlab/errors.hpp"

namespace vortexlab {

using nlohmann::json;
namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw io_error("sha256 computation failed");
    }
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string sha256_file(const std::string& path) { return sha256_hex(read_text_file(path)); }

void ensure_directory(const std::string& path) {
    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec) throw io_error("cannot create directory " + path + ": " + ec.message());
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw io_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<VecXd>& columns) {
    if (header.size() != columns.size())
        throw domain_error("write_csv: header/column count mismatch");
    const Eigen::Index rows = columns.empty() ? 0 : columns[0].size();
    for (const auto& c : columns)
        if (c.size() != rows) throw domain_error("write_csv: ragged columns");
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out += ',';
            out += format_g17(columns[i][r]);
        }
        out += '\n';
    }
    write_text_file(path, out);
}

std::vector<VecXd> read_csv(const std::string& path, std::vector<std::string>* header) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw io_error("empty csv: " + path);
    std::vector<std::string> head;
    {
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) head.push_back(tok);
    }
    std::vector<std::vector<double>> cols(head.size());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        std::size_t i = 0;
        while (std::getline(ss, tok, ',')) {
            if (i >= cols.size()) throw io_error("csv row wider than header: " + path);
            cols[i++].push_back(std::stod(tok));
        }
        if (i != cols.size()) throw io_error("csv row narrower than header: " + path);
    }
    if (header) *header = head;
    std::vector<VecXd> out(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i)
        out[i] = Eigen::Map<const VecXd>(cols[i].data(), static_cast<Eigen::Index>(cols[i].size()));
    return out;
}

RunManifest::RunManifest(std::string out_dir, std::string config_hash)
    : out_dir_(std::move(out_dir)), config_hash_(std::move(config_hash)) {}

void RunManifest::record_file(const std::string& relative_path) {
    files_[relative_path] = sha256_file(out_dir_ + "/" + relative_path);
}

void RunManifest::record_timing(const std::string& stage, double seconds) {
    timings_.emplace_back(stage, seconds);
}

void RunManifest::record_seed(std::uint64_t seed) { seeds_.push_back(seed); }

void RunManifest::write() const {
    json j;
    j["config_hash"] = config_hash_;
    j["code_version"] = "vortexlab 0.1.0";
    json files = json::object();
    for (const auto& [path, hash] : files_) files[path] = hash;
    j["files"] = files;
    json timings = json::object();
    for (const auto& [stage, sec] : timings_) timings[stage] = sec;
    j["stage_seconds"] = timings;
    j["seeds"] = seeds_;
    write_text_file(out_dir_ + "/manifest.json", j.dump(2) + "\n");
}

void save_kernel_set(const std::string& dir, const KernelSet& ks, const KernelScalars& extras) {
    ensure_directory(dir);
    write_csv(dir + "/j_omega.csv", {"omega", "j"}, {ks.omega_grid, ks.j_of_omega});
    write_csv(dir + "/f_parallel.csv", {"tau", "f_parallel"}, {ks.tau_grid, ks.f_parallel});
    json j;
    j["b_transverse_virtual"] = ks.b_transverse;
    j["b_transverse_state"] = extras.b_state;
    j["k_spring"] = ks.k_spring;
    j["k_term_field"] = extras.k_term_field;
    j["k_term_spectral"] = extras.k_term_spectral;
    j["eta_ohmic"] = extras.eta_ohmic;
    j["eta_non_ohmic_flag"] = extras.eta_non_ohmic;
    j["eta_broadening"] = ks.eta_broadening;
    if (std::isinf(ks.beta)) j["beta"] = "inf";
    else j["beta"] = ks.beta;
    j["disorder_seed"] = ks.disorder_seed;
    write_text_file(dir + "/kernels.json", j.dump(2) + "\n");
}

KernelSet load_kernel_set(const std::string& dir, KernelScalars* extras) {
    KernelSet ks;
    {
        std::vector<std::string> head;
        auto cols = read_csv(dir + "/j_omega.csv", &head);
        if (cols.size() != 2) throw io_error("bad j_omega.csv in " + dir);
        ks.omega_grid = cols[0];
        ks.j_of_omega = cols[1];
    }
    {
        auto cols = read_csv(dir + "/f_parallel.csv");
        if (cols.size() != 2) throw io_error("bad f_parallel.csv in " + dir);
        ks.tau_grid = cols[0];
        ks.f_parallel = cols[1];
    }
    const json j = json::parse(read_text_file(dir + "/kernels.json"));
    ks.b_transverse = j.at("b_transverse_virtual").get<double>();
    ks.k_spring = j.at("k_spring").get<double>();
    ks.eta_broadening = j.at("eta_broadening").get<double>();
    if (j.at("beta").is_string()) ks.beta = std::numeric_limits<double>::infinity();
    else ks.beta = j.at("beta").get<double>();
    ks.disorder_seed = j.at("disorder_seed").get<std::uint64_t>();
    if (extras) {
        extras->b_state = j.at("b_transverse_state").get<double>();
        extras->eta_ohmic = j.at("eta_ohmic").get<double>();
        extras->eta_non_ohmic = j.at("eta_non_ohmic_flag").get<bool>();
        extras->k_term_field = j.at("k_term_field").get<double>();
        extras->k_term_spectral = j.at("k_term_spectral").get<double>();
    }
    return ks;
}

} // namespace vortexlab
