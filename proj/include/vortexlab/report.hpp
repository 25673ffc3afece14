#ifndef VORTEXLAB_REPORT_HPP
#define VORTEXLAB_REPORT_HPP

#include <map>
#include <string>
#include <vector>

#include "vortexlab/kernels.hpp"
#include "vortexlab/numerics.hpp"

namespace vortexlab {

std::string sha256_hex(const std::string& data);
std::string sha256_file(const std::string& path);

void ensure_directory(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Columnar CSV with a header row; floats printed with 17 significant digits
// so the files are bit-stable and round-trip exactly.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<VecXd>& columns);
std::vector<VecXd> read_csv(const std::string& path, std::vector<std::string>* header = nullptr);

// Run inventory: every emitted file with its checksum, plus stage wall times
// and the seeds used.  `write` emits <dir>/manifest.json.
class RunManifest {
public:
    RunManifest(std::string out_dir, std::string config_hash);

    void record_file(const std::string& relative_path);
    void record_timing(const std::string& stage, double seconds);
    void record_seed(std::uint64_t seed);
    void write() const;

    const std::map<std::string, std::string>& files() const { return files_; }

private:
    std::string out_dir_;
    std::string config_hash_;
    std::map<std::string, std::string> files_;       // path -> sha256
    std::vector<std::pair<std::string, double>> timings_;
    std::vector<std::uint64_t> seeds_;
};

// KernelSet persistence: j_omega.csv, f_parallel.csv and kernels.json under
// `dir` (the JSON holds the scalars and grid metadata).  Loading re-reads all
// three; a save/load/save round trip is byte-identical.
struct KernelScalars {
    double b_state = 0.0;
    double eta_ohmic = 0.0;
    bool eta_non_ohmic = false;
    double k_term_field = 0.0;
    double k_term_spectral = 0.0;
};
void save_kernel_set(const std::string& dir, const KernelSet& ks,
                     const KernelScalars& extras = {});
KernelSet load_kernel_set(const std::string& dir, KernelScalars* extras = nullptr);

} // namespace vortexlab

#endif
