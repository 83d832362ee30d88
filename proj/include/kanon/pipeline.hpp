#ifndef KANON_PIPELINE_HPP
#define KANON_PIPELINE_HPP

#include "kanon/realize.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace kanon {

inline constexpr const char* kVersion = "1.0.0";

// Exit codes shared by the library pipeline and the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;      // I/O or validation failure
inline constexpr int kExitInfeasible = 2; // strict realization has no solution
inline constexpr int kExitTimeout = 3;    // solver limit reached

struct PipelineConfig {
    std::filesystem::path input;
    std::filesystem::path out_graph;
    std::filesystem::path report;
    std::vector<int> ks;       // one or more anonymity levels (batch mode)
    int t = 0;                 // zero by default: the sensitive-data setting
    RealizationKind mode = RealizationKind::relaxed;
    double lambda = 1.0;
    double time_limit_seconds = 60.0;
    std::optional<int> a_override; // replaces the computed per-chunk caps
    std::optional<int> d_override;
    std::filesystem::path export_lp; // when set, dump the model in LP format
};

struct RunSummary {
    int exit_code = kExitOk;
    std::string line; // one-line outcome for stdout
};

/// load -> anonymize sequence -> realize -> apply -> evaluate -> report.
/// With several k values, per-k artifacts get a ".k<K>" suffix and the
/// report path receives the cross-k summary plus a sibling CSV of per-k
/// errors.
RunSummary run_pipeline(const PipelineConfig& cfg);

/// Metric + clustering comparison of two already-written graphs.
RunSummary evaluate(const std::filesystem::path& original, const std::filesystem::path& anonymized,
                    const std::filesystem::path& report);

} // namespace kanon

#endif
