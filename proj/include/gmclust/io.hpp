#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmclust/baselines.hpp"
#include "gmclust/cpagm.hpp"
#include "gmclust/selection.hpp"
#include "gmclust/simulation.hpp"

namespace gmclust {

using json = nlohmann::json;
namespace fs = std::filesystem;

inline constexpr std::size_t kDefaultTestHorizon = 5;

// ---- datasets ----

/// Long-form CSV `series_id,t,value`, t = 1..L per series. Series keep the
/// order of their first appearance. `source` names the input in errors.
Dataset parse_dataset(std::istream& csv, const std::string& source, const json* metadata = nullptr,
                      std::size_t default_horizon = kDefaultTestHorizon);
Dataset read_dataset(const fs::path& csv, const std::optional<fs::path>& metadata = std::nullopt,
                     std::size_t default_horizon = kDefaultTestHorizon);

/// CSV with shortest round-trip numbers; the metadata file, when requested,
/// records every split and seasonal period.
void write_dataset(const Dataset& data, const fs::path& csv, const std::optional<fs::path>& metadata = std::nullopt);
json dataset_metadata(const Dataset& data);

/// Rows of a `series_id,t,value` file grouped by id without any checks on t,
/// e.g. forecasts keyed by absolute position.
struct LongSeries {
    std::string id;
    std::vector<std::size_t> t;
    std::vector<double> values;
};
std::vector<LongSeries> read_long_csv(const fs::path& path);

/// `series_id,label` pairs, in dataset order.
void write_labels(const Dataset& data, std::span<const std::size_t> labels, const fs::path& path);
std::vector<std::size_t> read_labels(const fs::path& path, const Dataset* order = nullptr);

/// Shortest decimal string that reads back to the same double.
std::string format_double(double x);
double parse_double(std::string_view s, const std::string& where);

// ---- JSON ----

json read_json(const fs::path& path);
void write_json(const json& j, const fs::path& path);
void write_text(const std::string& text, const fs::path& path);

void to_json(json& j, const ForestConfig& c);
void from_json(const json& j, ForestConfig& c);
void to_json(json& j, const CpagmConfig& c);
void from_json(const json& j, CpagmConfig& c);
void to_json(json& j, const GlobalModel& m);
void from_json(const json& j, GlobalModel& m);
void to_json(json& j, const Partition& p);
void from_json(const json& j, Partition& p);
/// `meta` (timestamps, host) is written under its own key and ignored on read.
void to_json(json& j, const CpagmResult& r);
void from_json(const json& j, CpagmResult& r);
void to_json(json& j, const SetarProcess& s);
void from_json(const json& j, SetarProcess& s);
/// Accepts either a full spec or {"preset": "scenario1" | "scenario2" |
/// "scenario2-noisy" | "scenario3", "length", "per_process", "seed", ...}
/// with any full-spec field overriding the preset.
void to_json(json& j, const ScenarioSpec& s);
void from_json(const json& j, ScenarioSpec& s);
void to_json(json& j, const GridSpec& g);
void from_json(const json& j, GridSpec& g);
void to_json(json& j, const GridCell& c);
void to_json(json& j, const TestEvaluation& e);
void to_json(json& j, const LmResult& r);
void to_json(json& j, const GmapResult& r);
void to_json(json& j, const GmfbcResult& r);

json result_document(const CpagmResult& r, const json& meta);

// ---- tables ----

std::string grid_csv(const GridResult& grid, ErrorMetric metric);
void write_grid_csv(const GridResult& grid, ErrorMetric metric, const fs::path& path);

struct BenchmarkRow {
    std::string scenario;
    std::size_t length = 0;
    std::size_t per_process = 0;
    std::string method;
    std::string metric;
    double mean = 0.0;
    double sd = 0.0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows);

} // namespace gmclust
