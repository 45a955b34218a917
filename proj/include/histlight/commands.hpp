#pragma once

// Command implementations behind the `histlight` executable. Each command
// returns a process exit status and reports problems on `err`.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "histlight/imgproc.hpp"
#include "histlight/metrics.hpp"

namespace histlight {

inline constexpr int kReportSchemaVersion = 1;

enum class ReportFormat { Csv, Json };
ReportFormat parse_report_format(const std::string& name);

struct Resolution {
  int width = 0;
  int height = 0;
  bool operator==(const Resolution&) const = default;
};

// "WxH,WxH,..."
std::vector<Resolution> parse_resolutions(const std::string& text);
// 100x100, 200x200, ..., 1000x1000.
std::vector<Resolution> default_sweep();

GradientOperator parse_gradient_operator(const std::string& name);

// Shortest round-trip decimal form; always '.' as the decimal point.
std::string format_number(double value);

struct EnhanceConfig {
  std::filesystem::path input;
  std::filesystem::path output;
  std::optional<std::filesystem::path> sidecar;  // JSON with parameters
  OptParams params;
  GammaParam gamma;
  GradientOperator gradient = GradientOperator::ForwardL1;
};

struct DecomposeConfig {
  std::filesystem::path input;
  std::filesystem::path output;  // per-bin histogram CSV
  std::filesystem::path trace;   // per-iteration objective CSV
  OptParams params;
  GradientOperator gradient = GradientOperator::ForwardL1;
};

struct BenchConfig {
  std::optional<std::filesystem::path> input;  // synthetic scene when absent
  std::optional<std::filesystem::path> reference;
  std::optional<std::filesystem::path> output;  // stdout when absent
  std::vector<Resolution> resolutions = default_sweep();
  int repeat = 3;
  double budget_ms = 5000.0;
  ReportFormat format = ReportFormat::Csv;
  OptParams params;
  GammaParam gamma;
};

struct BenchRecord {
  Resolution resolution;
  StageTimings timings;  // per-stage median over the repeats
  std::optional<MetricReport> quality;
};

struct MetricsConfig {
  std::filesystem::path reference;  // image, or folder in batch mode
  std::filesystem::path candidate;
  bool batch = false;
  std::optional<std::filesystem::path> output;  // stdout when absent
  ReportFormat format = ReportFormat::Csv;
  int threads = 0;  // 0: HISTLIGHT_THREADS or hardware concurrency
};

struct MetricRow {
  std::string name;
  MetricReport report;
};

int cmd_enhance(const EnhanceConfig& cfg, std::ostream& err);
int cmd_decompose(const DecomposeConfig& cfg, std::ostream& err);
int cmd_bench(const BenchConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_metrics(const MetricsConfig& cfg, std::ostream& out, std::ostream& err);

// Building blocks exposed for tests and the acceptance suite.
std::vector<BenchRecord> run_bench(const RgbImage& source,
                                   const std::optional<RgbImage>& reference,
                                   const BenchConfig& cfg);
// max / min of (decompose + reprocess) time across records.
double decompose_time_ratio(const std::vector<BenchRecord>& records);
void write_bench_csv(std::ostream& os, const std::vector<BenchRecord>& records);
void write_bench_json(std::ostream& os, const std::vector<BenchRecord>& records);

std::vector<MetricRow> run_metrics_batch(const std::filesystem::path& reference_dir,
                                         const std::filesystem::path& candidate_dir,
                                         int threads);
MetricRow average_row(const std::vector<MetricRow>& rows);
void write_metrics_csv(std::ostream& os, const std::vector<MetricRow>& rows,
                       bool with_average);
void write_metrics_json(std::ostream& os, const std::vector<MetricRow>& rows,
                        bool with_average);

void write_histogram_csv(std::ostream& os, const DecompositionResult& result);
void write_trace_csv(std::ostream& os, const DecompositionResult& result);

// Batch worker count: explicit value, else HISTLIGHT_THREADS, else hardware.
int resolve_thread_count(int requested);

}  // namespace histlight
