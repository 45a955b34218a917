#include "histlight/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "histlight/image_io.hpp"
#include "histlight/synthetic.hpp"

namespace histlight {

namespace fs = std::filesystem;
using nlohmann::json;

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw Error("unknown report format '" + name + "' (expected csv|json)");
}

GradientOperator parse_gradient_operator(const std::string& name) {
  if (name == "forward") return GradientOperator::ForwardL1;
  if (name == "sobel") return GradientOperator::Sobel;
  throw Error("unknown gradient operator '" + name + "' (expected forward|sobel)");
}

std::vector<Resolution> parse_resolutions(const std::string& text) {
  std::vector<Resolution> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto x = item.find_first_of("xX");
    Resolution r;
    if (x == std::string::npos) throw Error("bad resolution '" + item + "'");
    const char* begin = item.data();
    const char* mid = begin + x;
    const char* end = begin + item.size();
    const auto w = std::from_chars(begin, mid, r.width);
    const auto h = std::from_chars(mid + 1, end, r.height);
    if (w.ec != std::errc() || w.ptr != mid || h.ec != std::errc() ||
        h.ptr != end || r.width < 1 || r.height < 1) {
      throw Error("bad resolution '" + item + "'");
    }
    out.push_back(r);
  }
  if (out.empty()) throw Error("no resolutions given");
  return out;
}

std::vector<Resolution> default_sweep() {
  std::vector<Resolution> out;
  for (int s = 100; s <= 1000; s += 100) out.push_back({s, s});
  return out;
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HISTLIGHT_THREADS")) {
    int n = 0;
    const auto res = std::from_chars(env, env + std::char_traits<char>::length(env), n);
    if (res.ec == std::errc() && n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open output: " + path.string());
  return os;
}

void finish(std::ofstream& os, const fs::path& path) {
  os.flush();
  if (!os) throw Error("failed writing output: " + path.string());
}

json params_json(const OptParams& p) {
  return json{{"alpha", p.alpha},
              {"beta", p.beta},
              {"epsilon", p.epsilon},
              {"max_iter", p.max_iter},
              {"levels", p.levels},
              {"update_form", to_string(p.update_form)},
              {"init_floor", p.init_floor}};
}

json timings_json(const StageTimings& t) {
  return json{{"histogramming", t.histogramming},
              {"decompose", t.decompose},
              {"reprocess", t.reprocess},
              {"matching", t.matching},
              {"total", t.total}};
}

json report_json(const MetricReport& r) {
  return json{{"psnr", capped_psnr(r.psnr)}, {"ssim", r.ssim}, {"loe", r.loe}};
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool is_image_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

}  // namespace

// ---------------------------------------------------------------- enhance

int cmd_enhance(const EnhanceConfig& cfg, std::ostream& err) {
  return guarded(err, [&] {
    cfg.params.validate();
    cfg.gamma.validate();
    if (cfg.output.empty()) throw Error("no output path given");
    const RgbImage input = read_image(cfg.input);
    const EnhanceResult res =
        enhance_detailed(input, cfg.params, cfg.gamma, cfg.gradient);
    write_image(cfg.output, res.image);

    if (cfg.sidecar) {
      json doc{{"schema_version", kReportSchemaVersion},
               {"input", cfg.input.string()},
               {"output", cfg.output.string()},
               {"width", res.image.width},
               {"height", res.image.height},
               {"params", params_json(cfg.params)},
               {"gamma", cfg.gamma.gamma},
               {"gradient", cfg.gradient == GradientOperator::Sobel ? "sobel" : "forward"},
               {"iterations", res.decomposition.iterations},
               {"timings_ms", timings_json(res.timings)}};
      std::ofstream os = open_output(*cfg.sidecar);
      os << doc.dump(2) << '\n';
      finish(os, *cfg.sidecar);
    }
    return 0;
  });
}

// -------------------------------------------------------------- decompose

void write_histogram_csv(std::ostream& os, const DecompositionResult& result) {
  os << "bin,illumination,reflectance\n";
  for (int k = 0; k < result.illumination.levels(); ++k) {
    os << k << ',' << format_number(result.illumination[k]) << ','
       << format_number(result.reflectance[k]) << '\n';
  }
}

void write_trace_csv(std::ostream& os, const DecompositionResult& result) {
  os << "iteration,before,after_reflectance,after_illumination,"
        "delta_reflectance,delta_illumination\n";
  for (std::size_t t = 0; t < result.steps.size(); ++t) {
    const IterationRecord& r = result.steps[t];
    os << t + 1 << ',' << format_number(r.before) << ','
       << format_number(r.after_reflectance) << ','
       << format_number(r.after_illumination) << ','
       << format_number(r.delta_reflectance) << ','
       << format_number(r.delta_illumination) << '\n';
  }
}

int cmd_decompose(const DecomposeConfig& cfg, std::ostream& err) {
  return guarded(err, [&] {
    cfg.params.validate();
    if (cfg.output.empty() || cfg.trace.empty()) {
      throw Error("histogram and trace output paths are required");
    }
    const RgbImage input = read_image(cfg.input);
    const int l = cfg.params.levels;
    const ValueChannel value = quantize_value_channel(rgb_to_hsv(input), l);
    const CountHistogram source = compute_count_histogram(value, l);
    const CountHistogram gradient =
        compute_count_histogram(gradient_channel(value, cfg.gradient), l);
    const DecompositionResult result = decompose(source, gradient, cfg.params);

    std::ofstream hist = open_output(cfg.output);
    write_histogram_csv(hist, result);
    finish(hist, cfg.output);
    std::ofstream trace = open_output(cfg.trace);
    write_trace_csv(trace, result);
    finish(trace, cfg.trace);
    return 0;
  });
}

// ------------------------------------------------------------------ bench

std::vector<BenchRecord> run_bench(const RgbImage& source,
                                   const std::optional<RgbImage>& reference,
                                   const BenchConfig& cfg) {
  if (cfg.repeat < 1) throw Error("repeat must be >= 1");
  std::vector<BenchRecord> records;
  for (const Resolution& res : cfg.resolutions) {
    const RgbImage scaled = resize_nearest(source, res.width, res.height);
    std::vector<double> hist, dec, rep, match, total;
    RgbImage last;
    for (int r = 0; r < cfg.repeat; ++r) {
      EnhanceResult out = enhance_detailed(scaled, cfg.params, cfg.gamma);
      hist.push_back(out.timings.histogramming);
      dec.push_back(out.timings.decompose);
      rep.push_back(out.timings.reprocess);
      match.push_back(out.timings.matching);
      total.push_back(out.timings.total);
      last = std::move(out.image);
    }
    BenchRecord rec;
    rec.resolution = res;
    rec.timings = StageTimings{median(hist), median(dec), median(rep),
                               median(match), median(total)};
    if (reference) {
      rec.quality = evaluate(resize_nearest(*reference, res.width, res.height), last);
    }
    records.push_back(rec);
  }
  return records;
}

double decompose_time_ratio(const std::vector<BenchRecord>& records) {
  if (records.empty()) throw Error("no bench records");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const BenchRecord& r : records) {
    const double t = r.timings.decompose + r.timings.reprocess;
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
  os << "width,height,pixels,histogramming_ms,decompose_ms,reprocess_ms,"
        "matching_ms,total_ms,psnr,ssim,loe\n";
  for (const BenchRecord& r : records) {
    const StageTimings& t = r.timings;
    os << r.resolution.width << ',' << r.resolution.height << ','
       << static_cast<long long>(r.resolution.width) * r.resolution.height << ','
       << format_number(t.histogramming) << ',' << format_number(t.decompose)
       << ',' << format_number(t.reprocess) << ',' << format_number(t.matching)
       << ',' << format_number(t.total);
    if (r.quality) {
      os << ',' << format_number(capped_psnr(r.quality->psnr)) << ','
         << format_number(r.quality->ssim) << ',' << format_number(r.quality->loe);
    } else {
      os << ",,,";
    }
    os << '\n';
  }
}

void write_bench_json(std::ostream& os, const std::vector<BenchRecord>& records) {
  json rows = json::array();
  for (const BenchRecord& r : records) {
    json row{{"width", r.resolution.width},
             {"height", r.resolution.height},
             {"timings_ms", timings_json(r.timings)}};
    if (r.quality) row["quality"] = report_json(*r.quality);
    rows.push_back(std::move(row));
  }
  json doc{{"schema_version", kReportSchemaVersion}, {"records", std::move(rows)}};
  os << doc.dump(2) << '\n';
}

int cmd_bench(const BenchConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    cfg.params.validate();
    cfg.gamma.validate();
    const RgbImage source =
        cfg.input ? read_image(*cfg.input) : synthetic_low_light_scene(640, 480, 7);
    std::optional<RgbImage> reference;
    if (cfg.reference) reference = read_image(*cfg.reference);

    const std::vector<BenchRecord> records = run_bench(source, reference, cfg);

    std::ostringstream report;
    if (cfg.format == ReportFormat::Csv) {
      write_bench_csv(report, records);
    } else {
      write_bench_json(report, records);
    }
    if (cfg.output) {
      std::ofstream os = open_output(*cfg.output);
      os << report.str();
      finish(os, *cfg.output);
    } else {
      out << report.str();
    }

    const BenchRecord& largest = *std::max_element(
        records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
          return static_cast<long long>(a.resolution.width) * a.resolution.height <
                 static_cast<long long>(b.resolution.width) * b.resolution.height;
        });
    err << "decompose+reprocess max/min ratio: "
        << format_number(decompose_time_ratio(records)) << '\n'
        << "total at " << largest.resolution.width << 'x' << largest.resolution.height
        << ": " << format_number(largest.timings.total) << " ms (budget "
        << format_number(cfg.budget_ms) << " ms"
        << (largest.timings.total <= cfg.budget_ms ? ", within" : ", EXCEEDED") << ")\n";
    return 0;
  });
}

// ---------------------------------------------------------------- metrics

MetricRow average_row(const std::vector<MetricRow>& rows) {
  if (rows.empty()) throw Error("no rows to average");
  MetricRow avg{"average", {}};
  for (const MetricRow& r : rows) {
    avg.report.psnr += capped_psnr(r.report.psnr);
    avg.report.ssim += r.report.ssim;
    avg.report.loe += r.report.loe;
  }
  const double n = static_cast<double>(rows.size());
  avg.report.psnr /= n;
  avg.report.ssim /= n;
  avg.report.loe /= n;
  return avg;
}

std::vector<MetricRow> run_metrics_batch(const fs::path& reference_dir,
                                         const fs::path& candidate_dir,
                                         int threads) {
  if (!fs::is_directory(reference_dir)) {
    throw Error("not a directory: " + reference_dir.string());
  }
  if (!fs::is_directory(candidate_dir)) {
    throw Error("not a directory: " + candidate_dir.string());
  }
  std::vector<fs::path> names;
  for (const auto& entry : fs::directory_iterator(reference_dir)) {
    if (entry.is_regular_file() && is_image_file(entry.path())) {
      names.push_back(entry.path().filename());
    }
  }
  std::sort(names.begin(), names.end());
  if (names.empty()) throw Error("no images in " + reference_dir.string());
  for (const fs::path& name : names) {
    if (!fs::exists(candidate_dir / name)) {
      throw Error("missing counterpart for " + name.string() + " in " +
                  candidate_dir.string());
    }
  }

  std::vector<MetricRow> rows(names.size());
  std::vector<std::string> failures(names.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < names.size(); i = next++) {
      try {
        const RgbImage ref = read_image(reference_dir / names[i]);
        const RgbImage cand = read_image(candidate_dir / names[i]);
        rows[i] = MetricRow{names[i].string(), evaluate(ref, cand)};
      } catch (const std::exception& e) {
        failures[i] = names[i].string() + ": " + e.what();
      }
    }
  };
  const int n_threads = std::min<int>(resolve_thread_count(threads),
                                      static_cast<int>(names.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  for (const std::string& f : failures) {
    if (!f.empty()) throw Error(f);
  }
  return rows;
}

void write_metrics_csv(std::ostream& os, const std::vector<MetricRow>& rows,
                       bool with_average) {
  os << "name,psnr,ssim,loe\n";
  auto line = [&](const MetricRow& r) {
    os << r.name << ',' << format_number(capped_psnr(r.report.psnr)) << ','
       << format_number(r.report.ssim) << ',' << format_number(r.report.loe) << '\n';
  };
  for (const MetricRow& r : rows) line(r);
  if (with_average) line(average_row(rows));
}

void write_metrics_json(std::ostream& os, const std::vector<MetricRow>& rows,
                        bool with_average) {
  json items = json::array();
  for (const MetricRow& r : rows) {
    json item = report_json(r.report);
    item["name"] = r.name;
    items.push_back(std::move(item));
  }
  json doc{{"schema_version", kReportSchemaVersion}, {"rows", std::move(items)}};
  if (with_average) doc["average"] = report_json(average_row(rows).report);
  os << doc.dump(2) << '\n';
}

int cmd_metrics(const MetricsConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<MetricRow> rows;
    if (cfg.batch) {
      rows = run_metrics_batch(cfg.reference, cfg.candidate, cfg.threads);
    } else {
      const RgbImage ref = read_image(cfg.reference);
      const RgbImage cand = read_image(cfg.candidate);
      rows.push_back(MetricRow{cfg.candidate.filename().string(), evaluate(ref, cand)});
    }

    std::ostringstream report;
    if (cfg.format == ReportFormat::Csv) {
      write_metrics_csv(report, rows, cfg.batch);
    } else {
      write_metrics_json(report, rows, cfg.batch);
    }
    if (cfg.output) {
      std::ofstream os = open_output(*cfg.output);
      os << report.str();
      finish(os, *cfg.output);
    } else {
      out << report.str();
    }
    return 0;
  });
}

}  // namespace histlight
