#include "streamveil/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <thread>

#include "json.hpp"
#include "streamveil/error.hpp"
#include "streamveil/kmeans.hpp"
#include "streamveil/window.hpp"

namespace streamveil {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::string> window_labels(const Window& window) {
  std::vector<std::string> labels;
  labels.reserve(window.size());
  for (const Instance& inst : window.instances) labels.push_back(inst.label);
  return labels;
}

WindowReport process_window(const Window& original, const Window& perturbed,
                            const Schema& schema, const PipelineConfig& cfg) {
  Matrix xo = feature_matrix(original, schema);
  Matrix xp = feature_matrix(perturbed, schema);
  if (cfg.cluster_on_zscores) {
    standardize_columns(xo);
    standardize_columns(xp);
  }

  KMeansModel mo = kmeans_fit(xo, cfg.k, cfg.seed);
  Assignment ao = kmeans_assign(xo, mo);
  KMeansModel mp = kmeans_fit(xp, cfg.k, cfg.seed);
  Assignment ap = kmeans_assign(xp, mp);

  Cmm cmm = build_cmm(ao, ap, cfg.k, cfg.k);
  ClusterMatching match = best_matching(cmm);

  WindowReport out;
  out.window_index = original.index;
  out.n = original.size();
  out.accuracy_pct = cmm_accuracy(cmm, match);
  out.misclassification_pct = misclassification(cmm, match);

  const std::vector<std::string> labels = window_labels(original);
  ContingencyTable co = contingency(ao, labels, cfg.k, schema.class_domain());
  ContingencyTable cp = contingency(ap, labels, cfg.k, schema.class_domain());
  out.precision_orig = precision_measure(co);
  out.recall_orig = recall_measure(co);
  out.precision_pert = precision_measure(cp);
  out.recall_pert = recall_measure(cp);
  return out;
}

AggregateMetrics aggregate_reports(const std::vector<WindowReport>& reports) {
  AggregateMetrics agg;
  double total = 0.0;
  for (const WindowReport& r : reports) {
    const double w = static_cast<double>(r.n);
    total += w;
    agg.accuracy_pct += w * r.accuracy_pct;
    agg.misclassification_pct += w * r.misclassification_pct;
    agg.precision_orig += w * r.precision_orig;
    agg.recall_orig += w * r.recall_orig;
    agg.precision_pert += w * r.precision_pert;
    agg.recall_pert += w * r.recall_pert;
  }
  if (total > 0.0) {
    agg.accuracy_pct /= total;
    agg.misclassification_pct /= total;
    agg.precision_orig /= total;
    agg.recall_orig /= total;
    agg.precision_pert /= total;
    agg.recall_pert /= total;
  }
  return agg;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

unsigned worker_count(std::size_t jobs) {
  unsigned cap = std::thread::hardware_concurrency();
  if (cap == 0) cap = 1;
  if (const char* env = std::getenv("STREAMVEIL_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || parsed < 1)
      throw ValidationError("STREAMVEIL_THREADS must be a positive integer, got '" +
                            std::string(env) + "'");
    cap = static_cast<unsigned>(parsed);
  }
  if (jobs == 0) return 1;
  return static_cast<unsigned>(std::min<std::size_t>(cap, jobs));
}

RunReport run_pipeline(const PipelineConfig& cfg) {
  const auto t0 = Clock::now();
  Dataset data = load(cfg.source);
  std::span<const Instance> stream(data.instances);
  if (cfg.limit && *cfg.limit < stream.size()) stream = stream.first(*cfg.limit);
  const double load_seconds = seconds_since(t0);

  PipelineConfig inner = cfg;
  inner.limit.reset();  // already applied
  RunReport report = run_pipeline(inner, data.schema, stream);
  report.config = cfg;
  report.timing.load_seconds = load_seconds;
  report.timing.total_seconds += load_seconds;
  return report;
}

RunReport run_pipeline(const PipelineConfig& cfg, const Schema& schema,
                       std::span<const Instance> stream) {
  const auto t0 = Clock::now();
  if (cfg.k < 1) throw ValidationError("k must be >= 1");
  if (cfg.window < 1) throw ValidationError("window size must be >= 1");
  if (cfg.limit && *cfg.limit < stream.size()) stream = stream.first(*cfg.limit);
  if (stream.empty()) throw ValidationError("empty stream: nothing to process");

  PerturbationConfig pcfg;
  pcfg.sensitive_attributes = cfg.sensitive_attributes;
  pcfg.stats_mode = cfg.stats_mode;
  validate_perturbation_config(schema, pcfg);
  for (const Instance& inst : stream) schema.validate_instance(inst);

  // Stats pass. Two-pass freezes the table over the whole stream up front;
  // incremental starts empty and folds instances in as they are perturbed.
  const auto t_stats = Clock::now();
  StatsTable stats(schema);
  if (cfg.stats_mode == StatsMode::TwoPass)
    for (const Instance& inst : stream) stats.observe(inst);
  const double stats_seconds = seconds_since(t_stats);

  const auto t_proc = Clock::now();
  const std::vector<Window> windows = window_partition(stream, cfg.window);
  const unsigned workers = worker_count(windows.size());

  std::vector<WindowReport> reports(windows.size());
  // Batched fan-out: perturbation stays sequential in stream order (the
  // incremental mode depends on it), clustering runs `workers` windows at a
  // time so only that many perturbed windows are resident at once.
  for (std::size_t start = 0; start < windows.size(); start += workers) {
    const std::size_t end = std::min(windows.size(), start + workers);

    std::vector<std::vector<Instance>> perturbed(end - start);
    for (std::size_t wi = start; wi < end; ++wi) {
      std::vector<Instance>& dst = perturbed[wi - start];
      dst.reserve(windows[wi].size());
      for (const Instance& inst : windows[wi].instances) {
        if (cfg.stats_mode == StatsMode::Incremental) stats.observe(inst);
        dst.push_back(perturb_instance(inst, schema, stats, pcfg).first);
      }
    }

    auto run_one = [&](std::size_t wi) {
      const std::vector<Instance>& pw = perturbed[wi - start];
      const Window pview{windows[wi].index, std::span<const Instance>(pw)};
      try {
        return process_window(windows[wi], pview, schema, cfg);
      } catch (const Error& e) {
        throw Error("window " + std::to_string(windows[wi].index) + ": " + e.what());
      }
    };

    if (end - start == 1) {
      reports[start] = run_one(start);
    } else {
      std::vector<std::future<WindowReport>> futures;
      futures.reserve(end - start);
      for (std::size_t wi = start; wi < end; ++wi)
        futures.push_back(std::async(std::launch::async, run_one, wi));
      for (std::size_t wi = start; wi < end; ++wi)
        reports[wi] = futures[wi - start].get();
    }
  }
  const double process_seconds = seconds_since(t_proc);

  RunReport out;
  out.config = cfg;
  out.per_window = std::move(reports);
  out.aggregate = aggregate_reports(out.per_window);
  out.timing.stats_seconds = stats_seconds;
  out.timing.process_seconds = process_seconds;
  out.timing.total_seconds = seconds_since(t0);
  return out;
}

std::string report_to_json(const RunReport& report) {
  using nlohmann::json;
  const PipelineConfig& cfg = report.config;

  json jcfg;
  jcfg["input"] = cfg.source.path.string();
  jcfg["format"] = cfg.source.format == DataFormat::Arff ? "arff" : "csv";
  jcfg["sensitive"] = cfg.sensitive_attributes;
  jcfg["k"] = cfg.k;
  jcfg["window"] = cfg.window;
  jcfg["seed"] = cfg.seed;
  jcfg["stats_mode"] =
      cfg.stats_mode == StatsMode::TwoPass ? "two-pass" : "incremental";
  jcfg["limit"] = cfg.limit ? json(*cfg.limit) : json(nullptr);
  jcfg["cluster_on_zscores"] = cfg.cluster_on_zscores;
  jcfg["out_dir"] = cfg.out_dir.string();

  json jwins = json::array();
  for (const WindowReport& r : report.per_window) {
    json jw;
    jw["window_index"] = r.window_index;
    jw["n"] = r.n;
    jw["precision_orig"] = r.precision_orig;
    jw["recall_orig"] = r.recall_orig;
    jw["precision_pert"] = r.precision_pert;
    jw["recall_pert"] = r.recall_pert;
    jw["accuracy_pct"] = r.accuracy_pct;
    jw["misclassification_pct"] = r.misclassification_pct;
    jwins.push_back(std::move(jw));
  }

  json jagg;
  jagg["accuracy_pct"] = report.aggregate.accuracy_pct;
  jagg["misclassification_pct"] = report.aggregate.misclassification_pct;
  jagg["precision_orig"] = report.aggregate.precision_orig;
  jagg["recall_orig"] = report.aggregate.recall_orig;
  jagg["precision_pert"] = report.aggregate.precision_pert;
  jagg["recall_pert"] = report.aggregate.recall_pert;

  json jtim;
  jtim["load_seconds"] = report.timing.load_seconds;
  jtim["stats_seconds"] = report.timing.stats_seconds;
  jtim["process_seconds"] = report.timing.process_seconds;
  jtim["total_seconds"] = report.timing.total_seconds;

  json j;
  j["config"] = std::move(jcfg);
  j["windows"] = std::move(jwins);
  j["aggregate"] = std::move(jagg);
  j["timing"] = std::move(jtim);
  return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("report json: ") + e.what());
  }

  RunReport report;
  const json& jcfg = j.at("config");
  report.config.source.path = jcfg.at("input").get<std::string>();
  report.config.source.format = jcfg.at("format").get<std::string>() == "arff"
                                    ? DataFormat::Arff
                                    : DataFormat::Csv;
  report.config.sensitive_attributes =
      jcfg.at("sensitive").get<std::vector<std::string>>();
  report.config.k = jcfg.at("k").get<int>();
  report.config.window = jcfg.at("window").get<std::size_t>();
  report.config.seed = jcfg.at("seed").get<std::uint64_t>();
  report.config.stats_mode = jcfg.at("stats_mode").get<std::string>() == "two-pass"
                                 ? StatsMode::TwoPass
                                 : StatsMode::Incremental;
  if (!jcfg.at("limit").is_null())
    report.config.limit = jcfg.at("limit").get<std::size_t>();
  report.config.cluster_on_zscores = jcfg.at("cluster_on_zscores").get<bool>();
  report.config.out_dir = jcfg.at("out_dir").get<std::string>();

  for (const json& jw : j.at("windows")) {
    WindowReport r;
    r.window_index = jw.at("window_index").get<std::size_t>();
    r.n = jw.at("n").get<std::size_t>();
    r.precision_orig = jw.at("precision_orig").get<double>();
    r.recall_orig = jw.at("recall_orig").get<double>();
    r.precision_pert = jw.at("precision_pert").get<double>();
    r.recall_pert = jw.at("recall_pert").get<double>();
    r.accuracy_pct = jw.at("accuracy_pct").get<double>();
    r.misclassification_pct = jw.at("misclassification_pct").get<double>();
    report.per_window.push_back(r);
  }

  const json& jagg = j.at("aggregate");
  report.aggregate.accuracy_pct = jagg.at("accuracy_pct").get<double>();
  report.aggregate.misclassification_pct =
      jagg.at("misclassification_pct").get<double>();
  report.aggregate.precision_orig = jagg.at("precision_orig").get<double>();
  report.aggregate.recall_orig = jagg.at("recall_orig").get<double>();
  report.aggregate.precision_pert = jagg.at("precision_pert").get<double>();
  report.aggregate.recall_pert = jagg.at("recall_pert").get<double>();

  const json& jtim = j.at("timing");
  report.timing.load_seconds = jtim.at("load_seconds").get<double>();
  report.timing.stats_seconds = jtim.at("stats_seconds").get<double>();
  report.timing.process_seconds = jtim.at("process_seconds").get<double>();
  report.timing.total_seconds = jtim.at("total_seconds").get<double>();
  return report;
}

std::string windows_csv(const RunReport& report) {
  std::string out =
      "window_index,n,precision_orig,recall_orig,precision_pert,recall_pert,"
      "accuracy_pct,misclassification_pct\n";
  for (const WindowReport& r : report.per_window) {
    out += std::to_string(r.window_index);
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += fixed6(r.precision_orig);
    out += ',';
    out += fixed6(r.recall_orig);
    out += ',';
    out += fixed6(r.precision_pert);
    out += ',';
    out += fixed6(r.recall_pert);
    out += ',';
    out += fixed6(r.accuracy_pct);
    out += ',';
    out += fixed6(r.misclassification_pct);
    out += '\n';
  }
  return out;
}

std::string summary_text(const RunReport& report) {
  const PipelineConfig& cfg = report.config;
  const AggregateMetrics& agg = report.aggregate;
  std::string out;
  out += "dataset:              " + cfg.source.path.string() + "\n";
  out += "perturbed attributes: " + join(cfg.sensitive_attributes, ", ") + "\n";
  out += "windows:              " + std::to_string(report.per_window.size()) +
         " x " + std::to_string(cfg.window) + " (k=" + std::to_string(cfg.k) +
         ", seed=" + std::to_string(cfg.seed) + ")\n";
  out += "accuracy:             " + fixed2(agg.accuracy_pct) + " %\n";
  out += "misclassification:    " + fixed2(agg.misclassification_pct) + " %\n";
  out += "precision (orig):     " + fixed6(agg.precision_orig) + "\n";
  out += "recall    (orig):     " + fixed6(agg.recall_orig) + "\n";
  out += "precision (pert):     " + fixed6(agg.precision_pert) + "\n";
  out += "recall    (pert):     " + fixed6(agg.recall_pert) + "\n";
  return out;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

void emit_report(const RunReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() +
                        "': " + ec.message());
  write_text(dir / "report.json", report_to_json(report));
  write_text(dir / "windows.csv", windows_csv(report));
  write_text(dir / "summary.txt", summary_text(report));
}

}  // namespace streamveil
