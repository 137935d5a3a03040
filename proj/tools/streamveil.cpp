#include <cmath>
#include <cstdio>
#include <iostream>

#include "streamveil/cli_args.hpp"
#include "streamveil/pipeline.hpp"

namespace {

bool all_finite(const streamveil::RunReport& report) {
  const auto ok = [](const streamveil::WindowReport& r) {
    return std::isfinite(r.precision_orig) && std::isfinite(r.recall_orig) &&
           std::isfinite(r.precision_pert) && std::isfinite(r.recall_pert) &&
           std::isfinite(r.accuracy_pct) && std::isfinite(r.misclassification_pct);
  };
  for (const auto& r : report.per_window)
    if (!ok(r)) return false;
  const auto& a = report.aggregate;
  return std::isfinite(a.accuracy_pct) && std::isfinite(a.misclassification_pct) &&
         std::isfinite(a.precision_orig) && std::isfinite(a.recall_orig) &&
         std::isfinite(a.precision_pert) && std::isfinite(a.recall_pert);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace streamveil;

  PipelineConfig cfg;
  try {
    cfg = parse_args(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const UsageError& e) {
    (e.exit_code() == 0 ? std::cout : std::cerr) << e.what();
    return e.exit_code();
  }

  try {
    const RunReport report = run_pipeline(cfg);
    emit_report(report, cfg.out_dir);
    std::cout << summary_text(report);
    std::printf("timing:               load %.3fs, stats %.3fs, process %.3fs, total %.3fs\n",
                report.timing.load_seconds, report.timing.stats_seconds,
                report.timing.process_seconds, report.timing.total_seconds);
    std::cout << "report written to:    " << cfg.out_dir.string() << "\n";
    if (!all_finite(report)) {
      std::cerr << "error: non-finite metric in report\n";
      return 1;
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
