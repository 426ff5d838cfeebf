#include "commands.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <vector>

#include "vqcd/detector.hpp"
#include "vqcd/scenario.hpp"
#include "vqcd/vdensity.hpp"

namespace vqcd::cli {

int cmd_density(std::size_t n, std::size_t p, std::size_t delta,
                const std::vector<double>& j_list, std::size_t grid_size,
                std::ostream& out, std::ostream& err) {
  try {
    const ModelParams params(n, p, delta);
    out << "rho";
    for (double j : j_list) out << ",f_J=" << j;
    out << '\n';
    out << std::setprecision(12);
    for (std::size_t g = 1; g <= grid_size; ++g) {
      const double rho =
          static_cast<double>(g) / static_cast<double>(grid_size);
      out << rho;
      for (double j : j_list) {
        double f;
        try {
          f = std::exp(log_pdf_v(rho, params, j));
        } catch (const std::domain_error&) {
          f = std::numeric_limits<double>::infinity();  // n = 3 at rho = 1
        }
        out << ',' << f;
      }
      out << '\n';
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "density: " << e.what() << '\n';
    return kExitInputError;
  }
}

int cmd_detect(std::istream& in, const DetectOptions& opts, std::ostream& out,
               std::ostream& err) {
  try {
    BlockReader reader(in, opts.format);
    const ModelParams params(reader.header().n, reader.header().p, opts.delta);
    GlrConfig config;
    config.epsilon = opts.epsilon;
    config.threshold_a = opts.threshold_a;
    config.window = opts.window > 0
                        ? opts.window
                        : default_window(std::exp(opts.threshold_a),
                                         opts.epsilon);
    config.sidedness =
        opts.two_sided ? Sidedness::kTwoSided : Sidedness::kIncreaseOnly;
    GlrDetector det(config, params);

    out << "m,V,W,stat\n";
    out << std::setprecision(10);
    while (auto block = reader.next()) {
      const double v = summary_statistic(*block, opts.delta).v;
      const bool stopped = det.step(v);
      out << det.state().m << ',' << v << ',' << w_transform(v, params) << ','
          << det.state().current_stat << '\n';
      if (stopped) {
        const Verdict verdict = det.verdict();
        out << "STOP stopping_time=" << verdict.stopping_time
            << " change_point_estimate=" << verdict.change_point_estimate
            << " j_estimate=" << verdict.j_estimate << '\n';
        return kExitOk;
      }
    }
    out << "NO DETECTION after " << det.state().m << " blocks\n";
    return kExitNoDetection;
  } catch (const StreamParseError& e) {
    err << "detect: parse error at block " << e.block() << ", row " << e.row()
        << ": " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "detect: " << e.what() << '\n';
    return kExitInputError;
  }
}

int cmd_simulate(const std::string& scenario_path, bool fast_path,
                 std::ostream& out, std::ostream& err) {
  try {
    const Scenario s = parse_scenario_file(scenario_path);
    run_scenario(s, fast_path, out);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "simulate: " << e.what() << '\n';
    return kExitInputError;
  }
}

int cmd_estimate_j(std::istream& in, std::size_t delta, StreamFormat format,
                   std::ostream& out, std::ostream& err) {
  try {
    BlockReader reader(in, format);
    const ModelParams params(reader.header().n, reader.header().p, delta);
    std::vector<double> vs;
    while (auto block = reader.next())
      vs.push_back(summary_statistic(*block, delta).v);
    if (vs.empty()) {
      err << "estimate-j: empty stream\n";
      return kExitInputError;
    }
    out << std::setprecision(10) << "j_hat=" << mle_j(vs, params).j
        << " samples=" << vs.size() << '\n';
    return kExitOk;
  } catch (const StreamParseError& e) {
    err << "estimate-j: parse error at block " << e.block() << ", row "
        << e.row() << ": " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "estimate-j: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace vqcd::cli
