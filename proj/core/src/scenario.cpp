#include "vqcd/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "vqcd/detector.hpp"
#include "vqcd/rng.hpp"
#include "vqcd/simgen.hpp"
#include "vqcd/vdensity.hpp"

namespace vqcd {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t salt) {
  return rng::mix(seed ^ rng::mix(salt));
}

}  // namespace

Scenario parse_scenario(std::istream& in) {
  Scenario s;
  std::vector<std::string> unknown;
  bool beta_seen = false, a_seen = false;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("scenario: expected 'key = value', got: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "id") {
      s.id = value;
    } else if (key == "n") {
      s.n = std::stoul(value);
    } else if (key == "p") {
      s.p = std::stoul(value);
    } else if (key == "k") {
      s.k = std::stoul(value);
    } else if (key == "dof") {
      s.dof = std::stoul(value);
    } else if (key == "delta") {
      s.delta = std::stoul(value);
    } else if (key == "gamma") {
      // Informational: delay trials use gamma = 1, MTFA gamma = infinity.
      if (value != "1" && value != "inf")
        throw std::runtime_error("scenario: gamma must be 1 or inf");
    } else if (key == "epsilon") {
      s.epsilon = std::stod(value);
    } else if (key == "beta") {
      beta_seen = true;
      for (double b : parse_list(value))
        s.thresholds.push_back(calibrate_threshold(b));
    } else if (key == "A") {
      a_seen = true;
      for (double a : parse_list(value)) s.thresholds.push_back(a);
    } else if (key == "j") {
      s.j_fastpath = std::stod(value);
    } else if (key == "paths") {
      s.delay_paths = std::stoul(value);
      s.mtfa_paths = std::stoul(value);
    } else if (key == "delay_paths") {
      s.delay_paths = std::stoul(value);
    } else if (key == "mtfa_paths") {
      s.mtfa_paths = std::stoul(value);
    } else if (key == "window") {
      s.window = std::stoul(value);
    } else if (key == "seed") {
      s.seed = std::stoull(value);
      s.seed_set = true;
    } else if (key == "horizon") {
      s.horizon = std::stoul(value);
    } else {
      unknown.push_back(key);
    }
  }
  if (!unknown.empty()) {
    std::string msg = "scenario: unknown keys:";
    for (const auto& k : unknown) msg += " " + k;
    throw std::runtime_error(msg);
  }
  if (beta_seen && a_seen)
    throw std::runtime_error("scenario: give beta or A, not both");
  if (s.thresholds.empty())
    throw std::runtime_error("scenario: no thresholds (beta or A)");
  if (!s.seed_set) throw std::runtime_error("scenario: seed is required");
  if (s.dof == 0) s.dof = s.k + 2;
  return s;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("scenario: cannot open " + path);
  return parse_scenario(in);
}

void run_scenario(const Scenario& s, bool fast_path, std::ostream& out) {
  const ModelParams params(s.n, s.p, s.delta);

  // Scenario-level draws, fixed across all paths and thresholds:
  // sigma_i^2 ~ U[0.5, 2] for the diagonal pre-change covariance, one
  // Wishart block for the post-change covariance.
  ChangeModel delay_model, mtfa_model;
  double j_hat = s.j_fastpath;
  if (!fast_path) {
    auto sigma_rng = rng::make_stream(s.seed, 0, 1);
    std::uniform_real_distribution<double> unif(0.5, 2.0);
    std::vector<double> variances(s.p);
    for (auto& v : variances) v = unif(sigma_rng);
    auto pre = CovarianceSpec::diagonal(variances);

    auto wishart_rng = rng::make_stream(s.seed, 0, 2);
    auto post = sample_wishart_block_cov(s.p, s.k, s.dof, wishart_rng);
    pre.cholesky();
    post.cholesky();

    delay_model = ChangeModel{1, s.n, s.p, pre, post, nullptr,
                              sub_seed(s.seed, 1)};
    mtfa_model = ChangeModel{ChangeModel::kNeverChanges, s.n, s.p, pre, post,
                             nullptr, sub_seed(s.seed, 2)};

    // Measured post-change parameter: MLE over post-change V samples.
    constexpr std::size_t kJhatBlocks = 1000;
    std::vector<double> vs(kJhatBlocks);
    for (std::size_t m = 0; m < kJhatBlocks; ++m) {
      auto rng = rng::make_stream(sub_seed(s.seed, 3), 0, m);
      vs[m] = summary_statistic(generate_block(delay_model, m + 1, rng),
                                s.delta)
                  .v;
    }
    j_hat = mle_j(vs, params).j;
  } else if (s.j_fastpath <= 0.0) {
    throw std::runtime_error("scenario: fast path requires the j key");
  }

  out << "scenario_id,A,mean_delay,se_delay,mtfa,se_mtfa,j_hat,censored_count\n";
  for (double a : s.thresholds) {
    GlrConfig config;
    config.epsilon = s.epsilon;
    config.threshold_a = a;
    config.window = (s.window > 0)
                        ? s.window
                        : default_window(std::exp(a), s.epsilon);

    McResult delay, mtfa;
    if (fast_path) {
      delay = run_delay_trial_fastpath(s.j_fastpath, config, params,
                                       s.delay_paths, sub_seed(s.seed, 1),
                                       s.horizon);
      mtfa = run_mtfa_trial_fastpath(config, params, s.mtfa_paths,
                                     sub_seed(s.seed, 2), s.horizon);
    } else {
      delay = run_delay_trial(delay_model, config, params, s.delay_paths,
                              s.horizon);
      mtfa = run_mtfa_trial(mtfa_model, config, params, s.mtfa_paths,
                            s.horizon);
    }
    out << s.id << ',' << a << ',' << delay.estimate << ','
        << delay.std_error << ',' << mtfa.estimate << ',' << mtfa.std_error
        << ',' << j_hat << ',' << (delay.censored + mtfa.censored) << '\n';
  }
}

}  // namespace vqcd
