// abxs: command-line front end for the alpha-Beaulieu-Xie shadowed library.
//
//   abxs eval       metric sweeps as CSV (exact, asymptotic, oracle, Monte-Carlo)
//   abxs simulate   SNR histogram against the model pdf, KS test, sample mean
//   abxs benchmark  closed form vs quadrature timing at 1% accuracy
//
// Exit codes: 0 success, 2 usage error, 3 numerical failure.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "abxs/channel.hpp"
#include "abxs/errors.hpp"
#include "abxs/metrics.hpp"
#include "abxs/montecarlo.hpp"
#include "cli_core.hpp"

namespace {

using namespace abxs;
using abxs::cli::CsvWriter;
using abxs::cli::UsageError;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------------------
// Parameter points in display units

enum class Field { MX, MY, OmegaXDb, OmegaYDb, Alpha, GammaBarDb, Gamma };

constexpr Field kAllFields[] = {Field::MX,    Field::MY,         Field::OmegaXDb, Field::OmegaYDb,
                                Field::Alpha, Field::GammaBarDb, Field::Gamma};

const char* field_name(Field f) {
  switch (f) {
    case Field::MX:
      return "m_x";
    case Field::MY:
      return "m_y";
    case Field::OmegaXDb:
      return "omega_x_db";
    case Field::OmegaYDb:
      return "omega_y_db";
    case Field::Alpha:
      return "alpha";
    case Field::GammaBarDb:
      return "gamma_bar_db";
    case Field::Gamma:
      return "gamma";
  }
  return "?";
}

struct Point {
  double m_x = 1.0;
  double m_y = 1.0;
  double omega_x_db = 0.0;
  double omega_y_db = 0.0;
  double alpha = 2.0;
  double gamma_bar_db = 10.0;
  double gamma = 1.0;  // instantaneous SNR (linear), for pdf/cdf/ccdf

  double& at(Field f) {
    switch (f) {
      case Field::MX:
        return m_x;
      case Field::MY:
        return m_y;
      case Field::OmegaXDb:
        return omega_x_db;
      case Field::OmegaYDb:
        return omega_y_db;
      case Field::Alpha:
        return alpha;
      case Field::GammaBarDb:
        return gamma_bar_db;
      case Field::Gamma:
        return gamma;
    }
    return m_x;
  }

  ChannelParams params() const {
    ChannelParams p;
    p.m_x = m_x;
    p.m_y = m_y;
    p.omega_x = cli::db_to_linear(omega_x_db);
    p.omega_y = cli::db_to_linear(omega_y_db);
    p.alpha = alpha;
    p.gamma_bar = cli::db_to_linear(gamma_bar_db);
    return p;
  }
};

// ---------------------------------------------------------------------------
// Figure presets

struct Preset {
  std::string metric = "aber";
  std::string modulation = "qam16";
  std::vector<Point> curves{Point{}};
  std::optional<Field> sweep;
  std::vector<double> sweep_values;
};

std::vector<double> arange(double start, double step, double stop) {
  return cli::parse_values(cli::format_double(start) + ":" + cli::format_double(step) + ":" +
                               cli::format_double(stop),
                           "preset")
      .values;
}

Preset make_preset(int fig) {
  Preset p;
  p.curves.clear();
  switch (fig) {
    case 0:
      p.curves.push_back(Point{});
      break;
    case 1:
      p.metric = "pdf";
      for (double a : {1.0, 2.0, 4.0}) {
        Point pt{1.6, 1.5, 2.0, 2.0, a, 3.0, 1.0};
        p.curves.push_back(pt);
      }
      p.sweep = Field::Gamma;
      p.sweep_values = arange(0.05, 0.05, 8.0);
      break;
    case 2:
      p.metric = "aber";
      for (double a : {1.0, 2.0, 3.0, 4.0}) p.curves.push_back(Point{1.2, 1.2, 1.0, 1.0, a, 20.0, 1.0});
      p.sweep = Field::GammaBarDb;
      p.sweep_values = arange(0, 5, 40);
      break;
    case 3:
      p.metric = "aber";
      for (double mx : {0.5, 4.0}) {
        for (double my : {0.5, 4.0}) p.curves.push_back(Point{mx, my, -3.0, 3.0, 2.0, 20.0, 1.0});
      }
      p.sweep = Field::Alpha;
      p.sweep_values = arange(0.5, 0.5, 5.0);
      break;
    case 4:
      p.metric = "capacity";
      for (double m : {0.5, 3.0}) {
        for (double a : {1.0, 2.0, 4.0}) p.curves.push_back(Point{m, m, 1.0, 1.0, a, 20.0, 1.0});
      }
      p.sweep = Field::GammaBarDb;
      p.sweep_values = arange(0, 5, 40);
      break;
    default:
      throw UsageError("--fig must be 1, 2, 3 or 4");
  }
  return p;
}

// ---------------------------------------------------------------------------
// Shared flags

struct ParamFlags {
  int fig = 0;
  std::map<Field, std::string> raw;

  void add_to(CLI::App& app) {
    app.add_option("--fig", fig, "Figure preset (1-4); explicit flags override it");
    add(app, Field::MX, "--mx", "Overall fading severity m_X");
    add(app, Field::MY, "--my", "LoS shadowing severity m_Y");
    add(app, Field::OmegaXDb, "--omega-x", "NLoS power Omega_X in dB");
    add(app, Field::OmegaYDb, "--omega-y", "LoS power Omega_Y in dB (-inf disables LoS)");
    add(app, Field::Alpha, "--alpha", "Nonlinearity exponent alpha");
    add(app, Field::GammaBarDb, "--snr-db", "Average SNR gamma_bar in dB");
    add(app, Field::Gamma, "--gamma", "Instantaneous SNR gamma (linear), for pdf/cdf/ccdf");
    app.add_option("--gamma-db", gamma_db, "Instantaneous SNR gamma in dB, for pdf/cdf/ccdf");
  }

  // Resolves the preset plus overrides into curves and the swept variable.
  Preset resolve(bool allow_range) const {
    Preset p = make_preset(fig);
    std::map<Field, cli::ValueSpec> specs;
    for (const auto& [f, text] : raw) specs[f] = cli::parse_values(text, field_name(f));
    if (!gamma_db.empty()) {
      if (raw.count(Field::Gamma)) throw UsageError("--gamma and --gamma-db are mutually exclusive");
      auto spec = cli::parse_values(gamma_db, "gamma_db");
      for (double& v : spec.values) v = cli::db_to_linear(v);
      specs[Field::Gamma] = spec;
    }
    std::optional<Field> range_field;
    for (const auto& [f, spec] : specs) {
      if (!spec.is_range) continue;
      if (!allow_range) throw UsageError(std::string(field_name(f)) + ": ranges are not accepted here");
      if (range_field) throw UsageError("only one flag may be a start:step:stop range");
      range_field = f;
    }
    if (range_field) {
      p.sweep = *range_field;
      p.sweep_values = specs[*range_field].values;
    } else if (p.sweep && specs.count(*p.sweep)) {
      // A plain value for the preset's swept variable pins it.
      p.sweep.reset();
      p.sweep_values.clear();
    }
    for (const auto& [f, spec] : specs) {
      if (spec.is_range) continue;
      std::vector<Point> expanded;
      for (const Point& c : p.curves) {
        for (double v : spec.values) {
          Point pt = c;
          pt.at(f) = v;
          expanded.push_back(pt);
        }
      }
      p.curves = expanded;
    }
    return p;
  }

  std::string gamma_db;

 private:
  void add(CLI::App& app, Field f, const char* flag, const char* help) {
    app.add_option_function<std::string>(flag, [this, f](const std::string& v) { raw[f] = v; }, help);
  }
};

struct McFlags {
  std::uint64_t seed = 1;
  int streams = 64;
  int threads = 0;

  void add_to(CLI::App& app) {
    app.add_option("--seed", seed, "Monte-Carlo seed");
    app.add_option("--streams", streams, "Independent RNG streams (results depend on this, not on threads)")
        ->check(CLI::PositiveNumber);
    app.add_option("--threads", threads, "Worker threads (0 = OpenMP default)")
        ->envname("ABXS_THREADS")
        ->check(CLI::NonNegativeNumber);
  }

  mc::SimulationConfig config(std::int64_t trials) const {
    mc::SimulationConfig cfg;
    cfg.seed = seed;
    cfg.trials = trials;
    cfg.streams = streams;
    cfg.threads = threads;
    return cfg;
  }
};

// Evaluates fn(i) for i in [0, n) on `threads` workers and rethrows the first
// failure in index order.
template <class Fn>
void for_each_index(int n, int threads, bool parallel, Fn fn) {
  std::vector<std::exception_ptr> errors(n);
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(team) if (parallel)
  for (int i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void write_context_header(CsvWriter& csv) {
  for (Field f : kAllFields) csv.field(field_name(f));
}

void write_context(CsvWriter& csv, const Point& pt) {
  Point copy = pt;
  for (Field f : kAllFields) csv.field(copy.at(f));
}

// ---------------------------------------------------------------------------
// eval

struct EvalFlags {
  ParamFlags params;
  McFlags mc;
  std::string metric;
  std::string modulation;
  bool oracle = false;
  std::int64_t mc_trials = 0;
  double series_tol = 1e-7;
  int max_terms = 64;
  bool max_terms_given = false;
};

struct EvalRow {
  Point pt;
  double x = 0;
  double exact = kNaN, asymptotic = kNaN, oracle = kNaN, mc = kNaN, mc_se = kNaN;
  std::string path;
  int terms = 0;
};

void evaluate_row(EvalRow& row, const std::string& metric, const ModulationScheme& mod, const EvalFlags& flags) {
  const Channel ch(row.pt.params());
  const double g = row.pt.gamma;
  ExactOptions eo;
  eo.series.rel_tol = flags.series_tol;
  eo.series.max_terms = flags.max_terms;
  const auto cfg = flags.mc.config(std::max<std::int64_t>(flags.mc_trials, 1));
  if (metric == "pdf") {
    row.exact = snr_pdf(ch, g);
    row.asymptotic = snr_pdf_asymptotic(ch, g);
    row.path = "closed-form";
  } else if (metric == "cdf" || metric == "ccdf") {
    const bool upper = metric == "ccdf";
    specfun::SeriesControl ctl;
    if (flags.max_terms_given) ctl.max_terms = flags.max_terms;
    row.exact = upper ? snr_ccdf(ch, g, ctl) : snr_cdf(ch, g, ctl);
    const double asym = snr_cdf_asymptotic(ch, g);
    row.asymptotic = upper ? 1 - asym : asym;
    row.path = "series";
    if (flags.oracle) {
      const double c = cdf_quadrature(ch, g);
      row.oracle = upper ? 1 - c : c;
    }
    if (flags.mc_trials > 0) {
      const auto e = mc::mc_mean(ch, cfg, [g, upper](double s) { return (s <= g) != upper ? 1.0 : 0.0; });
      row.mc = e.estimate;
      row.mc_se = e.std_error;
    }
  } else if (metric == "aber") {
    const auto r = aber_exact(ch, mod, eo);
    row.exact = r.value;
    row.path = to_string(r.path);
    row.terms = r.terms_used;
    if (r.truncated) row.path += "(truncated)";
    row.asymptotic = aber_asymptotic(ch, mod).value;
    if (flags.oracle) row.oracle = aber_quadrature(ch, mod).value;
    if (flags.mc_trials > 0) {
      const auto e = mc::mc_aber(ch, mod, cfg);
      row.mc = e.estimate;
      row.mc_se = e.std_error;
    }
  } else if (metric == "capacity") {
    const auto r = capacity_exact(ch, eo);
    row.exact = r.value;
    row.path = to_string(r.path);
    row.terms = r.terms_used;
    if (r.truncated) row.path += "(truncated)";
    row.asymptotic = capacity_asymptotic(ch);
    if (flags.oracle) row.oracle = capacity_quadrature(ch).value;
    if (flags.mc_trials > 0) {
      const auto e = mc::mc_capacity(ch, cfg);
      row.mc = e.estimate;
      row.mc_se = e.std_error;
    }
  }
}

int run_eval(const EvalFlags& flags) {
  Preset preset = flags.params.resolve(true);
  const std::string metric = flags.metric.empty() ? preset.metric : flags.metric;
  const ModulationScheme mod = parse_modulation(flags.modulation.empty() ? preset.modulation : flags.modulation);
  if (flags.mc_trials < 0) throw UsageError("--mc must be >= 0");
  if (!(flags.series_tol > 0) || flags.max_terms < 1) throw UsageError("--series-tol/--max-terms must be positive");

  Field var = preset.sweep.value_or(metric == "aber" || metric == "capacity" ? Field::GammaBarDb : Field::Gamma);
  std::vector<EvalRow> rows;
  for (const Point& c : preset.curves) {
    const std::vector<double> xs = preset.sweep ? preset.sweep_values : std::vector<double>{Point(c).at(var)};
    for (double x : xs) {
      EvalRow r;
      r.pt = c;
      r.pt.at(var) = x;
      r.x = x;
      rows.push_back(r);
    }
  }
  for (const auto& r : rows) validate(r.pt.params());

  // Monte-Carlo runs are parallel inside; otherwise spread the grid points.
  for_each_index(static_cast<int>(rows.size()), flags.mc.threads, flags.mc_trials == 0,
                 [&](int i) { evaluate_row(rows[i], metric, mod, flags); });

  CsvWriter csv(std::cout);
  csv.field(std::string("sweep_") + field_name(var)).field("metric").field("exact").field("asymptotic");
  if (flags.oracle) csv.field("oracle");
  if (flags.mc_trials > 0) csv.field("mc").field("mc_std_error");
  csv.field("path").field("terms");
  write_context_header(csv);
  csv.field("modulation");
  csv.end_row();
  for (const auto& r : rows) {
    csv.field(r.x).field(metric).field(r.exact).field(r.asymptotic);
    if (flags.oracle) csv.field(r.oracle);
    if (flags.mc_trials > 0) csv.field(r.mc).field(r.mc_se);
    csv.field(r.path).field(static_cast<long long>(r.terms));
    write_context(csv, r.pt);
    csv.field(metric == "aber" ? mod.name : "");
    csv.end_row();
  }
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateFlags {
  ParamFlags params;
  McFlags mc;
  std::int64_t trials = 1'000'000;
  int bins = 100;
  double hist_max = 0;
};

int run_simulate(const SimulateFlags& flags) {
  if (flags.trials < 1) throw UsageError("--trials must be >= 1");
  if (flags.bins < 1) throw UsageError("--bins must be >= 1");
  const Preset preset = flags.params.resolve(false);
  CsvWriter csv(std::cout);
  write_context_header(csv);
  csv.field("bin_lo").field("bin_hi").field("empirical_pdf").field("model_pdf").field("model_bin_average")
      .field("asymptotic_pdf");
  csv.end_row();
  std::ostringstream summary;
  for (const Point& c : preset.curves) {
    const Channel ch(c.params());
    auto cfg = flags.mc.config(flags.trials);
    cfg.histogram_bins = flags.bins;
    auto samples = mc::sample_snr_batch(ch, cfg);
    double mean = 0;
    for (double s : samples) mean += s;
    mean /= static_cast<double>(samples.size());
    double var = 0;
    for (double s : samples) var += (s - mean) * (s - mean);
    const double se = samples.size() > 1 ? std::sqrt(var / static_cast<double>(samples.size() - 1) /
                                                     static_cast<double>(samples.size()))
                                         : kNaN;
    double hi = flags.hist_max;
    if (!(hi > 0)) {
      std::vector<double> sorted = samples;
      const std::size_t idx = std::min(sorted.size() - 1, static_cast<std::size_t>(0.995 * sorted.size()));
      std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(idx), sorted.end());
      hi = sorted[idx] > 0 ? sorted[idx] : 1.0;
    }
    const auto h = mc::histogram(samples, flags.bins, 0.0, hi);
    for (int b = 0; b < flags.bins; ++b) {
      const double lo = h.edges[b], up = h.edges[b + 1], mid = (lo + up) / 2;
      write_context(csv, c);
      csv.field(lo).field(up).field(h.density[b]).field(snr_pdf(ch, mid))
          .field((snr_cdf(ch, up) - snr_cdf(ch, lo)) / (up - lo)).field(snr_pdf_asymptotic(ch, mid));
      csv.end_row();
    }
    const double ks = mc::ks_statistic(std::move(samples), [&ch](double g) { return snr_cdf(ch, g); });
    const double crit = mc::ks_critical_1pct(static_cast<std::size_t>(flags.trials));
    summary << "# summary alpha=" << cli::format_double(c.alpha) << " m_x=" << cli::format_double(c.m_x)
            << " m_y=" << cli::format_double(c.m_y) << " trials=" << flags.trials
            << " ks=" << cli::format_double(ks) << " ks_critical_1pct=" << cli::format_double(crit)
            << " ks_test=" << (ks <= crit ? "PASS" : "FAIL") << " sample_mean=" << cli::format_double(mean)
            << " mean_std_error=" << cli::format_double(se)
            << " gamma_bar=" << cli::format_double(ch.params().gamma_bar) << '\n';
  }
  std::cout << summary.str();
  return 0;
}

// ---------------------------------------------------------------------------
// benchmark

struct BenchmarkFlags {
  double alpha = 2.0;
  int reps = 5;
  double step_db = 5.0;
  std::string modulation = "qam16";
};

int run_benchmark(const BenchmarkFlags& flags) {
  if (flags.reps < 1) throw UsageError("--reps must be >= 1");
  if (!(flags.step_db > 0)) throw UsageError("--step-db must be > 0");
  const ModulationScheme mod = parse_modulation(flags.modulation);
  struct Set {
    const char* name;
    Point pt;
  };
  const Set sets[] = {{"integer", Point{1.0, 1.0, 0.0, 0.0, flags.alpha, 0.0, 1.0}},
                      {"non-integer", Point{0.5, 0.5, 1.0, 1.0, flags.alpha, 0.0, 1.0}}};
  const std::pair<double, double> regimes[] = {{-30.0, 10.0}, {10.0, 50.0}};

  ExactOptions fast_exact;
  fast_exact.series = {1e-3, 64};
  const quad::Options fast_quad{0.0, 1e-3, 4000};

  CsvWriter csv(std::cout);
  csv.field("set").field("regime_db").field("points").field("alpha").field("exact_seconds")
      .field("quadrature_seconds").field("speedup").field("exact_max_rel_error").field("quadrature_max_rel_error");
  csv.end_row();
  for (const Set& s : sets) {
    for (auto [lo, hi] : regimes) {
      std::vector<Channel> grid;
      for (double db : cli::parse_values(cli::format_double(lo) + ":" + cli::format_double(flags.step_db) + ":" +
                                             cli::format_double(hi),
                                         "regime")
                           .values) {
        Point pt = s.pt;
        pt.gamma_bar_db = db;
        grid.emplace_back(pt.params());
      }
      double err_exact = 0, err_quad = 0;
      for (const Channel& ch : grid) {
        const double ref = aber_quadrature(ch, mod).value;
        err_exact = std::max(err_exact, std::fabs(aber_exact(ch, mod, fast_exact).value / ref - 1));
        err_quad = std::max(err_quad, std::fabs(aber_quadrature(ch, mod, fast_quad).value / ref - 1));
      }
      auto time_median = [&](auto&& work) {
        std::vector<double> t;
        for (int r = 0; r < flags.reps; ++r) {
          const auto t0 = std::chrono::steady_clock::now();
          double sink = 0;
          for (const Channel& ch : grid) sink += work(ch);
          const auto t1 = std::chrono::steady_clock::now();
          if (!std::isfinite(sink)) throw NumericalError("benchmark: non-finite result");
          t.push_back(std::chrono::duration<double>(t1 - t0).count());
        }
        std::sort(t.begin(), t.end());
        return t[t.size() / 2];
      };
      const double te = time_median([&](const Channel& ch) { return aber_exact(ch, mod, fast_exact).value; });
      const double tq = time_median([&](const Channel& ch) { return aber_quadrature(ch, mod, fast_quad).value; });
      csv.field(s.name)
          .field(cli::format_double(lo) + ".." + cli::format_double(hi))
          .field(static_cast<long long>(grid.size()))
          .field(flags.alpha)
          .field(te)
          .field(tq)
          .field(tq / te)
          .field(err_exact)
          .field(err_quad);
      csv.end_row();
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alpha-Beaulieu-Xie shadowed fading: statistics, ABER, capacity, Monte-Carlo"};
  app.require_subcommand(1);

  EvalFlags eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a metric over a parameter sweep (CSV)");
  eval.params.add_to(*eval_cmd);
  eval.mc.add_to(*eval_cmd);
  eval_cmd->add_option("--metric", eval.metric, "pdf, cdf, ccdf, aber or capacity")
      ->check(CLI::IsMember({"pdf", "cdf", "ccdf", "aber", "capacity"}));
  eval_cmd->add_option("--mod", eval.modulation, "Modulation: bpsk, qpsk, qamM, pskM, fskM");
  eval_cmd->add_flag("--oracle", eval.oracle, "Add the adaptive-quadrature oracle column");
  eval_cmd->add_option("--mc", eval.mc_trials, "Add a Monte-Carlo column with N trials");
  eval_cmd->add_option("--series-tol", eval.series_tol, "Relative tolerance of the ABER/capacity mixture series");
  eval_cmd->add_option("--max-terms", eval.max_terms,
                       "Term cap of the mixture series (ABER/capacity: default 64; cdf/ccdf: only when given)");
  std::string config_path;
  eval_cmd->add_option("--config", config_path, "key=value file mirroring the flag names");

  SimulateFlags sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Histogram of simulated SNR vs the model pdf (CSV)");
  sim.params.add_to(*sim_cmd);
  sim.mc.add_to(*sim_cmd);
  sim_cmd->add_option("--trials", sim.trials, "Number of SNR draws per curve");
  sim_cmd->add_option("--bins", sim.bins, "Histogram bins");
  sim_cmd->add_option("--hist-max", sim.hist_max, "Upper histogram edge (default: 99.5% sample quantile)");
  sim_cmd->add_option("--config", config_path, "key=value file mirroring the flag names");

  BenchmarkFlags bench;
  auto* bench_cmd = app.add_subcommand("benchmark", "Closed-form vs quadrature ABER timing at 1% accuracy");
  bench_cmd->add_option("--alpha", bench.alpha, "Nonlinearity exponent");
  bench_cmd->add_option("--reps", bench.reps, "Timing repetitions (median is reported)");
  bench_cmd->add_option("--step-db", bench.step_db, "Grid step inside each regime");
  bench_cmd->add_option("--mod", bench.modulation, "Modulation scheme");

  try {
    // Config entries become ordinary flags so that CLI11 validates them.
    std::vector<std::string> args =
        cli::expand_config(std::vector<std::string>(argv + 1, argv + argc));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eval_cmd) {
      eval.max_terms_given = eval_cmd->count("--max-terms") > 0;
      return run_eval(eval);
    }
    if (*sim_cmd) return run_simulate(sim);
    if (*bench_cmd) return run_benchmark(bench);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "invalid parameter " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure in " << e.what() << '\n';
    return 3;
  }
  return 2;
}
