#include "discordlab/cli/cli.hpp"

#include "discordlab/cli/format.hpp"
#include "discordlab/cli/state_io.hpp"
#include "discordlab/conjectures.hpp"
#include "discordlab/dynamics.hpp"
#include "discordlab/errors.hpp"
#include "discordlab/parallel.hpp"
#include "discordlab/steering.hpp"
#include "discordlab/version.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>

namespace discordlab::cli {
namespace {

using nlohmann::json;

constexpr int kJsonDigits = 9;
constexpr double kGapThreshold = 1e-5;
constexpr double kRequiredPassFraction = 0.999;

// Options shared by every subcommand.
struct GlobalOptions {
  std::uint64_t seed = 42;
  std::optional<int> threads;
};

struct Context {
  GlobalOptions global;
  std::string command_line;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;

  Provenance provenance() const { return {std::string(kVersion), command_line, global.seed}; }
  int threads() const { return resolve_thread_count(global.threads); }
};

// Writes to the file named by `path`, or to the context stream when empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error("cannot open output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }
  bool is_file() const { return file_ != nullptr; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

std::string fmt(double value) { return format_double(value, 17); }

json vector_json(const Eigen::Vector3d& v) {
  return json::array({round_significant(v.x(), kJsonDigits), round_significant(v.y(), kJsonDigits),
                      round_significant(v.z(), kJsonDigits)});
}

json provenance_json(const Context& ctx) {
  return {{"tool", "discordlab"},
          {"version", std::string(kVersion)},
          {"command", ctx.command_line},
          {"seed", ctx.global.seed}};
}

json report_json(const CorrelationReport& r) {
  const auto num = [](double x) { return round_significant(x, kJsonDigits); };
  json ensemble = json::array();
  for (const auto& member : r.optimal_ensemble) {
    ensemble.push_back({{"probability", num(member.probability)},
                        {"bloch", vector_json(member.bloch)},
                        {"zero_probability", member.zero_probability}});
  }
  return {{"direction", std::string(to_string(r.direction))},
          {"branch", std::string(to_string(r.branch))},
          {"mutual_info", num(r.mutual_info)},
          {"classical", num(r.classical)},
          {"discord", num(r.discord)},
          {"min_avg_entropy", num(r.min_avg_entropy)},
          {"local_entropy", num(r.local_entropy)},
          {"optimal_measurement", vector_json(r.optimal_measurement.direction())},
          {"optimal_ensemble", ensemble},
          {"measurement_class", "rank-1 projective"}};
}

GridSpec parse_grid(const std::string& text) {
  return text.empty() ? GridSpec{} : GridSpec::parse(text);
}

// ---------------------------------------------------------------------------

struct ComputeOptions {
  std::string state;
  std::string direction = "b-to-a";
  std::string method = "auto";
  std::string grid;
  bool verify = false;
  std::string out;
};

int run_compute(const Context& ctx, const ComputeOptions& o) {
  const TwoQubitState rho = load_state(o.state);
  const Direction direction = o.direction == "a-to-b" ? Direction::a_to_b : Direction::b_to_a;
  const Method method = o.method == "analytic"  ? Method::analytic
                        : o.method == "numeric" ? Method::numeric
                                                : Method::automatic;
  const GridSpec grid = parse_grid(o.grid);

  CorrelationReport report = correlation_report(rho, direction, method, grid);
  json doc = {{"provenance", provenance_json(ctx)},
              {"method", o.method},
              {"grid", grid.to_string()}};
  if (o.verify) {
    const TwoQubitState oriented = direction == Direction::b_to_a ? rho : swap_parties(rho);
    const bool has_analytic = as_x_state(oriented).has_value();
    if (has_analytic) report = cross_checked_report(rho, direction, grid);
    doc["verified"] = has_analytic ? "analytic and numeric agree within 1e-5"
                                   : "numeric only (no closed form for this state)";
  }
  doc.update(report_json(report));
  Sink sink(o.out, *ctx.out);
  *sink << doc.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct EllipsoidOptions {
  std::string state;
  std::string out;
};

int run_ellipsoid(const Context& ctx, const EllipsoidOptions& o) {
  const TwoQubitState rho = load_state(o.state);
  const SteeringEllipsoid e = steering_ellipsoid(rho);
  json rotation = json::array();
  for (int i = 0; i < 3; ++i) rotation.push_back(vector_json(e.rotation.row(i).transpose()));
  const json doc = {{"provenance", provenance_json(ctx)},
                    {"center", vector_json(e.center)},
                    {"semi_axes", vector_json(e.semi_axes)},
                    {"rotation", rotation},
                    {"orientation", round_significant(e.orientation, kJsonDigits)},
                    {"degeneracy", std::string(to_string(e.degeneracy))},
                    {"det_R", round_significant(pauli_expansion(rho).determinant(), kJsonDigits)}};
  Sink sink(o.out, *ctx.out);
  *sink << doc.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct DynamicsOptions {
  std::string state;
  double rate = 1.0;
  double t_max = 1.0;
  int steps = 101;
  std::string channel = "phase_damping";
  std::string grid;
  bool fast = false;
  std::string out;
};

int run_dynamics(const Context& ctx, const DynamicsOptions& o) {
  const TwoQubitState rho = load_state(o.state);
  TrajectoryOptions opts;
  opts.channel = NamedChannel::parse(o.channel);
  opts.fast = o.fast;
  opts.grid = parse_grid(o.grid);
  opts.threads = ctx.threads();
  Trajectory traj = evolve_trajectory(rho, o.rate, o.t_max, o.steps, opts);
  if (opts.channel.kind == ChannelKind::phase_damping && o.rate > 0.0) {
    if (const auto bd = as_bell_diagonal(rho)) traj.critical_time = critical_time(*bd, o.rate);
  }
  const std::string t_bar = traj.critical_time ? fmt(*traj.critical_time) : "none";

  Sink sink(o.out, *ctx.out);
  write_csv_header(*sink, ctx.provenance(),
                   {"channel: " + opts.channel.to_string(), "rate: " + fmt(o.rate),
                    "t_bar=" + t_bar});
  write_csv_row(*sink, {"t", "gamma", "I", "C", "Q", "branch", "l1", "l2", "l3"});
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const auto& r = traj.reports[i];
    write_csv_row(*sink, {fmt(traj.times[i]), fmt(traj.gammas[i]), fmt(r.mutual_info),
                          fmt(r.classical), fmt(r.discord), std::string(to_string(r.branch)),
                          fmt(traj.axes[i].x()), fmt(traj.axes[i].y()), fmt(traj.axes[i].z())});
  }
  if (sink.is_file()) *ctx.out << "t_bar=" << t_bar << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct MixtureConjectureOptions {
  std::size_t samples = 1000;
  std::string grid;
  double gap_threshold = kGapThreshold;
  std::string out;
  std::string counterexamples;
};

int run_conjecture_mixture(const Context& ctx, const MixtureConjectureOptions& o) {
  const ConjectureRun run =
      test_equi_entropy_conjecture(o.samples, ctx.global.seed, parse_grid(o.grid), ctx.threads());
  const std::vector<std::string> columns{"lambda", "alpha", "beta", "n1", "n2",
                                         "n3",     "gap",   "min_entropy"};
  const auto row = [](const GapSample& s) {
    const Eigen::Vector3d& n = s.optimal_measurement.direction();
    return std::vector<std::string>{fmt(s.params.lambda), fmt(s.params.alpha),
                                    fmt(s.params.beta),   fmt(n.x()),
                                    fmt(n.y()),           fmt(n.z()),
                                    fmt(s.gap),           fmt(s.min_entropy)};
  };
  std::size_t failures = 0;
  for (const auto& s : run.samples) failures += s.gap > o.gap_threshold ? 1 : 0;
  const double pass_fraction =
      1.0 - static_cast<double>(failures) / static_cast<double>(run.samples.size());

  {
    Sink sink(o.out, *ctx.out);
    write_csv_header(*sink, ctx.provenance(),
                     {"samples: " + std::to_string(run.samples.size()),
                      "max_gap: " + fmt(run.stats.max_gap),
                      "fraction_gap_le_1e-6: " + fmt(run.stats.fraction_within_1e6),
                      "fraction_gap_le_1e-5: " + fmt(run.stats.fraction_within_1e5),
                      "percentile_99.9: " + fmt(run.stats.percentile_999)});
    write_csv_row(*sink, columns);
    for (const auto& s : run.samples) write_csv_row(*sink, row(s));
  }

  std::string dump_path = o.counterexamples;
  if (dump_path.empty() && !o.out.empty() && o.out != "-") dump_path = o.out + ".counterexamples.csv";
  if (failures > 0 && !dump_path.empty()) {
    std::ofstream dump(dump_path, std::ios::binary);
    write_csv_header(dump, ctx.provenance(), {"gap threshold: " + fmt(o.gap_threshold)});
    write_csv_row(dump, columns);
    for (const auto& s : run.samples) {
      if (s.gap > o.gap_threshold) write_csv_row(dump, row(s));
    }
  }

  *ctx.err << "samples=" << run.samples.size() << " max_gap=" << fmt(run.stats.max_gap)
           << " above_threshold=" << failures << " pass_fraction=" << fmt(pass_fraction) << '\n';
  return pass_fraction >= kRequiredPassFraction ? kOk : kViolation;
}

struct GeneralRConjectureOptions {
  std::size_t samples = 100;
  std::string grid;
  double chord_threshold = 1e-6;
  double gap_threshold = 1e-6;
  std::string out;
};

int run_conjecture_general_r(const Context& ctx, const GeneralRConjectureOptions& o) {
  if (o.samples < 1) throw ParameterError("--samples must be at least 1");
  ClassifyOptions options;
  if (!o.grid.empty()) options.grid = GridSpec::parse(o.grid);
  options.chord_threshold = o.chord_threshold;
  options.gap_threshold = o.gap_threshold;

  std::vector<GeneralRParams> params(o.samples);
  std::vector<LineClassification> results(o.samples);
  parallel_for(o.samples, ctx.threads(), [&](std::size_t i) {
    params[i] = sample_general_r(ctx.global.seed, i);
    results[i] = classify_optimal_line(params[i], options);
  });

  std::size_t class_one = 0;
  Sink sink(o.out, *ctx.out);
  write_csv_header(*sink, ctx.provenance(),
                   {"samples: " + std::to_string(o.samples),
                    "chord_threshold: " + fmt(o.chord_threshold),
                    "gap_threshold: " + fmt(o.gap_threshold)});
  write_csv_row(*sink, {"r1", "r3", "s1", "s3", "t13", "t22", "t31", "t11", "t33", "class", "gap",
                        "chord_y3", "S_min_A", "S_min_Atilde"});
  for (std::size_t i = 0; i < o.samples; ++i) {
    const auto& p = params[i];
    const auto& r = results[i];
    class_one += r.cls == OptimalLineClass::I ? 1 : 0;
    write_csv_row(*sink, {fmt(p.r1), fmt(p.r3), fmt(p.s1), fmt(p.s3), fmt(p.t13), fmt(p.t22),
                          fmt(p.t31), fmt(p.t11()), fmt(p.t33()), std::string(to_string(r.cls)),
                          fmt(r.gap), fmt(r.chord_y3), fmt(r.min_entropy_a),
                          fmt(r.min_entropy_a_tilde)});
  }
  *ctx.err << "samples=" << o.samples << " class_I=" << class_one
           << " class_II=" << o.samples - class_one << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct SweepOptions {
  double lambda = 0.5;
  int grid = 31;
  std::string oracle_grid;
  std::string method = "oracle";
  std::string out;
};

int run_sweep_mixture(const Context& ctx, const SweepOptions& o) {
  if (o.grid < 2) throw ParameterError("--grid must be at least 2");
  const GridSpec oracle_grid = parse_grid(o.oracle_grid);
  validate(MixtureParams{o.lambda, 0.0, 0.0});
  const auto n = static_cast<std::size_t>(o.grid);
  const double step = (std::numbers::pi / 2.0) / static_cast<double>(n - 1);
  std::vector<CorrelationReport> reports(n * n);
  parallel_for(n * n, ctx.threads(), [&](std::size_t k) {
    const MixtureParams p{o.lambda, step * static_cast<double>(k / n),
                          step * static_cast<double>(k % n)};
    reports[k] = o.method == "conjecture" ? mixture_correlations_via_conjecture(p, oracle_grid).report
                                          : mixture_correlations(p, oracle_grid);
  });

  Sink sink(o.out, *ctx.out);
  write_csv_header(*sink, ctx.provenance(),
                   {"lambda: " + fmt(o.lambda), "nodes_per_angle: " + std::to_string(n),
                    "method: " + o.method});
  write_csv_row(*sink, {"alpha", "beta", "I", "C", "Q"});
  for (std::size_t k = 0; k < n * n; ++k) {
    const auto& r = reports[k];
    write_csv_row(*sink, {fmt(step * static_cast<double>(k / n)),
                          fmt(step * static_cast<double>(k % n)), fmt(r.mutual_info),
                          fmt(r.classical), fmt(r.discord)});
  }
  return kOk;
}

std::string join_command(const std::vector<std::string>& args) {
  std::string text = "discordlab";
  for (const auto& a : args) text += " " + a;
  return text;
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  ctx.command_line = join_command(args);
  ctx.out = &out;
  ctx.err = &err;

  CLI::App app{"Classical correlation and quantum discord of two-qubit states", "discordlab"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.add_option("--seed", ctx.global.seed, "Random seed recorded in every output header")
      ->capture_default_str();
  app.add_option("--threads", ctx.global.threads,
                 "Worker threads (default: DISCORDLAB_THREADS or hardware concurrency)")
      ->check(CLI::PositiveNumber);

  std::function<int()> action;
  const auto grid_check = CLI::Validator(
      [](std::string& s) -> std::string {
        try {
          GridSpec::parse(s);
        } catch (const Error& e) {
          return e.what();
        }
        return {};
      },
      "<polar>x<azimuth>");

  ComputeOptions compute;
  auto* c = app.add_subcommand("compute", "Correlation report for one state (JSON)");
  c->add_option("--state", compute.state, "State JSON file")->required()->check(CLI::ExistingFile);
  c->add_option("--direction", compute.direction)
      ->check(CLI::IsMember({"b-to-a", "a-to-b"}))
      ->capture_default_str();
  c->add_option("--method", compute.method)
      ->check(CLI::IsMember({"auto", "analytic", "numeric"}))
      ->capture_default_str();
  c->add_option("--grid", compute.grid, "Oracle grid, default 181x360")->check(grid_check);
  c->add_flag("--verify", compute.verify, "Cross-check analytic and numeric routes");
  c->add_option("--out", compute.out, "Output file (default stdout)");
  c->callback([&] { action = [&] { return run_compute(ctx, compute); }; });

  EllipsoidOptions ellipsoid;
  auto* e = app.add_subcommand("ellipsoid", "Steering ellipsoid of one state (JSON)");
  e->add_option("--state", ellipsoid.state)->required()->check(CLI::ExistingFile);
  e->add_option("--out", ellipsoid.out);
  e->callback([&] { action = [&] { return run_ellipsoid(ctx, ellipsoid); }; });

  DynamicsOptions dynamics;
  auto* d = app.add_subcommand("dynamics", "Correlations under a local channel (CSV)");
  d->add_option("--state", dynamics.state)->required()->check(CLI::ExistingFile);
  d->add_option("--rate", dynamics.rate)->check(CLI::NonNegativeNumber)->capture_default_str();
  d->add_option("--t-max", dynamics.t_max)->check(CLI::NonNegativeNumber)->capture_default_str();
  d->add_option("--steps", dynamics.steps)->check(CLI::Range(2, 100000000))->capture_default_str();
  d->add_option("--channel", dynamics.channel,
                "phase_damping, amplitude_damping or pauli(px,py,pz)")
      ->capture_default_str();
  d->add_option("--grid", dynamics.grid)->check(grid_check);
  d->add_flag("--fast", dynamics.fast, "Closed-form steps only (X states)");
  d->add_option("--out", dynamics.out);
  d->callback([&] { action = [&] { return run_dynamics(ctx, dynamics); }; });

  auto* conj = app.add_subcommand("conjecture", "Monte-Carlo conjecture tests (CSV)");
  conj->require_subcommand(1);
  MixtureConjectureOptions mixture;
  auto* cm = conj->add_subcommand("mixture", "Norm gap at the optimum for product-state mixtures");
  cm->add_option("--samples", mixture.samples)->check(CLI::PositiveNumber)->capture_default_str();
  cm->add_option("--seed", ctx.global.seed);
  cm->add_option("--grid", mixture.grid)->check(grid_check);
  cm->add_option("--gap-threshold", mixture.gap_threshold)->capture_default_str();
  cm->add_option("--out", mixture.out);
  cm->add_option("--counterexamples", mixture.counterexamples,
                 "Counterexample CSV (default <out>.counterexamples.csv)");
  cm->callback([&] { action = [&] { return run_conjecture_mixture(ctx, mixture); }; });

  GeneralRConjectureOptions general;
  auto* cg = conj->add_subcommand("general-r", "Optimal-line class of random constrained-R states");
  cg->add_option("--samples", general.samples)->check(CLI::PositiveNumber)->capture_default_str();
  cg->add_option("--seed", ctx.global.seed);
  cg->add_option("--grid", general.grid)->check(grid_check);
  cg->add_option("--chord-threshold", general.chord_threshold)->capture_default_str();
  cg->add_option("--gap-threshold", general.gap_threshold)->capture_default_str();
  cg->add_option("--out", general.out);
  cg->callback([&] { action = [&] { return run_conjecture_general_r(ctx, general); }; });

  auto* sw = app.add_subcommand("sweep", "Correlation surfaces (CSV)");
  sw->require_subcommand(1);
  SweepOptions sweep;
  auto* sm = sw->add_subcommand("mixture", "(alpha, beta) grid of I, C, Q at fixed lambda");
  sm->add_option("--lambda", sweep.lambda)->required()->check(CLI::Range(0.0, 1.0));
  sm->add_option("--grid", sweep.grid, "Nodes per angle on [0, pi/2]")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  sm->add_option("--oracle-grid", sweep.oracle_grid)->check(grid_check);
  sm->add_option("--method", sweep.method)
      ->check(CLI::IsMember({"oracle", "conjecture"}))
      ->capture_default_str();
  sm->add_option("--out", sweep.out);
  sm->callback([&] { action = [&] { return run_sweep_mixture(ctx, sweep); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    return action ? action() : kUsageError;
  } catch (const SchemaError& e) {
    err << "invalid state file: " << e.what() << '\n';
    return kInvalidState;
  } catch (const ValidationError& e) {
    err << "invalid state: " << e.what() << '\n';
    return kInvalidState;
  } catch (const ConjectureViolation& e) {
    err << "violation: " << e.what() << '\n';
    return kViolation;
  } catch (const ParameterError& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kUsageError;
  } catch (const SingularCorrelationError& e) {
    err << "unsupported state: " << e.what() << '\n';
    return kInvalidState;
  } catch (const UnsupportedStructureError& e) {
    err << "unsupported state: " << e.what() << '\n';
    return kInvalidState;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace discordlab::cli
