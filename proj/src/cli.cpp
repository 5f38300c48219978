#include "raa/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <thread>

#include <CLI11.hpp>

#include "raa/errors.hpp"
#include "raa/parallel.hpp"
#include "raa/random.hpp"

namespace raa {

namespace fs = std::filesystem;

namespace {

enum class LogLevel { Off = 0, Warn = 1, Info = 2, Debug = 3 };

LogLevel log_level() {
  const char* env = std::getenv("RAA_LOG");
  if (env == nullptr) return LogLevel::Warn;
  const std::string v(env);
  if (v == "off" || v == "0") return LogLevel::Off;
  if (v == "info" || v == "2") return LogLevel::Info;
  if (v == "debug" || v == "3") return LogLevel::Debug;
  return LogLevel::Warn;
}

void log(LogLevel level, const std::string& msg) {
  static const LogLevel current = log_level();
  if (level <= current && level != LogLevel::Off) std::clog << "raa: " << msg << '\n';
}

std::string fmt(double v) { return format_double(v); }

std::string describe_noise(const std::optional<NoiseSpec>& noise) {
  if (!noise) return "none";
  std::string out;
  for (const auto& c : noise->components) {
    if (!out.empty()) out += '+';
    if (const auto* t = std::get_if<TranslationalNoise>(&c)) {
      out += "translational(" + fmt(t->dx) + " " + fmt(t->dy) + ")";
    } else if (const auto* r = std::get_if<RotationalNoise>(&c)) {
      out += "rotational(" + fmt(r->angle) + ")";
    } else {
      const auto& rn = std::get<RandomNoise>(c);
      out += "random(" + fmt(rn.bound) + " " + fmt(rn.fraction) + ")";
    }
  }
  return out + "@" + std::to_string(noise->seed);
}

std::string metadata_line(const std::string& hash, std::uint64_t seed, const std::string& extra) {
  std::string line = "# raa config=" + hash + " seed=" + std::to_string(seed) +
                     " baseline_protocol=ed:global,wd:global,cd:window,ha:window";
  if (!extra.empty()) line += " " + extra;
  return line + "\n";
}

std::string class_of(const RoadSegment& seg) { return std::string(to_string(seg.shape)); }

}  // namespace

SolverConfig RunConfig::solver() const {
  SolverConfig cfg;
  cfg.lambda = lambda;
  cfg.mu0 = mu0;
  cfg.rho = rho;
  cfg.max_iters = max_iters;
  return cfg;
}

std::string RunConfig::describe() const {
  return "lambda=" + fmt(lambda) + ";th=" + fmt(th) + ";tau=" + fmt(tau) + ";mu0=" + fmt(mu0) +
         ";rho=" + fmt(rho) + ";max_iters=" + std::to_string(max_iters) +
         ";method=" + std::string(to_string(method)) + ";seed=" + std::to_string(seed) +
         ";noise=" + describe_noise(noise);
}

std::map<std::string, RectifiedSet> rectify_dataset(const Dataset& dataset, const RunConfig& cfg) {
  std::vector<const CollectedSet*> sets;
  for (const auto& [id, set] : dataset.collected) sets.push_back(&set);
  std::vector<RectifiedSet> results(sets.size());
  const SolverConfig solver = cfg.solver();
  parallel_for(sets.size(), cfg.threads, [&](std::size_t i) {
    const RoadSegment& seg = dataset.segments.at(sets[i]->segment_id);
    results[i] = rectify(*sets[i], seg, cfg.method, cfg.th, solver);
  });
  std::map<std::string, RectifiedSet> out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    log(LogLevel::Debug, "rectified " + sets[i]->segment_id);
    out.emplace(sets[i]->segment_id, std::move(results[i]));
  }
  return out;
}

std::map<std::string, EvalReport> evaluate_by_class(
    const Dataset& dataset, const std::map<std::string, std::vector<GeoPoint>>& predictions,
    double tau) {
  std::map<std::string, std::vector<std::string>> ids;
  std::map<std::string, PointLists> pred;
  std::map<std::string, PointLists> truth;
  for (const auto& [id, set] : dataset.collected) {
    if (!set.ground_truth) continue;
    const auto it = predictions.find(id);
    if (it == predictions.end()) throw ShapeMismatch("no prediction for segment '" + id + "'");
    const RoadSegment& seg = dataset.segments.at(id);
    const LocalFrame frame = segment_frame(seg);
    auto p = frame.to_local(it->second);
    auto t = frame.to_local(*set.ground_truth);
    for (const std::string& cls : {class_of(seg), std::string("all")}) {
      ids[cls].push_back(id);
      pred[cls].push_back(p);
      truth[cls].push_back(t);
    }
  }
  std::map<std::string, EvalReport> out;
  for (const std::string& cls : kSegmentClasses) {
    out[cls] = evaluate(ids[cls], pred[cls], truth[cls], tau);
  }
  return out;
}

namespace {

Dataset corpus_dataset(const std::vector<SyntheticSegment>& corpus) {
  Dataset ds;
  ds.metadata.source = "synthetic";
  for (const auto& item : corpus) {
    ds.segments[item.segment.id] = item.segment;
    ds.collected[item.segment.id] = item.collected;
  }
  return ds;
}

std::map<std::string, std::vector<GeoPoint>> prediction_points(
    const std::map<std::string, RectifiedSet>& rectified) {
  std::map<std::string, std::vector<GeoPoint>> out;
  for (const auto& [id, r] : rectified) out[id] = r.points;
  return out;
}

constexpr Method kAllMethods[] = {Method::Raa, Method::Ed, Method::Cd, Method::Ha, Method::Wd};

}  // namespace

BenchResult run_bench(const BenchOptions& options) {
  if (!(options.noise_bound >= 0.0) || !(options.noise_fraction >= 0.0) ||
      options.noise_fraction > 1.0) {
    throw InvalidArgument("noise bound must be non-negative and fraction within [0, 1]");
  }
  Rng master(options.run.seed);
  const std::uint64_t corpus_seed = master.next();
  SynthOptions synth;
  synth.noise = options.synth_noise;
  const auto corpus = synth_corpus(options.n_straight, options.n_curve, corpus_seed, synth);

  const Dataset clean = corpus_dataset(corpus);
  Dataset noisy = clean;
  for (auto& [id, set] : noisy.collected) {
    NoiseSpec spec{{RandomNoise{options.noise_bound, options.noise_fraction}}, master.next()};
    set.points = inject_noise(set.points, spec, segment_frame(noisy.segments.at(id)));
  }

  BenchResult result;
  std::map<std::pair<std::string, Method>, std::map<std::string, EvalReport>> reports;
  const auto score = [&](const Dataset& ds, RunConfig cfg) {
    log(LogLevel::Info, "bench: method " + std::string(to_string(cfg.method)) + " lambda " +
                            fmt(cfg.lambda));
    return evaluate_by_class(ds, prediction_points(rectify_dataset(ds, cfg)), cfg.tau);
  };

  for (const auto& [condition, ds] :
       {std::pair<std::string, const Dataset*>{"clean", &clean}, {"noisy", &noisy}}) {
    for (Method m : kAllMethods) {
      RunConfig cfg = options.run;
      cfg.method = m;
      const auto by_class = score(*ds, cfg);
      reports[{condition, m}] = by_class;
      for (const std::string& cls : kSegmentClasses) {
        const EvalReport& r = by_class.at(cls);
        result.rows.push_back({"comparison", condition, m, cls,
                               m == Method::Raa ? std::optional<double>(cfg.lambda) : std::nullopt,
                               r.acd, r.ar, r.n_segments});
      }
    }
  }
  for (double lambda : options.lambdas) {
    RunConfig cfg = options.run;
    cfg.method = Method::Raa;
    cfg.lambda = lambda;
    const auto by_class = score(clean, cfg);
    for (const std::string& cls : kSegmentClasses) {
      const EvalReport& r = by_class.at(cls);
      result.rows.push_back(
          {"lambda_sweep", "clean", Method::Raa, cls, lambda, r.acd, r.ar, r.n_segments});
    }
  }

  for (const std::string& metric : {std::string("acd"), std::string("ar")}) {
    for (const std::string& cls : kSegmentClasses) {
      for (Method m : kAllMethods) {
        const EvalReport& c = reports.at({"clean", m}).at(cls);
        const EvalReport& n = reports.at({"noisy", m}).at(cls);
        RobustnessRow row{metric, cls, m};
        if (metric == "acd") {
          row.clean = c.acd;
          row.noisy = n.acd;
          row.index = robustness_index(row.noisy, row.clean, Direction::LowerBetter);
        } else {
          row.clean = 100.0 * c.ar;
          row.noisy = 100.0 * n.ar;
          row.index = row.clean == 0.0
                          ? std::numeric_limits<double>::quiet_NaN()
                          : 100.0 * robustness_index(row.noisy, row.clean, Direction::HigherBetter);
        }
        result.robustness.push_back(row);
      }
    }
  }

  std::string lambdas;
  for (double l : options.lambdas) lambdas += (lambdas.empty() ? "" : " ") + fmt(l);
  const std::string config = options.run.describe() + ";straight=" +
                             std::to_string(options.n_straight) + ";curve=" +
                             std::to_string(options.n_curve) + ";synth_noise=" +
                             std::to_string(static_cast<int>(options.synth_noise)) +
                             ";noise_bound=" + fmt(options.noise_bound) +
                             ";noise_fraction=" + fmt(options.noise_fraction) + ";lambdas=" + lambdas;
  const std::string hash = fnv1a_hex(config);

  result.bench_csv = metadata_line(hash, options.run.seed, "ar_units=fraction");
  result.bench_csv += "section,condition,method,segment_class,lambda,acd,ar,n_segments\n";
  for (const BenchRow& r : result.rows) {
    result.bench_csv += r.section + "," + r.condition + "," + std::string(to_string(r.method)) +
                        "," + r.segment_class + "," + (r.lambda ? fmt(*r.lambda) : "") + "," +
                        fmt(r.acd) + "," + fmt(r.ar) + "," + std::to_string(r.n_segments) + "\n";
  }
  result.robustness_csv = metadata_line(hash, options.run.seed, "ar_units=percent");
  result.robustness_csv += "metric,segment_class,method,clean,noisy,index\n";
  for (const RobustnessRow& r : result.robustness) {
    result.robustness_csv += r.metric + "," + r.segment_class + "," +
                             std::string(to_string(r.method)) + "," + fmt(r.clean) + "," +
                             fmt(r.noisy) + "," + fmt(r.index) + "\n";
  }
  return result;
}

namespace {

struct Options {
  std::string segments;
  std::string collected;
  std::string truth;
  std::string pred;
  std::string out_dir = ".";
  std::string method = "raa";
  std::string noise_kind = "none";
  std::string synth_noise = "taxonomy";
  double noise_dx = 0.0;
  double noise_dy = 0.0;
  double noise_angle_deg = 0.0;
  double noise_bound = 20.0;
  double noise_fraction = 1.0;
  std::size_t n_straight = 40;
  std::size_t n_curve = 20;
  std::string segment_filter;
  RunConfig run;
};

Dataset load_inputs(const Options& o, bool need_collected) {
  if (o.segments.empty()) throw InvalidArgument("--segments is required");
  if (need_collected && o.collected.empty()) throw InvalidArgument("--collected is required");
  DatasetPaths paths{o.segments, o.collected, std::nullopt};
  if (!o.truth.empty()) paths.truth = o.truth;
  return load_dataset(paths);
}

Method method_of(const Options& o) {
  const auto m = parse_method(o.method);
  if (!m) throw InvalidArgument("unknown method '" + o.method + "'");
  return *m;
}

std::optional<NoiseSpec> noise_of(const Options& o) {
  const TranslationalNoise t{o.noise_dx, o.noise_dy};
  const RotationalNoise r{o.noise_angle_deg * std::numbers::pi / 180.0};
  const RandomNoise rn{o.noise_bound, o.noise_fraction};
  NoiseSpec spec;
  spec.seed = o.run.seed;
  if (o.noise_kind == "none") return std::nullopt;
  if (o.noise_kind == "translational") {
    spec.components = {t};
  } else if (o.noise_kind == "rotational") {
    spec.components = {r};
  } else if (o.noise_kind == "random") {
    spec.components = {rn};
  } else if (o.noise_kind == "mixed") {
    spec.components = {t, r, rn};
  } else {
    throw InvalidArgument("unknown noise kind '" + o.noise_kind + "'");
  }
  spec.validate();
  return spec;
}

SynthNoise synth_noise_of(const Options& o) {
  if (o.synth_noise == "none") return SynthNoise::None;
  if (o.synth_noise == "taxonomy") return SynthNoise::Taxonomy;
  if (o.synth_noise == "mixed") return SynthNoise::Mixed;
  throw InvalidArgument("unknown synthetic noise mode '" + o.synth_noise + "'");
}

DatasetPaths out_paths(const Options& o, bool with_truth) {
  const fs::path dir(o.out_dir);
  DatasetPaths p{dir / "segments.csv", dir / "collected.csv", std::nullopt};
  if (with_truth) p.truth = dir / "truth.csv";
  return p;
}

void cmd_sample(const Options& o) {
  if (o.segments.empty()) throw InvalidArgument("--segments is required");
  std::string body = "segment_id,candidate_index,arclength,lat,lon\n";
  const auto segments = load_segments(o.segments);
  for (const auto& [id, seg] : segments) {
    const CandidateSet c = sample_candidates(seg);
    const auto geo = c.frame.to_geo(c.points);
    for (std::size_t i = 0; i < c.size(); ++i) {
      body += id + "," + std::to_string(i) + "," + fmt(c.arclengths[i]) + "," + fmt(geo[i].lat) +
              "," + fmt(geo[i].lon) + "\n";
    }
  }
  write_file_atomic(fs::path(o.out_dir) / "candidates.csv",
                    metadata_line(fnv1a_hex("sample"), o.run.seed, "") + body);
}

void cmd_rectify(const Options& o) {
  const Dataset ds = load_inputs(o, true);
  RunConfig cfg = o.run;
  cfg.method = method_of(o);
  const auto rectified = rectify_dataset(ds, cfg);
  const std::string meta = metadata_line(cfg.hash(), cfg.seed, "method=" + o.method);
  std::string points = "segment_id,spot_index,lat,lon\n";
  std::string losses = "segment_id,method,window_start,loss,flagged_correct\n";
  for (const auto& [id, r] : rectified) {
    for (std::size_t j = 0; j < r.points.size(); ++j) {
      points += id + "," + std::to_string(j) + "," + fmt(r.points[j].lat) + "," +
                fmt(r.points[j].lon) + "\n";
    }
    losses += id + "," + std::string(to_string(r.method)) + "," +
              (r.window_start ? std::to_string(*r.window_start) : "") + "," + fmt(r.loss) + "," +
              (r.flagged_correct ? "1" : "0") + "\n";
  }
  write_file_atomic(fs::path(o.out_dir) / "rectified.csv", meta + points);
  write_file_atomic(fs::path(o.out_dir) / "losses.csv", meta + losses);
}

void cmd_evaluate(const Options& o) {
  if (o.truth.empty() || o.pred.empty()) throw InvalidArgument("--truth and --pred are required");
  if (o.segments.empty()) throw InvalidArgument("--segments is required");
  DatasetPaths paths{o.segments, o.truth, fs::path(o.truth)};
  const Dataset ds = load_dataset(paths);
  const auto reports = evaluate_by_class(ds, load_point_file(o.pred), o.run.tau);
  std::string body = "method,segment_class,acd,ar\n";
  for (const std::string& cls : kSegmentClasses) {
    const EvalReport& r = reports.at(cls);
    body += o.method + "," + cls + "," + fmt(r.acd) + "," + fmt(r.ar) + "\n";
  }
  write_file_atomic(fs::path(o.out_dir) / "eval.csv",
                    metadata_line(o.run.hash(), o.run.seed, "ar_units=fraction") + body);
}

void cmd_noise(const Options& o) {
  Dataset ds = load_inputs(o, true);
  const auto spec = noise_of(o);
  if (!spec) throw InvalidArgument("--noise-kind is required");
  Rng master(o.run.seed);
  for (auto& [id, set] : ds.collected) {
    NoiseSpec s = *spec;
    s.seed = master.next();
    set.points = inject_noise(set.points, s, segment_frame(ds.segments.at(id)));
  }
  save_dataset(ds, out_paths(o, !o.truth.empty()));
}

void cmd_synth(const Options& o) {
  SynthOptions synth;
  synth.noise = synth_noise_of(o);
  Rng master(o.run.seed);
  const auto corpus = synth_corpus(o.n_straight, o.n_curve, master.next(), synth);
  save_dataset(corpus_dataset(corpus), out_paths(o, true));
}

void cmd_bench(const Options& o) {
  BenchOptions b;
  b.run = o.run;
  b.n_straight = o.n_straight;
  b.n_curve = o.n_curve;
  b.synth_noise = synth_noise_of(o);
  b.noise_bound = o.noise_bound;
  b.noise_fraction = o.noise_fraction;
  const BenchResult r = run_bench(b);
  write_file_atomic(fs::path(o.out_dir) / "bench.csv", r.bench_csv);
  write_file_atomic(fs::path(o.out_dir) / "robustness.csv", r.robustness_csv);
}

struct Layer {
  std::string name;
  std::string style;
  std::vector<LocalPoint> points;
};

void cmd_plot(const Options& o) {
  const Dataset ds = load_inputs(o, true);
  RunConfig cfg = o.run;
  cfg.method = method_of(o);
  const auto rectified = rectify_dataset(ds, cfg);
  const std::string meta = metadata_line(cfg.hash(), cfg.seed, "units=meters_local_frame");

  std::vector<std::pair<fs::path, std::string>> files;
  for (const auto& [id, set] : ds.collected) {
    if (!o.segment_filter.empty() && id != o.segment_filter) continue;
    const RoadSegment& seg = ds.segments.at(id);
    const CandidateSet cands = sample_candidates(seg);
    std::vector<Layer> layers = {
        {"candidate", "fill=\"#9e9e9e\"", cands.points},
        {"collected", "fill=\"#d32f2f\"", cands.frame.to_local(set.points)},
        {"rectified", "fill=\"#1565c0\"", cands.frame.to_local(rectified.at(id).points)},
    };
    if (set.ground_truth) {
      layers.push_back({"truth", "fill=\"none\" stroke=\"#2e7d32\" stroke-width=\"0.3\"",
                        cands.frame.to_local(*set.ground_truth)});
    }

    double lo_x = INFINITY, lo_y = INFINITY, hi_x = -INFINITY, hi_y = -INFINITY;
    std::string csv = meta + "layer,index,x,y\n";
    std::string marks;
    for (const Layer& layer : layers) {
      marks += "  <g id=\"" + layer.name + "\" " + layer.style + ">\n";
      for (std::size_t i = 0; i < layer.points.size(); ++i) {
        const LocalPoint& p = layer.points[i];
        lo_x = std::min(lo_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_x = std::max(hi_x, p.x);
        hi_y = std::max(hi_y, p.y);
        csv += layer.name + "," + std::to_string(i) + "," + fmt(p.x) + "," + fmt(p.y) + "\n";
        marks += "    <circle cx=\"" + fmt(p.x) + "\" cy=\"" + fmt(p.y) + "\" r=\"0.8\"/>\n";
      }
      marks += "  </g>\n";
    }
    const double pad = 5.0;
    const std::string view = fmt(lo_x - pad) + " " + fmt(-hi_y - pad) + " " +
                             fmt(hi_x - lo_x + 2 * pad) + " " + fmt(hi_y - lo_y + 2 * pad);
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + view +
                      "\" width=\"800\" height=\"800\">\n";
    svg += "<!-- segment " + id + "; coordinates in meters, y axis flipped by the group "
           "transform -->\n";
    svg += "<g transform=\"scale(1,-1)\">\n" + marks + "</g>\n</svg>\n";
    files.emplace_back(fs::path(o.out_dir) / "plots" / (id + ".svg"), std::move(svg));
    files.emplace_back(fs::path(o.out_dir) / "plots" / (id + ".csv"), std::move(csv));
  }
  if (!o.segment_filter.empty() && files.empty()) {
    throw InvalidArgument("no collected points for segment '" + o.segment_filter + "'");
  }
  for (const auto& [path, text] : files) write_file_atomic(path, text);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Rectify and align collected parking-spot GPS points to road candidates"};
  app.require_subcommand(1);
  Options o;
  o.run.threads = std::max(1u, std::thread::hardware_concurrency());

  const auto add_dataset = [&](CLI::App* sub) {
    sub->add_option("--segments", o.segments, "Road segment CSV");
    sub->add_option("--collected", o.collected, "Collected points CSV");
    sub->add_option("--truth", o.truth, "Ground-truth points CSV");
  };
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out-dir", o.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--seed", o.run.seed, "Random seed")->capture_default_str();
    sub->add_option("--threads", o.run.threads, "Worker threads")->check(CLI::PositiveNumber);
  };
  const auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--method", o.method, "raa, ed, cd, ha or wd")->capture_default_str();
    sub->add_option("--lambda", o.run.lambda, "Rank term weight")->capture_default_str();
    sub->add_option("--th", o.run.th, "Already-correct threshold in meters")
        ->capture_default_str();
    sub->add_option("--tau", o.run.tau, "Recall tolerance in meters")->capture_default_str();
    sub->add_option("--mu0", o.run.mu0, "Initial penalty")->capture_default_str();
    sub->add_option("--rho", o.run.rho, "Penalty growth factor")->capture_default_str();
    sub->add_option("--max-iters", o.run.max_iters, "Iteration cap")->capture_default_str();
  };
  const auto add_noise = [&](CLI::App* sub) {
    sub->add_option("--noise-kind", o.noise_kind,
                    "none, translational, rotational, random or mixed")
        ->capture_default_str();
    sub->add_option("--noise-dx", o.noise_dx, "Translation east in meters");
    sub->add_option("--noise-dy", o.noise_dy, "Translation north in meters");
    sub->add_option("--noise-angle", o.noise_angle_deg, "Rotation in degrees");
    sub->add_option("--noise-bound", o.noise_bound, "Random displacement bound in meters")
        ->capture_default_str();
    sub->add_option("--noise-fraction", o.noise_fraction, "Share of points displaced")
        ->capture_default_str();
  };
  const auto add_synth = [&](CLI::App* sub) {
    sub->add_option("--straight", o.n_straight, "Straight segments")->capture_default_str();
    sub->add_option("--curve", o.n_curve, "Curved segments")->capture_default_str();
    sub->add_option("--synth-noise", o.synth_noise, "none, taxonomy or mixed")
        ->capture_default_str();
  };

  CLI::App* sample = app.add_subcommand("sample", "Write candidates.csv for every segment");
  add_dataset(sample);
  add_common(sample);
  CLI::App* rect = app.add_subcommand("rectify", "Write rectified.csv and losses.csv");
  add_dataset(rect);
  add_common(rect);
  add_solver(rect);
  CLI::App* eval = app.add_subcommand("evaluate", "Write eval.csv for a prediction file");
  add_dataset(eval);
  add_common(eval);
  eval->add_option("--pred", o.pred, "Predicted points CSV (collected schema)");
  eval->add_option("--method", o.method, "Method label for the report")->capture_default_str();
  eval->add_option("--tau", o.run.tau, "Recall tolerance in meters")->capture_default_str();
  CLI::App* noise = app.add_subcommand("noise", "Write a corrupted copy of a dataset");
  add_dataset(noise);
  add_common(noise);
  add_noise(noise);
  CLI::App* synth = app.add_subcommand("synth", "Write a synthetic dataset");
  add_common(synth);
  add_synth(synth);
  CLI::App* bench = app.add_subcommand("bench", "Write bench.csv and robustness.csv");
  add_common(bench);
  add_solver(bench);
  add_synth(bench);
  bench->add_option("--noise-bound", o.noise_bound, "Random displacement bound in meters")
      ->capture_default_str();
  bench->add_option("--noise-fraction", o.noise_fraction, "Share of points displaced")
      ->capture_default_str();
  CLI::App* plot = app.add_subcommand("plot", "Write per-segment SVG and CSV scatter plots");
  add_dataset(plot);
  add_common(plot);
  add_solver(plot);
  plot->add_option("--segment", o.segment_filter, "Only this segment id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    o.run.noise = noise_of(o);
    if (*sample) cmd_sample(o);
    if (*rect) cmd_rectify(o);
    if (*eval) cmd_evaluate(o);
    if (*noise) cmd_noise(o);
    if (*synth) cmd_synth(o);
    if (*bench) cmd_bench(o);
    if (*plot) cmd_plot(o);
  } catch (const std::exception& e) {
    std::cerr << "raa: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace raa
