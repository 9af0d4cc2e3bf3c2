#include "oir/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "oir/acceptance.hpp"
#include "oir/engine.hpp"
#include "oir/registry.hpp"

namespace oir {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

std::string fmt(const std::optional<double>& x) { return x ? fmt(*x) : std::string(); }

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    cur.erase(0, cur.find_first_not_of(" \t"));
    cur.erase(cur.find_last_not_of(" \t") + 1);
    if (!cur.empty()) parts.push_back(cur);
  }
  return parts;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  std::uint64_t v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw UsageError("invalid " + what + ": '" + s + "'");
  return v;
}

/// "1,2,5" or ranges "1-20".
std::vector<std::uint64_t> parse_seeds(const std::string& s) {
  std::vector<std::uint64_t> seeds;
  for (const auto& part : split(s)) {
    const auto dash = part.find('-');
    if (dash == std::string::npos) {
      seeds.push_back(parse_u64(part, "seed"));
      continue;
    }
    const auto lo = parse_u64(part.substr(0, dash), "seed");
    const auto hi = parse_u64(part.substr(dash + 1), "seed");
    if (hi < lo) throw UsageError("empty seed range '" + part + "'");
    for (auto v = lo; v <= hi; ++v) seeds.push_back(v);
  }
  if (seeds.empty()) throw UsageError("seed list is empty");
  return seeds;
}

/// "64,128,256" or doubling ranges "64..4096".
std::vector<std::size_t> parse_grid(const std::string& s) {
  std::vector<std::size_t> grid;
  for (const auto& part : split(s)) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      grid.push_back(parse_u64(part, "horizon"));
      continue;
    }
    const auto lo = parse_u64(part.substr(0, dots), "horizon");
    const auto hi = parse_u64(part.substr(dots + 2), "horizon");
    if (lo == 0 || hi < lo) throw UsageError("invalid horizon range '" + part + "'");
    for (auto v = lo; v <= hi; v *= 2) grid.push_back(v);
  }
  if (grid.empty()) throw UsageError("horizon grid is empty");
  if (std::find(grid.begin(), grid.end(), 0) != grid.end()) throw UsageError("horizons must be positive");
  if (!std::is_sorted(grid.begin(), grid.end())) throw UsageError("horizon grid must be ascending");
  return grid;
}

struct ComponentFlags {
  std::optional<std::size_t> k;
  std::optional<double> eta, lambda, value, sigma;
  std::optional<std::size_t> segments;
  std::string omega, labels, order, init = "diagonal";

  void add_to(CLI::App* app) {
    app->add_option("--k", k, "Covering-net grid size K");
    app->add_option("--eta", eta, "Learning rate");
    app->add_option("--lambda", lambda, "FTRL regularisation weight");
    app->add_option("--value", value, "Prediction of the constant learner");
    app->add_option("--init", init, "Initial function for ogd/ftrl")
        ->check(CLI::IsMember({"diagonal", "zero", "half"}));
    app->add_option("--sigma", sigma, "Noise level of noisy-iso");
    app->add_option("--segments", segments, "Segment count of lb-segments");
    app->add_option("--omega", omega, "Segment bits of lb-segments, e.g. 0110");
    app->add_option("--labels", labels, "Comma-separated labels for the fixed adversary");
    app->add_option("--order", order, "Reveal order override")
        ->check(CLI::IsMember({"isotonic", "antitonic", "random"}));
  }

  ComponentOptions options() const {
    ComponentOptions o;
    o.grid_size = k;
    o.eta = eta;
    o.lambda = lambda;
    o.value = value;
    o.init = init;
    o.sigma = sigma;
    o.segments = segments;
    if (!omega.empty()) {
      std::vector<bool> bits;
      for (char c : omega) {
        if (c != '0' && c != '1') throw UsageError("--omega must be a string of 0 and 1");
        bits.push_back(c == '1');
      }
      o.omega = bits;
    }
    if (!labels.empty()) {
      std::vector<double> ys;
      for (const auto& p : split(labels)) {
        try {
          std::size_t used = 0;
          ys.push_back(std::stod(p, &used));
          if (used != p.size()) throw std::invalid_argument(p);
        } catch (const std::exception&) {
          throw UsageError("invalid label '" + p + "'");
        }
      }
      o.labels = ys;
    }
    if (!order.empty()) o.order = order;
    return o;
  }

  Json echo() const {
    Json j = Json::object();
    if (k) j["k"] = *k;
    if (eta) j["eta"] = *eta;
    if (lambda) j["lambda"] = *lambda;
    if (value) j["value"] = *value;
    j["init"] = init;
    if (sigma) j["sigma"] = *sigma;
    if (segments) j["segments"] = *segments;
    if (!omega.empty()) j["omega"] = omega;
    if (!labels.empty()) j["labels"] = labels;
    if (!order.empty()) j["order"] = order;
    return j;
  }
};

std::optional<std::filesystem::path> default_output_dir() {
  const char* dir = std::getenv("OIR_OUTPUT_DIR");
  if (dir && *dir) return std::filesystem::path(dir);
  return std::nullopt;
}

/// Writes `text` to `path`; false with a message on `err` if that fails.
bool write_file(const std::filesystem::path& path, const std::string& text, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  if (f) f << text;
  if (!f) {
    err << "error: cannot write output file " << path.string() << "\n";
    return false;
  }
  return true;
}

LossKind resolve_loss(const std::string& flag, const std::string& learner) {
  return flag.empty() ? default_loss(learner) : parse_loss_kind(flag);
}

std::string csv_provenance(const Json& config, const std::string& seeds) {
  std::string s;
  s += "# oir " + std::string(kVersion) + "\n";
  s += "# config: " + config.dump() + "\n";
  s += "# master_seed: " + seeds + "\n";
  return s;
}

std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
  std::string s;
  for (auto v : seeds) s += (s.empty() ? "" : ",") + std::to_string(v);
  return s;
}

// ---------------------------------------------------------------------------

struct RunArgs {
  std::string learner, adversary, loss, seeds = "1", format = "csv", output;
  std::optional<std::uint64_t> seed;
  std::size_t horizon = 0;
  bool assert_bounds = false;
  ComponentFlags comp;
};

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  const std::vector<std::uint64_t> seeds = a.seed ? std::vector<std::uint64_t>{*a.seed} : parse_seeds(a.seeds);
  const LossKind kind = resolve_loss(a.loss, a.learner);
  const ComponentOptions copts = a.comp.options();

  Json config;
  config["command"] = "run";
  config["learner"] = a.learner;
  config["adversary"] = a.adversary;
  config["t"] = a.horizon;
  config["loss"] = std::string(to_string(kind));
  config["seeds"] = seeds;
  config["params"] = a.comp.echo();
  config["assert_bounds"] = a.assert_bounds;

  std::vector<GameResult> results;
  bool violated = false;
  for (auto seed : seeds) {
    auto learner = make_learner(a.learner, a.horizon, kind, copts);
    auto adversary = make_adversary(a.adversary, a.horizon, seed, copts);
    results.push_back(run_game(*learner, *adversary, kind));
    violated = violated || !results.back().bound_satisfied;
  }

  std::string text;
  if (a.format == "csv") {
    text = csv_provenance(config, join_seeds(seeds));
    text += "record,seed,trial,index,prediction,label,loss,learner_loss,oracle_loss,regret,bound,bound_satisfied\n";
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      const GameResult& r = results[s];
      const std::string seed = std::to_string(seeds[s]);
      for (std::size_t t = 0; t < r.transcript.size(); ++t) {
        const Trial& tr = r.transcript[t];
        text += "trial," + seed + "," + std::to_string(t + 1) + "," + std::to_string(tr.index + 1) + "," +
                fmt(tr.prediction) + "," + fmt(tr.label) + "," + fmt(tr.loss) + ",,,,,\n";
      }
      text += "summary," + seed + ",,,,,," + fmt(r.learner_loss) + "," + fmt(r.oracle_loss) + "," +
              fmt(r.regret) + "," + fmt(r.bound) + "," + (r.bound_satisfied ? "true" : "false") + "\n";
    }
  } else {
    Json doc;
    doc["version"] = kVersion;
    doc["config"] = config;
    doc["master_seed"] = seeds.front();
    Json runs = Json::array();
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      const GameResult& r = results[s];
      Json rows = Json::array();
      for (std::size_t t = 0; t < r.transcript.size(); ++t) {
        const Trial& tr = r.transcript[t];
        rows.push_back(Json{{"trial", t + 1},
                            {"index", tr.index + 1},
                            {"prediction", tr.prediction},
                            {"label", tr.label},
                            {"loss", tr.loss}});
      }
      Json summary{{"learner_loss", r.learner_loss},
                   {"oracle_loss", r.oracle_loss},
                   {"regret", r.regret},
                   {"bound", r.bound ? Json(*r.bound) : Json(nullptr)},
                   {"bound_satisfied", r.bound_satisfied}};
      runs.push_back(Json{{"seed", seeds[s]}, {"transcript", rows}, {"summary", summary}});
    }
    doc["runs"] = runs;
    text = doc.dump(2) + "\n";
  }

  std::optional<std::filesystem::path> path;
  if (!a.output.empty()) {
    path = a.output;
  } else if (auto dir = default_output_dir()) {
    path = *dir / ("run-" + a.learner + "-" + a.adversary + "-T" + std::to_string(a.horizon) + "." + a.format);
  }
  if (path) {
    if (!write_file(*path, text, err)) return 1;
  } else {
    out << text;
  }
  if (a.assert_bounds && violated) {
    err << "bound violated\n";
    return 2;
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string learners, adversaries, grid, loss, seeds = "1", format = "json", output;
  unsigned threads = 0;
  bool assert_bounds = false;
  ComponentFlags comp;
};

Json fit_json(const SlopeFit& f) {
  return Json{{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual}, {"points", f.points}};
}

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const std::vector<std::uint64_t> seeds = parse_seeds(a.seeds);
  const std::vector<std::size_t> grid = parse_grid(a.grid);
  const std::vector<std::string> lnames = split(a.learners);
  const std::vector<std::string> anames = split(a.adversaries);
  if (lnames.empty() || anames.empty()) throw UsageError("need at least one learner and one adversary");
  for (const auto& n : lnames)
    if (!is_learner_name(n)) throw UsageError("unknown learner '" + n + "'");
  for (const auto& n : anames)
    if (!is_adversary_name(n)) throw UsageError("unknown adversary '" + n + "'");
  const LossKind kind = resolve_loss(a.loss, lnames.front());
  const ComponentOptions copts = a.comp.options();

  SweepConfig cfg;
  for (const auto& n : lnames) {
    // Fails early on a learner/loss mismatch.
    make_learner(n, grid.front(), kind, copts);
    cfg.learners.push_back({n, [=](std::size_t t, std::uint64_t) { return make_learner(n, t, kind, copts); }});
  }
  for (const auto& n : anames) {
    cfg.adversaries.push_back(
        {n, [=](std::size_t t, std::uint64_t seed) { return make_adversary(n, t, seed, copts); }});
  }
  cfg.horizons = grid;
  cfg.seeds = seeds;
  cfg.kind = kind;
  cfg.threads = a.threads;
  const SweepReport report = regret_curve(cfg);

  Json config;
  config["command"] = "sweep";
  config["learners"] = lnames;
  config["adversaries"] = anames;
  config["t_grid"] = grid;
  config["loss"] = std::string(to_string(kind));
  config["seeds"] = seeds;
  config["params"] = a.comp.echo();
  config["assert_bounds"] = a.assert_bounds;

  Json doc;
  doc["version"] = kVersion;
  doc["config"] = config;
  doc["master_seed"] = seeds.front();
  Json cells = Json::array();
  for (const SweepCell& c : report.cells) {
    cells.push_back(Json{{"t", c.horizon},
                         {"learner", c.learner},
                         {"adversary", c.adversary},
                         {"seed", c.seed},
                         {"learner_loss", c.learner_loss},
                         {"oracle_loss", c.oracle_loss},
                         {"regret", c.regret},
                         {"bound", c.bound ? Json(*c.bound) : Json(nullptr)},
                         {"bound_satisfied", c.bound_satisfied}});
  }
  doc["cells"] = cells;
  Json fits = Json::array();
  for (const ExponentFit& f : report.fits) {
    fits.push_back(Json{{"learner", f.learner},
                        {"adversary", f.adversary},
                        {"t", f.horizons},
                        {"max_regret", f.max_regret},
                        {"mean_regret", f.mean_regret},
                        {"exponent", fit_json(f.max_fit)},
                        {"exponent_mean", fit_json(f.mean_fit)}});
  }
  doc["exponent_fits"] = fits;
  doc["violations"] = report.violations;
  const std::string json_text = doc.dump(2) + "\n";

  std::string csv = csv_provenance(config, join_seeds(seeds));
  csv += "t,learner,adversary,seed,regret,bound\n";
  for (const SweepCell& c : report.cells) {
    csv += std::to_string(c.horizon) + "," + c.learner + "," + c.adversary + "," + std::to_string(c.seed) +
           "," + fmt(c.regret) + "," + fmt(c.bound) + "\n";
  }

  std::optional<std::filesystem::path> prefix;
  if (!a.output.empty()) {
    prefix = a.output;
  } else if (auto dir = default_output_dir()) {
    prefix = *dir / "sweep";
  }
  if (prefix) {
    if (!write_file(prefix->string() + ".json", json_text, err)) return 1;
    if (!write_file(prefix->string() + ".csv", csv, err)) return 1;
  } else {
    out << (a.format == "csv" ? csv : json_text);
  }
  if (a.assert_bounds && report.violations > 0) {
    err << report.violations << " bound violations\n";
    return 2;
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string only, fault;
  unsigned threads = 0;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  AcceptanceOptions opts;
  opts.only = split(a.only);
  opts.threads = a.threads;
  if (!a.fault.empty()) {
    if (a.fault != "beta") throw UsageError("unknown fault '" + a.fault + "'");
    opts.inject_beta_fault = true;
  }
  const auto results = run_acceptance(opts);
  if (results.empty()) throw UsageError("--only matched no checks");
  std::size_t failed = 0;
  for (const auto& r : results) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
    out << (r.passed ? "PASS " : "FAIL ") << r.id << (r.id.size() < 2 ? "  " : " ") << r.title << " ["
        << r.group << "] (" << secs << " s): " << r.detail << "\n";
    if (!r.passed) ++failed;
  }
  out << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed ? 2 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Online isotonic regression: learners, adversaries and regret measurement", "oir"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "TOML/INI file with option defaults (flags win)");
  app.require_subcommand(1);

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Play games and write transcripts");
  run_cmd->add_option("--learner", run.learner, "Learner name")->required()->check(CLI::IsMember(learner_names()));
  run_cmd->add_option("--adversary", run.adversary, "Adversary name")
      ->required()
      ->check(CLI::IsMember(adversary_names()));
  run_cmd->add_option("--t", run.horizon, "Horizon T")->required()->check(CLI::PositiveNumber);
  run_cmd->add_option("--loss", run.loss, "squared | entropic | absolute (default: the learner's)")
      ->check(CLI::IsMember({"squared", "entropic", "absolute"}));
  auto* seed_opt = run_cmd->add_option("--seed", run.seed, "Master seed");
  run_cmd->add_option("--seeds", run.seeds, "Seed list, e.g. 1,2,5-9")->excludes(seed_opt);
  run_cmd->add_option("--format", run.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  run_cmd->add_option("--output", run.output, "Output file (default: $OIR_OUTPUT_DIR or stdout)");
  run_cmd->add_flag("--assert-bounds", run.assert_bounds, "Exit 2 if a regret bound is violated");
  run.comp.add_to(run_cmd);

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Regret curves over a grid of horizons");
  sweep_cmd->add_option("--learners", sweep.learners, "Comma-separated learner names")->required();
  sweep_cmd->add_option("--adversaries", sweep.adversaries, "Comma-separated adversary names")->required();
  sweep_cmd->add_option("--t-grid", sweep.grid, "Horizons, e.g. 64,128 or 64..4096 (doubling)")->required();
  sweep_cmd->add_option("--loss", sweep.loss, "squared | entropic | absolute")
      ->check(CLI::IsMember({"squared", "entropic", "absolute"}));
  sweep_cmd->add_option("--seeds", sweep.seeds, "Seed list, e.g. 1-20");
  sweep_cmd->add_option("--format", sweep.format, "json | csv (stdout only)")->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--output", sweep.output, "Output prefix; writes PREFIX.json and PREFIX.csv");
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (0: all cores)");
  sweep_cmd->add_flag("--assert-bounds", sweep.assert_bounds, "Exit 2 on any bound violation");
  sweep.comp.add_to(sweep_cmd);

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the built-in acceptance checks");
  verify_cmd->add_option("--only", verify.only, "Comma-separated check ids, names or groups");
  verify_cmd->add_option("--threads", verify.threads, "Worker threads (0: all cores)");
  verify_cmd->add_option("--inject-fault", verify.fault)->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep, out, err);
    if (verify_cmd->parsed()) return cmd_verify(verify, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace oir
