#include "mbw/commands.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <json.hpp>
#include <ostream>

#include "mbw/datasets.hpp"
#include "mbw/format.hpp"
#include "mbw/oracle_pde.hpp"
#include "mbw/suite.hpp"
#include "mbw/verify.hpp"

namespace mbw::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flags shared by several subcommands.
struct WellFlags {
  std::string family = "box";
  std::vector<std::string> states{"1"};
  std::vector<double> times{0.25, 0.5, 0.75, 1.0};
  double length = 1.0;
  int m = 2;
  double omega = 0.4;
  std::string out;
};

fs::path resolve_out(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return "mbwell_out";
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

StateSelector parse_selector(const std::string& text) {
  if (text == "eps") return StateSelector::missing_state();
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError("state selector must be an integer or 'eps': " + text);
  return StateSelector::level(n);
}

std::vector<StateSelector> parse_selectors(const std::vector<std::string>& texts) {
  std::vector<StateSelector> out;
  for (const auto& t : texts) out.push_back(parse_selector(t));
  return out;
}

FamilyId make_family(const WellFlags& f) {
  if (f.family == "box") return FamilyId::box();
  if (f.family == "pt") return FamilyId::poschl_teller();
  if (f.family == "confluent") return FamilyId::confluent_family(ConfluentConfig(f.m, f.omega));
  throw UsageError("unknown family: " + f.family);
}

json family_json(const FamilyId& family) {
  json j;
  j["family"] = family.name();
  if (family.confluent) {
    j["m"] = family.confluent->m();
    j["omega"] = family.confluent->omega();
  }
  return j;
}

// Records what is needed to rerun the command: argv without --out, plus the
// resolved output directory.
void write_manifest(const fs::path& dir, const std::string& command, const std::vector<std::string>& argv,
                    json parameters, const std::vector<std::string>& outputs) {
  json m;
  m["command"] = command;
  m["version"] = kVersion;
  m["timestamp"] = utc_timestamp();
  m["argv"] = argv;
  m["out_dir"] = fs::absolute(dir).string();
  m["parameters"] = std::move(parameters);
  m["outputs"] = outputs;
  io::write_text(dir / "manifest.json", m.dump(2) + "\n");
}

std::vector<std::string> strip_out(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out") {
      ++i;
      continue;
    }
    if (args[i].rfind("--out=", 0) == 0) continue;
    kept.push_back(args[i]);
  }
  return kept;
}

void add_well_flags(CLI::App* sub, WellFlags& f, bool with_states) {
  sub->add_option("--family", f.family, "box, pt or confluent")->check(CLI::IsMember({"box", "pt", "confluent"}));
  if (with_states) sub->add_option("--n", f.states, "comma-separated levels, or eps")->delimiter(',');
  sub->add_option("--L", f.length, "static box length")->check(CLI::PositiveNumber);
  sub->add_option("--m", f.m, "confluent seed level")->check(CLI::PositiveNumber);
  sub->add_option("--omega", f.omega, "confluent deformation parameter");
  sub->add_option("--out", f.out, std::string("output directory (default $") + kOutDirEnv + ")");
}

int cmd_sample(const WellFlags& f, int points, const std::vector<std::string>& argv, std::ostream& out) {
  const FamilyId family = make_family(f);
  io::SampleRequest req{family, parse_selectors(f.states), f.times, points, WellConfig::with_length(f.length)};
  const auto datasets = io::build_datasets(req);
  const fs::path dir = resolve_out(f.out);
  std::vector<std::string> files;
  for (const auto& ds : datasets) {
    const std::string name = ds.name + ".csv";
    io::write_text(dir / name, io::to_csv(ds.rows));
    files.push_back(name);
    out << (dir / name).string() << '\n';
  }
  json params = family_json(family);
  params["states"] = f.states;
  params["times"] = f.times;
  params["points"] = points;
  params["L"] = f.length;
  write_manifest(dir, "sample", argv, params, files);
  return kExitOk;
}

int cmd_verify(const WellFlags& f, bool all, bool family_given, bool omega_given, bool controls,
               const std::vector<std::string>& argv, std::ostream& out) {
  suite::SuiteOptions opt;
  opt.cfg = WellConfig::with_length(f.length);
  opt.times = f.times;
  opt.negative_controls = controls;
  if (!all) {
    opt.box = opt.poschl_teller = false;
    opt.confluent.clear();
    if (family_given) {
      if (f.family == "box") opt.box = true;
      if (f.family == "pt") opt.poschl_teller = true;
      if (f.family == "confluent") {
        if (omega_given) {
          opt.confluent.emplace_back(f.m, f.omega);
        } else {
          for (double w : {0.4, -1.0, 0.0}) opt.confluent.emplace_back(f.m, w);
        }
      }
    } else if (!controls) {
      throw UsageError("verify needs --all, --family or --negative-controls");
    }
  }
  const auto reports = suite::run(opt);
  const fs::path dir = resolve_out(f.out);
  io::write_text(dir / "report.txt", verify::reports_to_text(reports));
  io::write_text(dir / "report.json", verify::reports_to_json(reports) + "\n");

  int failed = 0, total = 0;
  for (const auto& r : reports) {
    for (const auto& c : r.checks()) {
      ++total;
      if (!c.passed) {
        ++failed;
        out << "FAIL " << r.subject() << " t=" << format_double(r.t()) << ' ' << c.name;
        if (!c.note.empty()) out << " # " << c.note;
        out << '\n';
      }
    }
  }
  out << "verify: " << reports.size() << " reports, " << total << " checks, " << failed << " failed\n";

  json params;
  params["all"] = all;
  params["family"] = family_given ? json(f.family) : json(nullptr);
  params["m"] = f.m;
  params["omega"] = omega_given ? json(f.omega) : json(nullptr);
  params["negative_controls"] = controls;
  params["times"] = f.times;
  params["L"] = f.length;
  write_manifest(dir, "verify", argv, params, {"report.txt", "report.json"});
  return failed == 0 ? kExitOk : kExitVerificationFailed;
}

struct PropagateFlags {
  double from = 0.25;
  double to = 1.0;
  int nx = 2000;
  double dt = 1e-4;
};

int cmd_propagate(const WellFlags& f, const PropagateFlags& p, const std::vector<std::string>& argv,
                  std::ostream& out) {
  const FamilyId family = make_family(f);
  const WellConfig cfg = WellConfig::with_length(f.length);
  const auto selectors = parse_selectors(f.states);
  for (const auto& s : selectors) validate_selector(family, s);
  pde::PropagationConfig pc{family, p.nx, p.dt, p.from, p.to};
  pc.validate(cfg);

  // Equal-weight superposition of the selected states, each unit-normalized at t_start.
  std::vector<double> weights;
  const double c = 1.0 / std::sqrt(static_cast<double>(selectors.size()));
  for (const auto& s : selectors) {
    const WaveFunction psi = [&, s](double x, double t) { return family_state(family, s, x, t, cfg); };
    const double n2 = family.kind == FamilyKind::MovingBox ? 1.0 : verify::norm(psi, p.from, cfg);
    weights.push_back(c / std::sqrt(n2));
  }
  const WaveFunction state = [&](double x, double t) {
    Complex sum{};
    for (std::size_t k = 0; k < selectors.size(); ++k) sum += weights[k] * family_state(family, selectors[k], x, t, cfg);
    return sum;
  };

  const SampledField initial = pde::sample(state, p.from, p.nx, cfg);
  const pde::Propagation run = pde::propagate(initial, pc, cfg);
  const SampledField exact = pde::sample(state, p.to, p.nx, cfg);
  const double error = pde::l2_distance(run.field, exact);

  std::vector<io::CsvRow> rows;
  for (std::size_t i = 0; i < run.field.n_points(); ++i) {
    const double x = (i + 1 == run.field.n_points()) ? run.field.x_max() : run.field.x_at(i);
    const Complex v = run.field[i];
    const ExtendedReal pot = family_potential(family, x, p.to, cfg);
    rows.push_back({p.to, x, v.real(), v.imag(), std::norm(v),
                    pot.is_finite() ? std::optional<double>(pot.value()) : std::nullopt});
  }
  const fs::path dir = resolve_out(f.out);
  io::write_text(dir / "final.csv", io::to_csv(rows));
  json metrics;
  metrics["l2_error"] = error;
  metrics["norm_start"] = run.norm_start;
  metrics["norm_end"] = run.norm_end;
  metrics["norm_drift"] = run.norm_drift();
  metrics["steps"] = run.steps;
  io::write_text(dir / "metrics.json", metrics.dump(2) + "\n");

  json params = family_json(family);
  params["states"] = f.states;
  params["from"] = p.from;
  params["to"] = p.to;
  params["nx"] = p.nx;
  params["dt"] = p.dt;
  params["L"] = f.length;
  write_manifest(dir, "propagate", argv, params, {"final.csv", "metrics.json"});
  out << "l2_error " << format_double(error) << '\n';
  out << "norm_drift " << format_double(run.norm_drift()) << '\n';
  out << "steps " << run.steps << '\n';
  return kExitOk;
}

int cmd_figures(const std::string& out_flag, const std::vector<std::string>& argv, std::ostream& out) {
  const fs::path dir = resolve_out(out_flag);
  std::vector<std::string> files;
  json summary = json::array();
  for (const auto& spec : io::figure_specs()) {
    json fj = family_json(spec.request.family);
    fj["name"] = spec.name;
    fj["L"] = spec.request.cfg.length();
    fj["times"] = spec.request.times;
    fj["points"] = spec.request.points;
    json states = json::array();
    for (const auto& ds : io::build_datasets(spec.request)) {
      const std::string name = spec.name + "/" + ds.name + ".csv";
      io::write_text(dir / name, io::to_csv(ds.rows));
      files.push_back(name);
      json sj;
      sj["state"] = ds.state.label();
      sj["file"] = name;
      json integrals = json::array();
      for (double t : spec.request.times) integrals.push_back(io::integrate_density(ds.rows, t));
      sj["density_integrals"] = integrals;
      states.push_back(sj);
    }
    fj["states"] = states;
    summary.push_back(fj);
    out << spec.name << ": " << states.size() << " datasets\n";
  }
  io::write_text(dir / "figures.json", summary.dump(2) + "\n");
  files.push_back("figures.json");
  write_manifest(dir, "figures", argv, json::object(), files);
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidConfig:
    case ErrorKind::SingularTime:
    case ErrorKind::InadmissibleTime:
    case ErrorKind::InvalidQuantumNumber:
    case ErrorKind::SeedCollision:
    case ErrorKind::NonNormalizable:
    case ErrorKind::RegularityViolation:
    case ErrorKind::OutsideWell:
      return kExitUsage;
    default:
      return kExitRuntime;
  }
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, int depth);

int cmd_replay(const std::string& manifest_path, const std::string& out_flag, std::ostream& out, std::ostream& err,
               int depth) {
  if (depth > 0) throw UsageError("a manifest cannot replay another replay");
  const json m = json::parse(io::read_text(manifest_path));
  std::vector<std::string> argv = m.at("argv").get<std::vector<std::string>>();
  argv.push_back("--out");
  argv.push_back(out_flag.empty() ? m.at("out_dir").get<std::string>() : out_flag);
  return dispatch(argv, out, err, depth + 1);
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, int depth) {
  CLI::App app{"Moving-barrier quantum wells: sample, verify, propagate", "mbwell"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  WellFlags f;
  int points = 1001;
  auto* sample = app.add_subcommand("sample", "write sampled states and potentials as CSV");
  add_well_flags(sample, f, true);
  sample->add_option("--times", f.times, "comma-separated times")->delimiter(',');
  sample->add_option("--points", points, "grid points per time, walls included")->check(CLI::Range(3, 10000000));

  bool all = false, controls = false;
  auto* verify_cmd = app.add_subcommand("verify", "run the verification suite");
  add_well_flags(verify_cmd, f, false);
  verify_cmd->add_flag("--all", all, "every family");
  verify_cmd->add_flag("--negative-controls", controls, "include checks that must detect broken inputs");
  verify_cmd->add_option("--times", f.times, "comma-separated times")->delimiter(',');

  PropagateFlags pf;
  auto* propagate = app.add_subcommand("propagate", "Crank-Nicolson run compared with the closed form");
  add_well_flags(propagate, f, true);
  propagate->add_option("--from", pf.from, "start time");
  propagate->add_option("--to", pf.to, "end time");
  propagate->add_option("--nx", pf.nx, "grid points including both walls");
  propagate->add_option("--dt", pf.dt, "time step");

  std::string figures_out;
  auto* figures = app.add_subcommand("figures", "write the five figure datasets");
  figures->add_option("--out", figures_out, std::string("output directory (default $") + kOutDirEnv + ")");

  std::string manifest, replay_out;
  auto* replay = app.add_subcommand("replay", "rerun the command recorded in a manifest");
  replay->add_option("manifest", manifest, "manifest.json path")->required();
  replay->add_option("--out", replay_out, "output directory (default: the recorded one)");

  std::vector<std::string> argv_store{"mbwell"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::vector<std::string> recorded = strip_out(args);
  if (sample->parsed()) return cmd_sample(f, points, recorded, out);
  if (verify_cmd->parsed()) {
    const bool family_given = verify_cmd->count("--family") > 0;
    const bool omega_given = verify_cmd->count("--omega") > 0;
    return cmd_verify(f, all || (!family_given && !controls), family_given, omega_given, controls, recorded, out);
  }
  if (propagate->parsed()) return cmd_propagate(f, pf, recorded, out);
  if (figures->parsed()) return cmd_figures(figures_out, recorded, out);
  return cmd_replay(manifest, replay_out, out, err, depth);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err, 0);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace mbw::cli
