// qcorr command line: state inspection, evolution sweeps, window finding,
// figure-data reproduction and the cross-module validation suite.
//
// Exit codes: 0 success, 1 validation-suite failure, 2 invalid or
// unphysical parameters, 3 numerical (optimizer) failure.
#include <clocale>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcorr/sweeps.hpp"

using namespace qcorr;
using json = nlohmann::ordered_json;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

struct RunConfig {
  std::string command;
  std::string family;
  std::optional<double> gamma, c, s, theta;
  std::vector<double> phi;        // reproduce accepts a list
  std::vector<double> gamma_list; // reproduce only
  double j = 1.0;
  double b = 0.0;
  double j_scale = 1.0;  // config-file knob
  double t_max = kTwoPi;
  int samples = 400;
  std::string mode = "physical";
  double resolution = 1e-6;
  std::string out;
  std::string format = "csv";
  bool as_printed = false;
  std::string figure;
};

// ---------------------------------------------------------------- formatting

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string opt17(const std::optional<double>& v) {
  return v ? g17(*v) : std::string();
}

// ------------------------------------------------------------- config file

void apply_config_file(const std::string& path, const CLI::App& app,
                       RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ParamOutOfRange("cannot open config file " + path);
  json doc;
  in >> doc;

  const auto given = [&](const std::string& flag) {
    const CLI::Option* opt = app.get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };
  const auto load_d = [&](const char* key, const std::string& flag,
                          auto& target) {
    if (doc.contains(key) && !given(flag)) target = doc[key].get<double>();
  };

  if (doc.contains("family") && !given("--family"))
    cfg.family = doc["family"].get<std::string>();
  for (const auto& [key, flag, field] :
       {std::tuple<const char*, const char*, std::optional<double>*>{
            "gamma", "--gamma", &cfg.gamma},
        {"c", "--c", &cfg.c},
        {"s", "--s", &cfg.s},
        {"theta", "--theta", &cfg.theta}}) {
    if (doc.contains(key) && !given(flag)) *field = doc[key].get<double>();
  }
  if (doc.contains("phi") && !given("--phi")) {
    cfg.phi.clear();
    if (doc["phi"].is_array())
      for (const auto& v : doc["phi"]) cfg.phi.push_back(v.get<double>());
    else
      cfg.phi.push_back(doc["phi"].get<double>());
  }
  load_d("J", "--J", cfg.j);
  load_d("B", "--B", cfg.b);
  load_d("t_max", "--t-max", cfg.t_max);
  load_d("resolution", "--resolution", cfg.resolution);
  if (doc.contains("j_scale")) cfg.j_scale = doc["j_scale"].get<double>();
  if (doc.contains("samples") && !given("--samples"))
    cfg.samples = doc["samples"].get<int>();
  if (doc.contains("mode") && !given("--mode"))
    cfg.mode = doc["mode"].get<std::string>();
  if (doc.contains("out") && !given("--out"))
    cfg.out = doc["out"].get<std::string>();
  if (doc.contains("format") && !given("--format"))
    cfg.format = doc["format"].get<std::string>();
  if (doc.contains("as_printed") && !given("--as-printed"))
    cfg.as_printed = doc["as_printed"].get<bool>();
}

// --------------------------------------------------------------- plumbing

Family parse_family(const std::string& name) {
  if (name == "mems") return Family::MEMS;
  if (name == "werner") return Family::Werner;
  if (name == "rho-n") return Family::RhoN;
  if (name == "rho-m") return Family::RhoM;
  throw ParamOutOfRange("unknown family '" + name +
                        "' (expected mems|werner|rho-n|rho-m)");
}

EvolutionMode parse_mode(const std::string& mode) {
  if (mode == "physical") return EvolutionMode::Physical;
  if (mode == "paper") return EvolutionMode::PaperPrinted;
  throw ParamOutOfRange("unknown mode '" + mode +
                        "' (expected physical|paper)");
}

StateSpec state_spec_from(const RunConfig& cfg) {
  StateSpec spec;
  if (cfg.family.empty()) throw ParamOutOfRange("--family is required");
  spec.family = parse_family(cfg.family);
  spec.gamma = cfg.gamma;
  spec.c = cfg.c;
  spec.s = cfg.s;
  spec.theta = cfg.theta;
  if (!cfg.phi.empty()) {
    if (cfg.phi.size() > 1)
      throw ParamOutOfRange("this command takes a single --phi value");
    spec.phi = cfg.phi.front();
  }
  return spec;
}

HamiltonianSpec ham_from(const RunConfig& cfg) {
  return HamiltonianSpec{cfg.j, cfg.b, cfg.j_scale};
}

std::ostream& open_sink(const RunConfig& cfg, std::ofstream& file) {
  if (cfg.out.empty()) return std::cout;
  file.open(cfg.out, std::ios::binary);  // LF line endings on every platform
  if (!file) throw ParamOutOfRange("cannot open output file " + cfg.out);
  return file;
}

// ------------------------------------------------------------ CSV emission

const char* kCsvHeader =
    "family,gamma,c,s,phi,theta,J,B,t,concurrence,discord,linear_entropy,"
    "purity,horodecki_m,bell_violated,min_eig,physical";

void write_csv(std::ostream& os, const RunConfig& cfg, const StateSpec& spec,
               const std::vector<SweepRow>& rows, bool paper_mode) {
  os << kCsvHeader;
  if (paper_mode) os << ",paper_s_divergence";
  os << "\n";
  for (const SweepRow& row : rows) {
    os << family_name(spec.family) << ',' << opt17(spec.gamma) << ','
       << opt17(spec.c) << ',' << opt17(spec.s) << ',' << opt17(spec.phi)
       << ',' << opt17(spec.theta) << ',' << g17(cfg.j) << ',' << g17(cfg.b)
       << ',' << g17(row.t) << ',' << g17(row.report.concurrence) << ','
       << g17(row.report.discord) << ',' << g17(row.report.linear_entropy)
       << ',' << g17(row.report.purity) << ',' << g17(row.report.horodecki_m)
       << ',' << (row.report.bell_violated ? 1 : 0) << ','
       << g17(row.report.min_eigenvalue) << ',' << (row.physical ? 1 : 0);
    if (paper_mode) os << ',' << g17(row.paper_s_divergence.value_or(0.0));
    os << "\n";
  }
}

json rows_to_json(const RunConfig& cfg, const StateSpec& spec,
                  const std::vector<SweepRow>& rows, bool paper_mode) {
  json out = json::array();
  for (const SweepRow& row : rows) {
    json r;
    r["family"] = family_name(spec.family);
    if (spec.gamma) r["gamma"] = *spec.gamma;
    if (spec.c) r["c"] = *spec.c;
    if (spec.s) r["s"] = *spec.s;
    if (spec.phi) r["phi"] = *spec.phi;
    if (spec.theta) r["theta"] = *spec.theta;
    r["J"] = cfg.j;
    r["B"] = cfg.b;
    r["t"] = row.t;
    r["concurrence"] = row.report.concurrence;
    r["discord"] = row.report.discord;
    r["linear_entropy"] = row.report.linear_entropy;
    r["purity"] = row.report.purity;
    r["horodecki_m"] = row.report.horodecki_m;
    r["bell_violated"] = row.report.bell_violated;
    r["min_eig"] = row.report.min_eigenvalue;
    r["physical"] = row.physical;
    if (paper_mode) r["paper_s_divergence"] = *row.paper_s_divergence;
    out.push_back(std::move(r));
  }
  return out;
}

// -------------------------------------------------------------- commands

int cmd_info(const RunConfig& cfg) {
  const StateSpec spec = state_spec_from(cfg);
  const DensityMatrix rho = build_state(spec, cfg.as_printed);
  const CorrelationReport r = report(rho);
  const HermitianEigen eig = herm_eig(
      0.5 * (rho.matrix() + rho.matrix().adjoint()));

  std::cout << "state: " << family_name(spec.family);
  if (spec.gamma) std::cout << "  gamma=" << g6(*spec.gamma);
  if (spec.c) std::cout << "  c=" << g6(*spec.c);
  if (spec.s) std::cout << "  s=" << g6(*spec.s);
  if (spec.phi) std::cout << "  phi=" << g6(*spec.phi);
  if (spec.theta) std::cout << "  theta=" << g6(*spec.theta);
  std::cout << "\nphysical: " << (rho.physical() ? "yes" : "no") << "\n";
  std::cout << "eigenvalues:";
  for (int i = 0; i < 4; ++i) std::cout << ' ' << g6(eig.values(i));
  std::cout << "\nconcurrence:    " << g6(r.concurrence)
            << "\ndiscord:        " << g6(r.discord)
            << "\nlinear_entropy: " << g6(r.linear_entropy)
            << "\npurity:         " << g6(r.purity)
            << "\nhorodecki_m:    " << g6(r.horodecki_m)
            << "\nlambda:         " << g6(r.lambda)
            << "\nbell_violated:  " << (r.bell_violated ? "yes" : "no")
            << "\nmin_eigenvalue: " << g6(r.min_eigenvalue) << "\n";

  // admissibility of the (S_L, C) pair against the saturation bound
  if (r.concurrence > 0 && r.concurrence <= 1) {
    const double bound = s_max(r.concurrence);
    std::cout << "admissibility:  S_L=" << g6(r.linear_entropy)
              << (r.linear_entropy <= bound + 1e-12 ? " <= " : " > ")
              << "S_max(C)=" << g6(bound) << "\n";
  }
  return 0;
}

int cmd_evolve(const RunConfig& cfg) {
  const StateSpec spec = state_spec_from(cfg);
  SweepSpec sweep;
  sweep.state = spec;
  sweep.ham = ham_from(cfg);
  sweep.t_grid = uniform_grid(cfg.t_max, cfg.samples);
  sweep.mode = parse_mode(cfg.mode);

  const std::vector<SweepRow> rows = time_sweep(sweep);
  const bool paper_mode = sweep.mode == EvolutionMode::PaperPrinted;

  std::ofstream file;
  std::ostream& os = open_sink(cfg, file);
  if (cfg.format == "json") {
    os << rows_to_json(cfg, spec, rows, paper_mode).dump(2) << "\n";
  } else if (cfg.format == "csv") {
    write_csv(os, cfg, spec, rows, paper_mode);
  } else {
    throw ParamOutOfRange("unknown format '" + cfg.format + "'");
  }

  for (const SweepRow& row : rows)
    if (row.optimizer_failed) return 3;
  return 0;
}

int cmd_windows(const RunConfig& cfg) {
  if (cfg.family != "rho-m")
    throw ParamOutOfRange("windows requires --family rho-m");
  if (!cfg.c || !cfg.s) throw ParamOutOfRange("windows requires --c and --s");

  const auto to_json = [](const std::vector<Window>& windows) {
    json arr = json::array();
    for (const Window& w : windows) arr.push_back({w.lo, w.hi});
    return arr;
  };

  json doc;
  doc["c"] = *cfg.c;
  doc["s"] = *cfg.s;
  doc["physical"] = to_json(phi_window_physical(*cfg.c, *cfg.s,
                                                cfg.resolution));
  doc["violating"] = to_json(phi_window_violation(*cfg.c, *cfg.s,
                                                  cfg.resolution));
  doc["resolution"] = cfg.resolution;

  std::ofstream file;
  std::ostream& os = open_sink(cfg, file);
  os << doc.dump(2) << "\n";
  return 0;
}

int cmd_reproduce(const RunConfig& cfg) {
  struct FigureDef {
    const char* tag;
    double s;
    const char* series;
    std::vector<double> default_phi;
  };
  const FigureDef defs[] = {
      {"fig1", 0.125, "rho1m", {0.54657, 0.65605}},
      {"fig2", 0.5, "rho2m", {0.25, 1.45}},
      {"fig3", 0.7, "rho3m", {0.0, kTwoPi}},
  };
  const FigureDef* def = nullptr;
  for (const FigureDef& d : defs)
    if (cfg.figure == d.tag) def = &d;
  if (def == nullptr)
    throw ParamOutOfRange("unknown figure '" + cfg.figure +
                          "' (expected fig1|fig2|fig3)");

  const std::vector<double> gammas =
      cfg.gamma_list.empty() ? std::vector<double>{0.0, 0.4, 0.6}
                             : cfg.gamma_list;
  const std::vector<double> phis =
      cfg.phi.empty() ? def->default_phi : cfg.phi;

  const std::filesystem::path dir = cfg.out.empty() ? "." : cfg.out;
  std::filesystem::create_directories(dir);

  int exit_code = 0;
  const auto emit = [&](const StateSpec& spec, EvolutionMode mode,
                        const std::string& name) {
    SweepSpec sweep;
    sweep.state = spec;
    sweep.ham = ham_from(cfg);
    sweep.t_grid = uniform_grid(cfg.t_max, cfg.samples);
    sweep.mode = mode;
    sweep.tolerant = true;  // published phi endpoints sit on the PSD edge
    const std::vector<SweepRow> rows = time_sweep(sweep);
    for (const SweepRow& row : rows)
      if (row.optimizer_failed) exit_code = 3;

    const std::filesystem::path path = dir / (cfg.figure + "_" + name +
        (mode == EvolutionMode::Physical ? "_physical.csv" : "_paper.csv"));
    std::ofstream file(path, std::ios::binary);
    if (!file)
      throw ParamOutOfRange("cannot open output file " + path.string());
    write_csv(file, cfg, spec, rows, mode == EvolutionMode::PaperPrinted);
    std::cout << "wrote " << path.string() << "\n";
  };

  for (double g : gammas) {
    StateSpec spec;
    spec.family = Family::MEMS;
    spec.gamma = g;
    for (EvolutionMode mode :
         {EvolutionMode::Physical, EvolutionMode::PaperPrinted})
      emit(spec, mode, std::string("mems_gamma") + g6(g));
  }
  for (double phi : phis) {
    StateSpec spec;
    spec.family = Family::RhoM;
    spec.c = 0.5;
    spec.s = def->s;
    spec.phi = phi;
    spec.theta = 0.0;
    for (EvolutionMode mode :
         {EvolutionMode::Physical, EvolutionMode::PaperPrinted})
      emit(spec, mode, std::string(def->series) + "_phi" + g6(phi));
  }
  return exit_code;
}

// ------------------------------------------------------------- validation

int cmd_validate(const RunConfig& cfg) {
  int failures = 0;
  const auto check = [&](const std::string& name, bool ok,
                         const std::string& detail = {}) {
    std::cout << (ok ? "[pass] " : "[FAIL] ") << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
  };
  const bool printed = cfg.as_printed;

  {  // swap-conjugated branches land on the rho_n fragments
    const Mat4 u = swap_unitary();
    double worst = 0;
    for (double g : {0.2, 0.4, 0.6, 0.7, 0.8, 0.9}) {
      const Mat4 mems = mems_matrix(g, printed);
      worst = std::max(worst,
                       (u * mems * u.adjoint() - rho_n_matrix(g, 0.0)).norm());
    }
    check("unitary equivalence of the MEMS branches", worst < 1e-12,
          "worst Frobenius distance " + g6(worst));
  }
  {  // constructor validation across the parameter grids
    bool ok = true;
    std::string detail;
    for (double g : {0.0, 0.3, 0.65, 0.7, 1.0}) {
      try {
        validate_state(mems_matrix(g, printed));
        validate_state(werner_matrix(g));
      } catch (const Error& e) {
        ok = false;
        detail = e.what();
      }
    }
    check("family constructors validate", ok, detail);
  }
  {  // linear-entropy identity and saturation
    double worst = 0;
    for (double s : {0.125, 0.5, 0.7}) {
      const double phi = s < 0.2 ? 0.6 : 1.2;
      worst = std::max(worst, std::abs(linear_entropy_of(rho_m_matrix(
                                  0.5, s, phi, 0.0)) - s));
    }
    for (int k = 1; k < 20; ++k) {
      const double c = k / 20.0;
      worst = std::max(worst, std::abs(linear_entropy_of(rho_n_matrix(
                                  c, 0.0)) - s_max(c)));
    }
    check("linear-entropy identities", worst < 1e-12, "worst " + g6(worst));
  }
  {  // concurrence pinning
    double worst = 0;
    for (double c : {0.2, 0.5, 0.8})
      worst = std::max(worst,
                       std::abs(concurrence(make_rho_n(c, 0.7)) - c));
    worst = std::max(worst, std::abs(concurrence(make_rho_m(
                                0.5, 0.5, 1.2, 0.0)) - 0.5));
    for (double g : {0.2, 0.5, 0.9})
      worst = std::max(worst, std::abs(concurrence(make_werner(g)) -
                                       std::max(0.0, (3 * g - 1) / 2)));
    check("concurrence pinning", worst < 1e-10, "worst " + g6(worst));
  }
  {  // purity invariance and closed-form agreement
    double worst_p = 0, worst_cf = 0;
    StateSpec spec;
    spec.family = Family::RhoM;
    spec.c = 0.5;
    spec.s = 0.125;
    spec.phi = 0.6;
    spec.theta = 0.0;
    const DensityMatrix rho0 = build_state(spec);
    for (double t : {0.4, 1.3, 2.9}) {
      const HamiltonianSpec ham{1.0, 0.5, cfg.j_scale};
      const DensityMatrix ev = evolve(rho0, ham, t);
      worst_p = std::max(worst_p, std::abs(purity(ev.matrix()) -
                                           purity(rho0.matrix())));
      worst_cf = std::max(worst_cf,
                          (closed_form_evolve(spec, ham, t).matrix() -
                           ev.matrix()).cwiseAbs().maxCoeff());
    }
    check("purity invariance under evolve", worst_p < 1e-12,
          "worst " + g6(worst_p));
    check("closed form equals the propagator", worst_cf < 1e-12,
          "worst " + g6(worst_cf));
  }
  {  // field independence
    const DensityMatrix rho0 = make_mems(0.4);
    const CorrelationReport base = report(evolve(rho0, {1.0, 0.0}, 1.1));
    double worst = 0;
    for (double b : {0.5, 2.0}) {
      const CorrelationReport r = report(evolve(rho0, {1.0, b}, 1.1));
      worst = std::max({worst, std::abs(r.concurrence - base.concurrence),
                        std::abs(r.discord - base.discord),
                        std::abs(r.linear_entropy - base.linear_entropy)});
    }
    check("field independence of the measures", worst < 1e-9,
          "worst " + g6(worst));
  }
  {  // Bell criterion closed form
    double worst = 0;
    for (double phi : {0.6, 1.0, 1.4}) {
      const DensityMatrix rho = tolerant_state(rho_m_matrix(0.5, 0.5, phi, 0.0));
      worst = std::max(worst, std::abs(x_state_m(rho) - horodecki_m(rho)));
    }
    check("x_state_m equals horodecki_m", worst < 1e-12, "worst " + g6(worst));
  }
  {  // window endpoints against the analytic roots
    const std::vector<Window> w = phi_window_physical(0.5, 0.125, 1e-6);
    const double lo = std::asin((-16.0 * std::sqrt(43.0) +
                                 std::sqrt(256.0 * 43.0 + 4 * 172.0 * 101.0)) /
                                344.0);
    const double hi = std::asin(4.0 / std::sqrt(43.0));
    const bool ok = !w.empty() && std::abs(w[0].lo - lo) < 1e-5 &&
                    std::abs(w[0].hi - hi) < 1e-5;
    check("physical window endpoints", ok,
          !w.empty() ? "lo " + g6(w[0].lo) + ", hi " + g6(w[0].hi)
                     : "no window found");
  }

  std::cout << (failures == 0 ? "all properties hold\n"
                              : std::to_string(failures) +
                                    " property(ies) failed\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");

  CLI::App app{"two-qubit mixed-state correlation toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "mems|werner|rho-n|rho-m");
    sub->add_option("--gamma", cfg.gamma, "MEMS/Werner mixing parameter");
    sub->add_option("--c", cfg.c, "concurrence parameter");
    sub->add_option("--s", cfg.s, "target linear entropy (rho-m)");
    sub->add_option("--phi", cfg.phi, "rho-m angle (repeatable for reproduce)");
    sub->add_option("--theta", cfg.theta, "coherence phase");
    sub->add_option("--J", cfg.j, "XX coupling");
    sub->add_option("--B", cfg.b, "external field");
    sub->add_option("--t-max", cfg.t_max, "sweep end time");
    sub->add_option("--samples", cfg.samples, "sweep sample count");
    sub->add_option("--mode", cfg.mode, "physical|paper");
    sub->add_option("--resolution", cfg.resolution, "window bisection width");
    sub->add_option("--out", cfg.out, "output file (or directory)");
    sub->add_option("--format", cfg.format, "csv|json");
    sub->add_option("--config", config_path, "JSON config file (flat keys)");
    sub->add_flag("--as-printed", cfg.as_printed,
                  "use the printed (uncorrected) state variants");
    return sub;
  };

  CLI::App* info = add_common(app.add_subcommand(
      "info", "print the correlation report of one state"));
  CLI::App* evolve_cmd = add_common(app.add_subcommand(
      "evolve", "time sweep under the XX Hamiltonian (CSV/JSON)"));
  CLI::App* windows = add_common(app.add_subcommand(
      "windows", "physicality and Bell-violation phi windows (JSON)"));
  CLI::App* reproduce = add_common(app.add_subcommand(
      "reproduce", "emit the paired figure data series"));
  reproduce->add_option("figure", cfg.figure, "fig1|fig2|fig3")->required();
  reproduce->add_option("--gamma-list", cfg.gamma_list,
                        "MEMS gamma values for the figure series");
  CLI::App* validate = add_common(app.add_subcommand(
      "validate", "run the cross-module property suite"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (!config_path.empty()) apply_config_file(config_path, *active, cfg);

    if (active == info) return cmd_info(cfg);
    if (active == evolve_cmd) return cmd_evolve(cfg);
    if (active == windows) return cmd_windows(cfg);
    if (active == reproduce) return cmd_reproduce(cfg);
    if (active == validate) return cmd_validate(cfg);
  } catch (const OptimizerFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
