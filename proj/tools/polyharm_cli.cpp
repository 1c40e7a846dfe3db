// polyharm command-line interface: JSON reports for critical-angle scans,
// the instability suite, ellipsoid windows/polynomials, warped-domain
// rigidity checks, Sobolev membership and the closed-form angle pattern.
//
// Exit codes: 0 success, 2 usage error, 3 domain/precondition error,
// 4 accuracy failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "polyharm/report.hpp"

namespace {

using polyharm::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitAccuracy = 4;

struct CommonFlags {
  std::string out_path;
  std::string csv_path;
  std::string config_path;
  double tol = 1e-8;
  int grid = 512;
  double quad_abs = 1e-12;
  double quad_rel = 1e-10;
};

// Flat key=value presets; command-line flags override file entries.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::map<std::string, std::string> kv;
  std::ifstream in(path);
  if (!in) throw polyharm::domain_error("config file not found: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

void apply_config(CommonFlags& flags, const CLI::App& app) {
  if (flags.config_path.empty()) return;
  const auto kv = read_config(flags.config_path);
  auto set_if_unset = [&](const char* flag, const char* key, auto& value) {
    const auto it = kv.find(key);
    if (it == kv.end()) return;
    const CLI::Option* opt = app.get_option_no_throw(flag);
    if (opt != nullptr && opt->count() > 0) return;  // flag wins
    std::istringstream(it->second) >> value;
  };
  set_if_unset("--tol", "tol", flags.tol);
  set_if_unset("--grid", "grid", flags.grid);
  set_if_unset("--quad-abs", "quad_abs", flags.quad_abs);
  set_if_unset("--quad-rel", "quad_rel", flags.quad_rel);
}

polyharm::ScanOptions scan_options(const CommonFlags& flags) {
  polyharm::ScanOptions opts;
  opts.grid = flags.grid;
  opts.residual_tol = flags.tol;
  opts.quad.abs_tol = flags.quad_abs;
  opts.quad.rel_tol = flags.quad_rel;
  return opts;
}

ordered_json tolerance_block(const CommonFlags& flags) {
  return ordered_json{{"residual_tol", flags.tol},
                      {"grid", flags.grid},
                      {"quad_abs_tol", flags.quad_abs},
                      {"quad_rel_tol", flags.quad_rel},
                      {"root_xtol", 1e-12},
                      {"match_tol", 1e-9}};
}

void emit(const polyharm::RunReport& report, const CommonFlags& flags) {
  const std::string text = report.to_json().dump(2);
  if (flags.out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(flags.out_path);
    if (!out) throw polyharm::domain_error("cannot open output file: " + flags.out_path);
    out << text << "\n";
  }
}

void emit_critical_csv(const std::vector<polyharm::DimensionEntry>& entries, int r,
                       polyharm::Variant variant, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw polyharm::domain_error("cannot open CSV file: " + path);
  out << "r,variant,n,sobolev_ok,a,cos_2a,closed_form_deviation\n";
  for (const auto& entry : entries) {
    if (entry.roots.empty()) {
      out << r << "," << to_string(variant) << "," << entry.n << ","
          << (entry.sobolev_ok ? 1 : 0) << ",,,\n";
      continue;
    }
    for (const auto& rec : entry.roots) {
      out << r << "," << to_string(variant) << "," << entry.n << ","
          << (entry.sobolev_ok ? 1 : 0) << "," << std::setprecision(17) << rec.a << ","
          << rec.cos_2a << ",";
      if (rec.closed_form) out << rec.closed_form->deviation;
      out << "\n";
    }
  }
}

int run(int argc, char** argv) {
  CLI::App app{"r-energy criticality, stability and rigidity reports"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  CommonFlags flags;
  app.add_option("--out", flags.out_path, "write the JSON report to a file");
  app.add_option("--config", flags.config_path, "flat key=value preset file");

  // --- critical ---
  auto* critical = app.add_subcommand("critical", "scan constant-profile critical angles");
  int cr_r = 3;
  std::string cr_variant = "std";
  int cr_nmin = 7, cr_nmax = 7;
  critical->add_option("--r", cr_r, "functional order r >= 2")->required();
  critical->add_option("--variant", cr_variant, "std | es")
      ->check(CLI::IsMember({"std", "es"}));
  critical->add_option("--n-min", cr_nmin, "lowest dimension")->required();
  critical->add_option("--n-max", cr_nmax, "highest dimension")->required();
  critical->add_option("--tol", flags.tol, "first-variation residual gate");
  critical->add_option("--grid", flags.grid, "angle grid size");
  critical->add_option("--quad-abs", flags.quad_abs, "quadrature absolute tolerance");
  critical->add_option("--quad-rel", flags.quad_rel, "quadrature relative tolerance");
  critical->add_option("--csv", flags.csv_path, "also write a flat CSV projection");

  // --- stability ---
  auto* stability = app.add_subcommand("stability", "second-variation instability records");
  std::string st_case = "all";
  int st_r = 0, st_n = 0;
  double st_a = 0.0;
  std::string st_bump, st_variant = "std";
  stability->add_option("--case", st_case,
                        "all | r3-n7 | r4-n9-std | r4-n9-es | r5-n11-std | r5-n11-es");
  stability->add_option("--r", st_r, "generic case: order");
  stability->add_option("--n", st_n, "generic case: dimension");
  stability->add_option("--a", st_a, "generic case: angle in (0, pi/2)");
  stability->add_option("--bump", st_bump, "generic case: bump, e.g. (1-rho)^3");
  stability->add_option("--variant", st_variant, "std | es")
      ->check(CLI::IsMember({"std", "es"}));
  stability->add_option("--quad-abs", flags.quad_abs, "quadrature absolute tolerance");
  stability->add_option("--quad-rel", flags.quad_rel, "quadrature relative tolerance");

  // --- ellipsoid ---
  auto* ellipsoid = app.add_subcommand("ellipsoid", "ellipsoid-target windows and angles");
  int el_order = 2, el_n = 5;
  double el_b = 1.0;
  bool el_window = false;
  ellipsoid->add_option("--order", el_order, "2 (biharmonic) or 3 (triharmonic)")->required();
  ellipsoid->add_option("--n", el_n, "dimension")->required();
  ellipsoid->add_option("--b", el_b, "semi-axis b > 0")->required();
  ellipsoid->add_flag("--window", el_window, "report the existence window only");

  // --- warped ---
  auto* warped = app.add_subcommand("warped", "warped-domain rigidity checks");
  int wa_order = 2, wa_n = 5;
  bool wa_ode = false, wa_series = false;
  long long wa_max_j = 1000;
  warped->add_option("--order", wa_order, "2 (biharmonic) or 3 (triharmonic)")->required();
  warped->add_option("--n", wa_n, "dimension")->required();
  warped->add_flag("--ode", wa_ode, "shoot the order-2 rigidity ODE (n = 5 or 6)");
  warped->add_flag("--series", wa_series, "exact induction-cubic check");
  warped->add_option("--max", wa_max_j, "largest j for --series");

  // --- sobolev ---
  auto* sobolev = app.add_subcommand("sobolev", "Sobolev membership of the constant family");
  int so_r = 2, so_n = 5;
  sobolev->add_option("--r", so_r, "functional order")->required();
  sobolev->add_option("--n", so_n, "dimension")->required();

  // --- conjecture ---
  auto* conjecture = app.add_subcommand("conjecture", "closed-form angle pattern at n = 2r+1");
  int cj_r = 2;
  conjecture->add_option("--r", cj_r, "functional order")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  apply_config(flags, app);
  polyharm::RunReport report;
  const auto started = std::chrono::steady_clock::now();

  if (critical->parsed()) {
    const auto variant =
        cr_variant == "es" ? polyharm::Variant::eells_sampson : polyharm::Variant::standard;
    const auto entries =
        polyharm::dimension_scan(cr_r, variant, cr_nmin, cr_nmax, scan_options(flags));
    report.command = "critical";
    report.parameters = ordered_json{{"r", cr_r},
                                     {"variant", cr_variant},
                                     {"n_min", cr_nmin},
                                     {"n_max", cr_nmax}};
    report.tolerances = tolerance_block(flags);
    for (const auto& entry : entries) report.records.push_back(to_json(entry));
    if (!flags.csv_path.empty()) emit_critical_csv(entries, cr_r, variant, flags.csv_path);
  } else if (stability->parsed()) {
    report.command = "stability";
    report.tolerances = tolerance_block(flags);
    polyharm::QuadOptions qopt;
    qopt.abs_tol = flags.quad_abs;
    qopt.rel_tol = flags.quad_rel;
    const bool generic = st_r != 0 || st_n != 0 || !st_bump.empty();
    if (generic) {
      if (st_r == 0 || st_n == 0 || st_bump.empty() || st_a == 0.0)
        throw polyharm::domain_error("generic stability case needs --r, --n, --a and --bump");
      const auto variant =
          st_variant == "es" ? polyharm::Variant::eells_sampson : polyharm::Variant::standard;
      polyharm::PaperStabilityCase c{"generic", st_r, variant, st_n, st_a,
                                     polyharm::Bump::parse(st_bump), std::nullopt, ""};
      const double calibration = polyharm::stability_calibration(qopt);
      report.parameters = ordered_json{{"r", st_r}, {"n", st_n}, {"a", st_a},
                                       {"bump", st_bump}, {"variant", st_variant}};
      report.records.push_back(to_json(polyharm::make_stability_record(c, calibration, qopt)));
    } else {
      report.parameters = ordered_json{{"case", st_case}};
      const double calibration = polyharm::stability_calibration(qopt);
      bool matched = false;
      for (const auto& c : polyharm::paper_stability_cases()) {
        if (st_case != "all" && c.name != st_case) continue;
        matched = true;
        report.records.push_back(to_json(polyharm::make_stability_record(c, calibration, qopt)));
      }
      if (!matched) throw polyharm::domain_error("unknown stability case: " + st_case);
    }
  } else if (ellipsoid->parsed()) {
    report.command = "ellipsoid";
    report.parameters = ordered_json{{"order", el_order}, {"n", el_n}, {"b", el_b}};
    report.tolerances = tolerance_block(flags);
    const auto window = el_order == 2 ? polyharm::biharmonic_window(el_n, el_b)
                                      : polyharm::triharmonic_window(el_n, el_b);
    report.records.push_back(to_json(window));
    if (!el_window) {
      const auto poly = el_order == 2 ? polyharm::biharmonic_polynomial(el_n, el_b)
                                      : polyharm::triharmonic_polynomial(el_n, el_b);
      report.records.push_back(to_json(poly));
      if (el_order == 2 && window.inside) {
        ordered_json closed{{"kind", "closed_form_angle"},
                            {"a", polyharm::closed_form_angle(el_n, el_b)},
                            {"theorem", "Rem-Thm1.6"}};
        report.records.push_back(closed);
      }
    }
  } else if (warped->parsed()) {
    report.command = "warped";
    report.parameters = ordered_json{{"order", wa_order}, {"n", wa_n}};
    report.tolerances = tolerance_block(flags);
    const auto angle = polyharm::pole_angle(wa_order, wa_n);
    ordered_json pole{{"kind", "pole_angle"}, {"order", wa_order}, {"n", wa_n},
                      {"theorem", wa_order == 2 ? "Thm7.1" : "Thm7.2"}};
    if (angle) pole["a"] = *angle;
    else pole["a"] = nullptr;
    report.records.push_back(pole);
    if (wa_ode) {
      if (wa_order != 2) throw polyharm::domain_error("--ode applies to order 2");
      report.records.push_back(to_json(polyharm::shoot_ode(wa_n)));
    }
    if (wa_series) {
      if (wa_order != 3) throw polyharm::domain_error("--series applies to order 3");
      report.parameters["max_j"] = wa_max_j;
      report.records.push_back(to_json(polyharm::series_induction_check(wa_max_j)));
      ordered_json samples = ordered_json::array();
      for (long long j = 1; j <= std::min<long long>(wa_max_j, 10); ++j)
        samples.push_back(to_json(polyharm::series_induction_q(j)));
      report.records.push_back(ordered_json{{"kind", "q_samples"}, {"values", samples}});
    }
  } else if (sobolev->parsed()) {
    report.command = "sobolev";
    report.parameters = ordered_json{{"r", so_r}, {"n", so_n}};
    report.records.push_back(to_json(polyharm::sobolev_check(so_r, so_n)));
  } else if (conjecture->parsed()) {
    report.command = "conjecture";
    report.parameters = ordered_json{{"r", cj_r}};
    report.records.push_back(to_json(polyharm::conjecture_angle(cj_r)));
  }

  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
          .count();
  emit(report, flags);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const polyharm::accuracy_error& e) {
    std::cerr << "accuracy error: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return kExitAccuracy;
  } catch (const polyharm::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}
