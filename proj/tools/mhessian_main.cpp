// Command-line front end: evaluates Hessian densities and energies of the
// catalog functions on the unit ball and runs the verification suites,
// emitting a JSON report (optionally a CSV projection of sweep rows).

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "mhess/report.hpp"

using namespace mhess;

namespace {

void add_param_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--n", cfg.P.n, "complex dimension n >= 2");
  cmd->add_option("--m", cfg.P.m, "Hessian order m in [1, n]");
  cmd->add_option("--l", cfg.P.l, "lower Poincare index");
  cmd->add_option("--k", cfg.P.k, "upper Poincare index");
  cmd->add_option("--p", cfg.P.p, "energy weight exponent p >= 0");
  cmd->add_option("--seed", cfg.seed, "RNG seed (reports are deterministic given it)");
  cmd->add_option("--out", cfg.output_path, "write the JSON report here (default: stdout)");
  cmd->add_option("--csv", cfg.csv_path, "also write sweep rows as CSV");
}

void add_fn_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--fn", cfg.fn,
                  "catalog member: quadratic_exhaustion, fundamental_solution, ex1_family, "
                  "ex2_family, ex3_family, smooth_radial_polynomial, pluriharmonic_probe, "
                  "anisotropic_quadratic");
  cmd->add_option("--j", cfg.fam.j, "family index j");
  cmd->add_option("--alpha", cfg.fam.alpha, "ex1 scaling exponent alpha");
  cmd->add_option("--beta", cfg.fam.beta, "ex1 truncation exponent beta");
  cmd->add_option("--eps", cfg.fam.eps, "smoothing width of the max");
  cmd->add_option("--coeffs", cfg.coeffs, "coefficients for polynomial/quadratic members")
      ->delimiter(',');
}

int emit(const ReportDocument& doc) {
  std::string json = dump_json17(document_json(doc));
  std::string out_path = doc.config.output_path;
  if (!out_path.empty()) {
    if (const char* dir = std::getenv("MHESSIAN_OUT_DIR");
        dir != nullptr && out_path.find('/') == std::string::npos)
      out_path = std::string(dir) + "/" + out_path;
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "cannot write " << out_path << "\n";
      return 1;
    }
    f << json;
  } else {
    std::cout << json;
  }
  if (!doc.config.csv_path.empty()) {
    std::ofstream f(doc.config.csv_path);
    if (!f) {
      std::cerr << "cannot write " << doc.config.csv_path << "\n";
      return 1;
    }
    f << document_csv(doc);
  }
  return doc.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"complex m-Hessian energies and inequality verification on the unit ball"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string chosen;

  auto make = [&](const std::string& name, const std::string& desc) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    add_param_flags(cmd, cfg);
    cmd->callback([&chosen, name]() {
      if (chosen.empty()) chosen = name;
    });
    return cmd;
  };

  CLI::App* hessian = make("hessian", "Hessian spectrum, sigmas, and H_m density at a point");
  add_fn_flags(hessian, cfg);
  hessian->add_option("--point", cfg.point, "2n reals: re,im per coordinate")->delimiter(',');

  CLI::App* energy_cmd = make("energy", "(p,m)-energy of a catalog member");
  add_fn_flags(energy_cmd, cfg);

  CLI::App* lq = make("lqnorm", "L^q norm of a catalog member");
  add_fn_flags(lq, cfg);
  lq->add_option("--q", cfg.q, "Lebesgue exponent q > 0");

  CLI::App* verify = app.add_subcommand("verify", "inequality suites");
  verify->require_subcommand(1);
  auto vsub = [&](const std::string& name, const std::string& desc) {
    CLI::App* cmd = verify->add_subcommand(name, desc);
    add_param_flags(cmd, cfg);
    cmd->callback([&chosen, name]() { chosen = "verify-" + name; });
    return cmd;
  };
  CLI::App* vp = vsub("poincare", "energy-scale inequality with the optimal ball constant");
  add_fn_flags(vp, cfg);
  CLI::App* vs = vsub("sobolev", "L^q norm against the energy quasi-norm");
  add_fn_flags(vs, cfg);
  vs->add_option("--q", cfg.q, "Lebesgue exponent");
  vs->add_option("--family-size", cfg.family_size, "seeded family size");
  CLI::App* vh = vsub("hoelder", "mixed-energy bound on seeded radial tuples");
  vh->add_option("--tuples", cfg.tuples, "number of sampled tuples");
  CLI::App* vc = vsub("capacity", "sub-ball capacity and the volume-capacity ratio");
  vc->add_option("--r2", cfg.r2, "squared radius of the sub-ball");
  vc->add_option("--alpha-dk", cfg.alpha_dk, "volume-capacity exponent alpha");
  vc->add_option("--r2-ladder", cfg.r2_ladder, "squared radii for the ratio sweep")
      ->delimiter(',');
  CLI::App* vl = vsub("sublevel", "capacity of sublevel sets against the energy bound");
  add_fn_flags(vl, cfg);
  vl->add_option("--s-ladder", cfg.s_ladder, "levels s (default: geometric, 6 rungs)")
      ->delimiter(',');
  vsub("quasinorm", "homogeneity, modulus of concavity, chained inequality");

  CLI::App* examples = app.add_subcommand("examples", "truncation-family sweeps");
  examples->require_subcommand(1);
  for (const std::string name : {"ex1", "ex2", "ex3"}) {
    CLI::App* cmd = examples->add_subcommand(name, name + " family j-sweep");
    add_param_flags(cmd, cfg);
    add_fn_flags(cmd, cfg);
    cmd->add_option("--q", cfg.q, "Lebesgue exponent for the sweep norms");
    CLI::Option* js_opt =
        cmd->add_option("--js", cfg.js, "family indices to sweep")->delimiter(',');
    cmd->callback([&chosen, &cfg, cmd, js_opt, name]() {
      chosen = "examples-" + name;
      // --j without --js narrows the sweep to that single index
      if (cmd->count("--j") > 0 && js_opt->count() == 0) cfg.js = {cfg.fam.j};
    });
  }

  CLI::App* integ = make("integrability", "locate the L^q integrability flip by bisection");
  (void)integ;

  CLI::App* suite = make("suite", "run the full verification battery");
  suite->add_option("--mc-samples", cfg.mc_samples, "Monte Carlo sample count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  cfg.command = chosen;
  try {
    ReportDocument doc = run_command(cfg);
    if (cfg.command == "suite") {
      for (const auto& entry : doc.entries) {
        if (entry.value("kind", std::string()) != "criterion") continue;
        std::cerr << (entry["pass"].get<bool>() ? "PASS" : "FAIL") << "  criterion "
                  << entry["id"].get<int>() << ": " << entry["name"].get<std::string>()
                  << "\n";
      }
    }
    return emit(doc);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
