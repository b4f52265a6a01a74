// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Precedence for settings: flags, then --config
// file, then MCVQE_OUT (output directory only), then built-in defaults.

#include <mcvqe/pipeline.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace mcvqe;

constexpr int kConfigExit = 2;
constexpr int kStageExit = 3;

struct Flags {
  std::string config_file;
  std::vector<std::pair<std::string, std::string>> pending;
  std::map<std::string, std::string> values;
};

// Registers `--key` as a string option recorded into flags.values.
void add_setting(CLI::App& app, Flags& flags, const std::string& key, const std::string& help) {
  app.add_option("--" + key, flags.values[key], help);
}

RunConfig resolve(const CLI::App& app, Flags& flags) {
  RunConfig cfg;
  if (const char* env = std::getenv("MCVQE_OUT"); env && *env) cfg.out = env;
  if (!flags.config_file.empty()) {
    std::ifstream in(flags.config_file);
    if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", flags.config_file));
    std::ostringstream ss;
    ss << in.rdbuf();
    apply_config_text(cfg, ss.str());
  }
  for (const auto& [key, value] : flags.values)
    if (app.count("--" + key) > 0) cfg.set(key, value);
  return cfg;
}

std::string energy_label(const std::string& ansatz) {
  if (ansatz == "lucj") return "E_LUCJ";
  if (ansatz == "adapt") return "E_ADAPT";
  return "E_UCC";
}

int do_run(const RunConfig& cfg) {
  const RunSummary s = cmd_run(cfg);
  fmt::print("{} = {:.10f}  E_HF = {:.10f}  E_FCI = {:.10f}  (ansatz {}, {} evaluations)\n",
             energy_label(cfg.ansatz), s.e_vqe, s.e_hf, s.e_fci, cfg.ansatz, s.vqe.evaluations);
  if (s.mitigated)
    fmt::print("E_raw = {:.10f}  E_PIE = {:.10f} +- {:.10f}\n", s.mitigated->raw.front().energy,
               s.mitigated->fit.energy, s.mitigated->fit.standard_error);
  fmt::print("artifacts written to {}\n", cfg.out);
  return 0;
}

int do_fci(const RunConfig& cfg) {
  const Problem p = build_problem(cfg);
  const FciResult fci = fci_ground_state(p.qubit, p.layout, reference_sector(p.layout), cfg.mapping);
  write_artifact(cfg, "fci.txt",
                 fmt::format("energy = {:.12f}\nE_HF = {:.12f}\nsector_dimension = {}\nresidual = {:.3e}\n",
                             fci.energy, p.e_hf, fci.dimension, fci.residual));
  fmt::print("E_FCI = {:.10f}  E_HF = {:.10f}  (sector dimension {})\n", fci.energy, p.e_hf,
             fci.dimension);
  return 0;
}

int do_mitigated(RunConfig cfg, bool noise_given) {
  if (!noise_given) cfg.noisy = true;  // the default noise model applies
  if (cfg.repeats < 1) throw ConfigError("repeats must be at least 1");
  const Problem p = build_problem(cfg);
  const AnsatzBuild b = build_ansatz(p, cfg, cfg.ansatz);
  VqeOptions vo;
  vo.optimizer_options.max_evaluations = cfg.max_evaluations;
  vo.restarts = cfg.restarts;
  const VqeResult opt = minimize(b.circuit, b.hamiltonian, vo);
  const Circuit bound = b.circuit.bind(opt.parameters);
  const double exact = circuit_energy(bound, b.hamiltonian, {});
  const FoldingSchedule sched{cfg.lambdas, cfg.fold_style};
  const std::optional<NoiseSpec> noise =
      cfg.noisy ? std::optional<NoiseSpec>(cfg.noise) : std::nullopt;

  std::string rows = "repeat,seed,raw_energy,raw_stderr,pie_energy,pie_stderr\n";
  double sum_raw = 0.0, sum_raw2 = 0.0, sum_pie = 0.0, sum_pie2 = 0.0;
  int wins = 0;
  for (int r = 0; r < cfg.repeats; ++r) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(r);
    const MitigatedRun run = run_mitigated(bound, b.hamiltonian, sched, cfg.shots, noise, seed);
    if (r == 0) write_artifact(cfg, "mitigation.csv", plot_csv(run));
    const double raw = run.raw.front().energy;
    const double pie = run.fit.energy;
    sum_raw += raw;
    sum_raw2 += raw * raw;
    sum_pie += pie;
    sum_pie2 += pie * pie;
    if (std::abs(pie - exact) < std::abs(raw - exact)) ++wins;
    rows += fmt::format("{},{},{:.12f},{:.12f},{:.12f},{:.12f}\n", r, seed, raw,
                        run.raw.front().standard_error, pie, run.fit.standard_error);
  }
  write_artifact(cfg, "mitigation_repeats.csv", rows);
  const double n = cfg.repeats;
  auto spread = [n](double s, double s2) {
    return n > 1 ? std::sqrt(std::max(0.0, (s2 - s * s / n) / (n - 1))) : 0.0;
  };
  fmt::print("E_noiseless = {:.10f}\n", exact);
  fmt::print("E_raw = {:.10f} +- {:.10f}  E_PIE = {:.10f} +- {:.10f}  (over {} repeats)\n",
             sum_raw / n, spread(sum_raw, sum_raw2), sum_pie / n, spread(sum_pie, sum_pie2),
             cfg.repeats);
  fmt::print("PIE closer than raw in {} of {} repeats\n", wins, cfg.repeats);
  return 0;
}

int do_resources(const RunConfig& cfg, bool all_pools) {
  const Problem p = build_problem(cfg);
  std::vector<std::pair<std::string, ResourceReport>> rows;
  std::vector<std::string> specs;
  if (all_pools) {
    std::istringstream in(cfg.pools);
    std::string tok;
    while (std::getline(in, tok, ';'))
      if (!tok.empty()) specs.push_back(tok == "lucj" ? tok : "ucc:" + tok);
  } else {
    specs.push_back(cfg.ansatz);
  }
  for (const auto& s : specs) {
    if (s == "adapt") throw ConfigError("resources needs a fixed ansatz (ucc:<labels> or lucj)");
    const AnsatzBuild b = build_ansatz(p, cfg, s);
    rows.emplace_back(s, report(transpile_basis(b.circuit), cfg.epsilon));
  }
  write_artifact(cfg, "resources.csv", report_csv(rows));
  fmt::print("{}", report_table(rows));
  return 0;
}

int do_table1(const RunConfig& cfg) {
  const std::string csv = table1_csv(cmd_table1(cfg));
  write_artifact(cfg, "table1.csv", csv);
  fmt::print("{}", csv);
  return 0;
}

int do_export(const RunConfig& cfg, const std::string& basis, const std::string& file) {
  const Problem p = build_problem(cfg);
  const IntegralSet* ints = nullptr;
  if (basis == "ao") ints = &p.ao;
  else if (basis == "mo") ints = &p.mo;
  else throw ConfigError(fmt::format("--basis must be ao or mo, got '{}'", basis));
  const std::string text = write_fcidump(*ints);
  if (file.empty()) {
    write_artifact(cfg, basis == "ao" ? "integrals.fcidump" : "integrals_mo.fcidump", text);
  } else {
    std::ofstream out(file);
    if (!out) throw StageError("output", fmt::format("cannot write '{}'", file));
    out << cfg.header() << text;
  }
  fmt::print("wrote {} integrals ({} species)\n", basis, ints->species.size());
  return 0;
}

int do_import(RunConfig cfg, const std::string& path) {
  cfg.system = "fcidump:" + path;
  const Problem p = build_problem(cfg);
  for (const auto& s : p.ao.species)
    fmt::print("species {}: {} basis functions, {} particles\n", to_string(s.species.kind), s.dim(),
               s.species.count);
  fmt::print("basis = {}\nE_NN = {:.12f}\n", p.ao.mo_basis ? "mo" : "ao", p.ao.e_nn);
  const FciResult fci = fci_ground_state(p.qubit, p.layout, reference_sector(p.layout), cfg.mapping);
  fmt::print("E_HF = {:.10f}  E_FCI = {:.10f}\n", p.e_hf, fci.energy);
  write_artifact(cfg, "integrals_mo.fcidump", write_fcidump(p.mo));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multicomponent (NEO) VQE toolkit"};
  app.require_subcommand(1);
  Flags flags;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config_file, "key = value configuration file");
    add_setting(*sub, flags, "system", "hhq | psh | file:PATH | fcidump:PATH");
    add_setting(*sub, flags, "bond-length", "HHq classical-to-protonic center distance (bohr)");
    add_setting(*sub, flags, "proton-exponents", "HHq protonic exponents a1,a2");
    add_setting(*sub, flags, "proton-mass", "quantum proton mass (m_e)");
    add_setting(*sub, flags, "scf-tol", "SCF density convergence threshold");
    add_setting(*sub, flags, "scf-max-iter", "SCF iteration limit");
    add_setting(*sub, flags, "mapping", "jw | bk");
    add_setting(*sub, flags, "ansatz", "ucc:<labels> | lucj | adapt");
    add_setting(*sub, flags, "lucj-layers", "number of LUCJ layers");
    add_setting(*sub, flags, "diagonal-k", "restrict LUCJ orbital rotations to phases");
    add_setting(*sub, flags, "optimizer", "nelder_mead | spsa");
    add_setting(*sub, flags, "mode", "analytic | shots");
    add_setting(*sub, flags, "max-evals", "objective evaluation budget per start");
    add_setting(*sub, flags, "restarts", "random restarts after the zero start");
    add_setting(*sub, flags, "shots", "shots per measurement group");
    add_setting(*sub, flags, "seed", "random seed");
    add_setting(*sub, flags, "noise", "p1,p2,pro or none");
    add_setting(*sub, flags, "lambdas", "noise factors, e.g. 1,3,5");
    add_setting(*sub, flags, "fold", "full | partial");
    add_setting(*sub, flags, "repeats", "repeated mitigated runs");
    add_setting(*sub, flags, "epsilon", "target accuracy for the d*w heuristic");
    add_setting(*sub, flags, "adapt-threshold", "ADAPT gradient threshold");
    add_setting(*sub, flags, "pools", "semicolon-separated pools for table1");
    add_setting(*sub, flags, "out", "output directory (default $MCVQE_OUT or .)");
  };

  auto* run = app.add_subcommand("run", "full pipeline: SCF, Hamiltonian, VQE, FCI, resources");
  auto* fci = app.add_subcommand("fci", "exact ground state in the reference sector");
  auto* mit = app.add_subcommand("mitigated", "noisy runs with folding and PIE extrapolation");
  auto* res = app.add_subcommand("resources", "transpiled gate counts and depth");
  auto* tab = app.add_subcommand("table1", "energies and resources for every pool");
  auto* exp = app.add_subcommand("export-fcidump", "write integrals in extended FCIDUMP form");
  auto* imp = app.add_subcommand("import-fcidump", "read extended FCIDUMP integrals and solve");
  for (auto* s : {run, fci, mit, res, tab, exp, imp}) common(s);

  bool all_pools = false;
  res->add_flag("--all", all_pools, "report every pool in --pools");
  std::string basis = "mo";
  std::string export_file;
  exp->add_option("--basis", basis, "ao | mo");
  exp->add_option("--file", export_file, "destination (default: output directory)");
  std::string import_path;
  imp->add_option("path", import_path, "FCIDUMP file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigExit;
  }

  try {
    const CLI::App* active = app.get_subcommands().front();
    const RunConfig cfg = resolve(*active, flags);
    if (active == run) return do_run(cfg);
    if (active == fci) return do_fci(cfg);
    if (active == mit) return do_mitigated(cfg, active->count("--noise") > 0);
    if (active == res) return do_resources(cfg, all_pools);
    if (active == tab) return do_table1(cfg);
    if (active == exp) return do_export(cfg, basis, export_file);
    if (active == imp) return do_import(cfg, import_path);
  } catch (const ConfigError& e) {
    fmt::print(stderr, "configuration error: {}\n", e.what());
    return kConfigExit;
  } catch (const StageError& e) {
    fmt::print(stderr, "stage '{}' failed: {}\n", e.stage, e.what());
    return kStageExit;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kStageExit;
  }
  return kStageExit;
}
