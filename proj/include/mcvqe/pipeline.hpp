// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file pipeline.hpp
 * @brief Run configuration and the end-to-end stages behind the command line.
 */

#pragma once

#include <mcvqe/ansatz.hpp>
#include <mcvqe/basis.hpp>
#include <mcvqe/exact.hpp>
#include <mcvqe/integrals.hpp>
#include <mcvqe/mitigation.hpp>
#include <mcvqe/resources.hpp>
#include <mcvqe/scf.hpp>
#include <mcvqe/vqe.hpp>

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcvqe {

/// Exit status 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exit status 3; `stage` names the failing step.
struct StageError : std::runtime_error {
  StageError(std::string stage_name, const std::string& what)
      : std::runtime_error(stage_name + ": " + what), stage(std::move(stage_name)) {}
  std::string stage;
};

struct RunConfig {
  std::string system = "hhq";  // hhq | psh | file:PATH | fcidump:PATH
  std::optional<double> bond_length;
  std::optional<std::array<double, 2>> proton_exponents;
  std::optional<double> proton_mass;
  double scf_tol = 1e-10;
  int scf_max_iter = 200;
  Mapping mapping = Mapping::jordan_wigner;
  std::string ansatz = "lucj";  // ucc:<labels> | lucj | adapt
  int lucj_layers = 1;
  bool diagonal_k = false;
  std::optional<Optimizer> optimizer;  // default: nelder_mead analytic, spsa with shots
  EvalMode mode = EvalMode::analytic;
  int max_evaluations = 200000;
  int restarts = 5;
  int shots = 4096;
  std::uint64_t seed = 7;
  NoiseSpec noise{};
  bool noisy = false;  // apply `noise` in shots mode
  std::vector<double> lambdas{1.0, 3.0, 5.0};
  FoldStyle fold_style = FoldStyle::full;
  int repeats = 10;
  double epsilon = 1e-3;
  double adapt_threshold = 1e-4;
  std::string pools = "t1e,t1p;t1p,t2ee;t1e,t2ee;t2ee,t2ep;t1e,t1p,t2ee,t2ep;t1e,t1p,t2ee,t2ep,t3eep;lucj";
  std::string out = ".";

  /// Applies one `key = value` setting; throws ConfigError and leaves the
  /// configuration unchanged on failure.
  void set(const std::string& key, const std::string& value);
  /// Canonical key/value listing of every field.
  [[nodiscard]] std::map<std::string, std::string> entries() const;
  /// kHeaderMarker, then "# key = value" lines for artifact headers.
  [[nodiscard]] std::string header() const;

 private:
  void assign(const std::string& key, const std::string& value);
};

/// First line of every artifact header.
inline constexpr std::string_view kHeaderMarker = "# mcvqe configuration";

/**
 * Parses `key = value` lines ('#' comments) into `cfg`. Text that starts with
 * kHeaderMarker is an artifact: its leading "# key = value" block is read as
 * settings and everything after the block is ignored.
 */
void apply_config_text(RunConfig& cfg, const std::string& text);

/// Mean-field and second-quantized problem for a configuration.
struct Problem {
  std::optional<SystemSpec> spec;  // absent for FCIDUMP input
  IntegralSet ao;
  NeoHfSolution hf;
  IntegralSet mo;  // active-space MO integrals
  ModeLayout layout;
  FermionOp fermion{0};
  PauliSum qubit{0};  // under cfg.mapping
  double e_hf = 0.0;
};

[[nodiscard]] Problem build_problem(const RunConfig& cfg);

struct AnsatzBuild {
  std::string name;
  Circuit circuit;
  PauliSum hamiltonian{0};  // matching qubit order
};

/// Parametric circuit for "ucc:<labels>" or "lucj" (adapt is run separately).
[[nodiscard]] AnsatzBuild build_ansatz(const Problem& p, const RunConfig& cfg,
                                       const std::string& spec);

struct RunSummary {
  double e_hf = 0.0;
  double e_fci = 0.0;
  double e_vqe = 0.0;
  std::string ansatz;
  VqeResult vqe;
  ResourceReport resources;
  std::optional<MitigatedRun> mitigated;
};

/// Full pipeline; writes artifacts into cfg.out and returns the summary.
[[nodiscard]] RunSummary cmd_run(const RunConfig& cfg);

struct Table1Row {
  std::string label;
  double energy = 0.0;
  std::optional<ResourceReport> resources;
  std::optional<double> reference_energy;
};

[[nodiscard]] std::vector<Table1Row> cmd_table1(const RunConfig& cfg);
[[nodiscard]] std::string table1_csv(const std::vector<Table1Row>& rows);

/// Published energies for the builtin systems, keyed by row label.
[[nodiscard]] std::optional<double> reference_energy(const std::string& system,
                                                     const std::string& label);

/// Writes `content` with the config header into cfg.out / name.
void write_artifact(const RunConfig& cfg, const std::string& name, const std::string& content);

}  // namespace mcvqe
