// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <mcvqe/pipeline.hpp>

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace mcvqe {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("{}: '{}' is not a number", key, v));
  }
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long d = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("{}: '{}' is not an integer", key, v));
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(fmt::format("{}: '{}' is not a boolean", key, v));
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt::format("{}", v[i]);
  return s;
}

template <class F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const StageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(fmt::format("{}: {}", name, e.what()));
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

// Malformed user input is a configuration problem, not a numerical one.
template <class F>
auto input(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(fmt::format("{}: {}", name, e.what()));
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  const RunConfig before = *this;
  try {
    assign(key, value);
  } catch (...) {
    *this = before;
    throw;
  }
}

void RunConfig::assign(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  // "default" clears the optional fields, so artifact headers parse back
  if (v == "default") {
    if (key == "bond-length") bond_length.reset();
    else if (key == "proton-exponents") proton_exponents.reset();
    else if (key == "proton-mass") proton_mass.reset();
    else if (key == "optimizer") optimizer.reset();
    else throw ConfigError(fmt::format("{}: 'default' is not a value", key));
    return;
  }
  if (key == "system") system = v;
  else if (key == "bond-length") bond_length = to_double(key, v);
  else if (key == "proton-exponents") {
    const auto parts = split(v, ',');
    if (parts.size() != 2) throw ConfigError("proton-exponents: expected two comma-separated values");
    proton_exponents = std::array<double, 2>{to_double(key, parts[0]), to_double(key, parts[1])};
  } else if (key == "proton-mass") proton_mass = to_double(key, v);
  else if (key == "scf-tol") scf_tol = to_double(key, v);
  else if (key == "scf-max-iter") scf_max_iter = static_cast<int>(to_int(key, v));
  else if (key == "mapping") {
    try {
      mapping = mapping_from_string(v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else if (key == "ansatz") ansatz = v;
  else if (key == "lucj-layers") lucj_layers = static_cast<int>(to_int(key, v));
  else if (key == "diagonal-k") diagonal_k = to_bool(key, v);
  else if (key == "optimizer") {
    try {
      optimizer = optimizer_from_string(v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else if (key == "mode") {
    if (v == "analytic") mode = EvalMode::analytic;
    else if (v == "shots") mode = EvalMode::shots;
    else throw ConfigError(fmt::format("mode: unknown value '{}'", v));
  } else if (key == "max-evals") max_evaluations = static_cast<int>(to_int(key, v));
  else if (key == "restarts") restarts = static_cast<int>(to_int(key, v));
  else if (key == "shots") shots = static_cast<int>(to_int(key, v));
  else if (key == "seed") seed = static_cast<std::uint64_t>(to_int(key, v));
  else if (key == "noise") {
    const auto parts = split(v, ',');
    if (v == "none") {
      noisy = false;
      return;
    }
    if (parts.size() != 3) throw ConfigError("noise: expected p1,p2,pro");
    noise.p1 = to_double(key, parts[0]);
    noise.p2 = to_double(key, parts[1]);
    noise.p_readout = to_double(key, parts[2]);
    noisy = true;
  } else if (key == "lambdas") {
    lambdas.clear();
    for (const auto& p : split(v, ',')) lambdas.push_back(to_double(key, p));
  } else if (key == "fold") {
    try {
      fold_style = fold_style_from_string(v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else if (key == "repeats") repeats = static_cast<int>(to_int(key, v));
  else if (key == "epsilon") epsilon = to_double(key, v);
  else if (key == "adapt-threshold") adapt_threshold = to_double(key, v);
  else if (key == "pools") pools = v;
  else if (key == "out") out = v;
  else throw ConfigError(fmt::format("unknown config key '{}'", key));

  try {
    noise.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (shots < 1) throw ConfigError("shots must be at least 1");
  if (scf_max_iter < 1) throw ConfigError("scf-max-iter must be at least 1");
  if (lucj_layers < 1) throw ConfigError("lucj-layers must be at least 1");
}

std::map<std::string, std::string> RunConfig::entries() const {
  std::map<std::string, std::string> e;
  e["system"] = system;
  e["bond-length"] = bond_length ? fmt::format("{}", *bond_length) : "default";
  e["proton-exponents"] =
      proton_exponents ? fmt::format("{},{}", (*proton_exponents)[0], (*proton_exponents)[1]) : "default";
  e["proton-mass"] = proton_mass ? fmt::format("{}", *proton_mass) : "default";
  e["scf-tol"] = fmt::format("{}", scf_tol);
  e["scf-max-iter"] = std::to_string(scf_max_iter);
  e["mapping"] = std::string(to_string(mapping));
  e["ansatz"] = ansatz;
  e["lucj-layers"] = std::to_string(lucj_layers);
  e["diagonal-k"] = diagonal_k ? "true" : "false";
  e["optimizer"] = optimizer ? std::string(to_string(*optimizer)) : "default";
  e["mode"] = mode == EvalMode::analytic ? "analytic" : "shots";
  e["max-evals"] = std::to_string(max_evaluations);
  e["restarts"] = std::to_string(restarts);
  e["shots"] = std::to_string(shots);
  e["seed"] = std::to_string(seed);
  e["noise"] = noisy ? fmt::format("{},{},{}", noise.p1, noise.p2, noise.p_readout) : "none";
  e["lambdas"] = join(lambdas);
  e["fold"] = std::string(to_string(fold_style));
  e["repeats"] = std::to_string(repeats);
  e["epsilon"] = fmt::format("{}", epsilon);
  e["adapt-threshold"] = fmt::format("{}", adapt_threshold);
  e["pools"] = pools;
  e["out"] = out;
  return e;
}

std::string RunConfig::header() const {
  std::string s = fmt::format("{}\n", kHeaderMarker);
  for (const auto& [k, v] : entries()) s += fmt::format("# {} = {}\n", k, v);
  return s;
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = 0;
  if (text.rfind(kHeaderMarker, 0) == 0) {
    std::getline(in, line);
    while (std::getline(in, line) && line.rfind("# ", 0) == 0) {
      ++n;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ConfigError(fmt::format("header line {}: expected key = value", n));
      cfg.set(trim(line.substr(2, eq - 2)), line.substr(eq + 1));
    }
    return;
  }
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("config line {}: expected key = value", n));
    cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void write_artifact(const RunConfig& cfg, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(cfg.out);
  const auto path = std::filesystem::path(cfg.out) / name;
  std::ofstream f(path);
  if (!f) throw StageError("output", fmt::format("cannot write '{}'", path.string()));
  f << cfg.header() << content;
}

Problem build_problem(const RunConfig& cfg) {
  Problem p;
  const std::string& sys = cfg.system;
  if (sys.rfind("fcidump:", 0) == 0) {
    const std::string text = read_file(sys.substr(8));
    p.ao = input("integrals", [&] { return read_fcidump(text); });
  } else {
    p.spec = input("system", [&] {
      if (sys.rfind("file:", 0) == 0) return load_system(sys.substr(5));
      GeometryOverrides ov;
      ov.bond_length = cfg.bond_length;
      ov.proton_exponents = cfg.proton_exponents;
      ov.proton_mass = cfg.proton_mass;
      return builtin_system(builtin_from_string(sys), ov);
    });
    p.ao = stage("integrals", [&] { return build_integral_set(*p.spec); });
  }
  if (p.ao.mo_basis) {
    p.mo = stage("active-space", [&] { return truncate_active_space(p.ao); });
  } else {
    ScfOptions opt;
    opt.density_tol = cfg.scf_tol;
    opt.max_iter = cfg.scf_max_iter;
    p.hf = stage("scf", [&] { return solve_neo_hf(p.ao, opt); });
    if (!p.hf.converged)
      throw StageError("scf", fmt::format("no convergence within {} iterations (last energy {:.10f})",
                                          p.hf.iterations, p.hf.energy));
    p.mo = stage("active-space", [&] { return truncate_active_space(mo_transform(p.ao, p.hf)); });
  }
  stage("hamiltonian", [&] {
    p.layout = layout_for(p.mo);
    p.fermion = second_quantize(p.mo, p.layout);
    p.qubit = map_to_qubits(p.fermion, cfg.mapping);
    const StateVector ref = basis_state(
        p.layout.n_modes(), encode_occupation(p.layout.reference_occupation(), p.layout.n_modes(), cfg.mapping));
    p.e_hf = expectation(ref, p.qubit);
    return 0;
  });
  return p;
}

AnsatzBuild build_ansatz(const Problem& p, const RunConfig& cfg, const std::string& spec) {
  return stage("ansatz", [&] {
    AnsatzBuild b;
    b.name = spec;
    if (spec == "lucj") {
      if (cfg.mapping != Mapping::jordan_wigner)
        throw ConfigError("the lucj ansatz is defined for --mapping jw only");
      LucjOptions o;
      o.layers = cfg.lucj_layers;
      o.diagonal_k = cfg.diagonal_k;
      b.circuit = lucj_template(p.layout, o);
      b.hamiltonian = lucj_hamiltonian(p.fermion, p.layout);
    } else if (spec.rfind("ucc:", 0) == 0 || spec == "ucc") {
      const auto labels = parse_pool_labels(spec.size() > 4 ? spec.substr(4) : std::string{});
      b.circuit = trotter_circuit(build_pool(labels, p.layout), cfg.mapping);
      b.hamiltonian = p.qubit;
    } else {
      throw ConfigError(fmt::format("unknown ansatz '{}'", spec));
    }
    return b;
  });
}

namespace {

VqeOptions vqe_options(const RunConfig& cfg) {
  VqeOptions o;
  o.mode = cfg.mode;
  o.optimizer = cfg.optimizer.value_or(cfg.mode == EvalMode::analytic ? Optimizer::nelder_mead
                                                                       : Optimizer::spsa);
  o.optimizer_options.max_evaluations = cfg.max_evaluations;
  o.restarts = cfg.restarts;
  o.shots = cfg.shots;
  if (cfg.noisy) o.noise = cfg.noise;
  o.seed = cfg.seed;
  return o;
}

std::string params_text(const std::vector<double>& x) {
  std::string s;
  for (double v : x) s += fmt::format("{:.17g}\n", v);
  return s;
}

}  // namespace

RunSummary cmd_run(const RunConfig& cfg) {
  const Problem p = build_problem(cfg);
  RunSummary s;
  s.e_hf = p.e_hf;
  s.ansatz = cfg.ansatz;
  write_artifact(cfg, "integrals.fcidump", write_fcidump(p.ao, 1e-14));
  write_artifact(cfg, "integrals_mo.fcidump", write_fcidump(p.mo, 1e-14));
  if (!p.ao.mo_basis) write_artifact(cfg, "scf.txt", format_solution(p.ao, p.hf));
  write_artifact(cfg, "hamiltonian.txt", p.qubit.to_text());

  const FciResult fci = stage("fci", [&] {
    return fci_ground_state(p.qubit, p.layout, reference_sector(p.layout), cfg.mapping);
  });
  s.e_fci = fci.energy;
  write_artifact(cfg, "fci.txt",
                 fmt::format("energy = {:.12f}\nsector_dimension = {}\nresidual = {:.3e}\n",
                             fci.energy, fci.dimension, fci.residual));

  Circuit best;
  PauliSum h = p.qubit;
  if (cfg.ansatz == "adapt") {
    AdaptOptions ao;
    ao.gradient_threshold = cfg.adapt_threshold;
    ao.mapping = cfg.mapping;
    ao.vqe = vqe_options(cfg);
    const auto pool = stage("ansatz", [&] {
      return build_pool(parse_pool_labels("t1e,t1p,t2ee,t2ep,t3eep"), p.layout);
    });
    const AdaptResult r = stage("vqe", [&] { return run_adapt(pool, p.qubit, ao); });
    s.vqe = r.vqe;
    std::string hist = "step,generator,gradient,energy\n";
    for (std::size_t i = 0; i < r.history.size(); ++i)
      hist += fmt::format("{},{},{:.12e},{:.12f}\n", i, r.history[i].name, r.history[i].gradient,
                          r.history[i].energy);
    write_artifact(cfg, "adapt_history.csv", hist);
    ExcitationPool chosen{p.layout, {}};
    for (int i : r.selected) chosen.generators.push_back(pool.generators[static_cast<std::size_t>(i)]);
    best = trotter_circuit(chosen, cfg.mapping);
  } else {
    const AnsatzBuild b = build_ansatz(p, cfg, cfg.ansatz);
    h = b.hamiltonian;
    s.vqe = stage("vqe", [&] { return minimize(b.circuit, b.hamiltonian, vqe_options(cfg)); });
    best = b.circuit;
  }
  s.e_vqe = s.vqe.energy;
  write_artifact(cfg, "vqe_trace.csv", trace_csv(s.vqe));
  write_artifact(cfg, "parameters.txt", params_text(s.vqe.parameters));

  s.resources = stage("resources", [&] { return report(transpile_basis(best), cfg.epsilon); });
  write_artifact(cfg, "resources.csv", report_csv({{cfg.ansatz, s.resources}}));

  if (cfg.mode == EvalMode::shots) {
    const Circuit bound = best.bind(s.vqe.parameters);
    FoldingSchedule sched{cfg.lambdas, cfg.fold_style};
    s.mitigated = stage("mitigation", [&] {
      return run_mitigated(bound, h, sched, cfg.shots,
                           cfg.noisy ? std::optional<NoiseSpec>(cfg.noise) : std::nullopt, cfg.seed);
    });
    write_artifact(cfg, "mitigation.csv", plot_csv(*s.mitigated));
  }

  std::string summary = fmt::format(
      "ansatz = {}\nmapping = {}\nE_HF = {:.10f}\nE_FCI = {:.10f}\nE_VQE = {:.10f}\n"
      "evaluations = {}\nconverged = {}\n",
      cfg.ansatz, to_string(cfg.mapping), s.e_hf, s.e_fci, s.e_vqe, s.vqe.evaluations,
      s.vqe.converged);
  if (s.mitigated)
    summary += fmt::format("E_raw = {:.10f} +- {:.10f}\nE_PIE = {:.10f} +- {:.10f}\n",
                           s.mitigated->raw.front().energy, s.mitigated->raw.front().standard_error,
                           s.mitigated->fit.energy, s.mitigated->fit.standard_error);
  write_artifact(cfg, "summary.txt", summary);
  return s;
}

std::optional<double> reference_energy(const std::string& system, const std::string& label) {
  static const std::map<std::string, std::map<std::string, double>> table = {
      {"hhq",
       {{"t1e,t1p", -1.059569},
        {"t1p,t2ee", -1.079396},
        {"t1e,t2ee", -1.079406},
        {"t2ee,t2ep", -1.079421},
        {"t1e,t1p,t2ee,t2ep", -1.079431},
        {"t1e,t1p,t2ee,t2ep,t3eep", -1.079433},
        {"lucj", -1.079406},
        {"hf", -1.059569},
        {"fci", -1.079434}}},
      {"psh",
       {{"t1e,t1p", -0.558727},
        {"t1p,t2ee", -0.569124},
        {"t1e,t2ee", -0.569124},
        {"t2ee,t2ep", -0.572710},
        {"t1e,t1p,t2ee,t2ep", -0.572710},
        {"t1e,t1p,t2ee,t2ep,t3eep", -0.572714},
        {"lucj", -0.569178},
        {"hf", -0.558727},
        {"fci", -0.572838}}},
  };
  const auto s = table.find(system);
  if (s == table.end()) return std::nullopt;
  const auto e = s->second.find(label);
  if (e == s->second.end()) return std::nullopt;
  return e->second;
}

std::vector<Table1Row> cmd_table1(const RunConfig& cfg) {
  const Problem p = build_problem(cfg);
  std::vector<Table1Row> rows;
  VqeOptions vo = vqe_options(cfg);
  vo.mode = EvalMode::analytic;
  vo.optimizer = Optimizer::nelder_mead;
  for (const auto& tok : split(cfg.pools, ';')) {
    if (tok.empty()) continue;
    const std::string label = tok == "lucj" ? "lucj" : format_pool_labels(parse_pool_labels(tok));
    const AnsatzBuild b = build_ansatz(p, cfg, tok == "lucj" ? "lucj" : "ucc:" + tok);
    const VqeResult r = stage("vqe", [&] { return minimize(b.circuit, b.hamiltonian, vo); });
    rows.push_back({label, r.energy, report(transpile_basis(b.circuit), cfg.epsilon),
                    reference_energy(cfg.system, label)});
  }
  const FciResult fci = stage("fci", [&] {
    return fci_ground_state(p.qubit, p.layout, reference_sector(p.layout), cfg.mapping);
  });
  rows.push_back({"hf", p.e_hf, std::nullopt, reference_energy(cfg.system, "hf")});
  rows.push_back({"fci", fci.energy, std::nullopt, reference_energy(cfg.system, "fci")});
  return rows;
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::string s = "row,rz,sx,cnot,x,total,depth,energy,reference_energy\n";
  auto count = [](const ResourceReport& r, const char* k) {
    const auto it = r.counts.find(k);
    return it == r.counts.end() ? 0 : it->second;
  };
  for (const auto& r : rows) {
    std::string res = ",,,,,";
    if (r.resources)
      res = fmt::format("{},{},{},{},{},{}", count(*r.resources, "rz"), count(*r.resources, "sx"),
                        count(*r.resources, "cnot"), count(*r.resources, "x"), r.resources->total,
                        r.resources->depth);
    s += fmt::format("\"{}\",{},{:.10f},{}\n", r.label, res, r.energy,
                     r.reference_energy ? fmt::format("{:.6f}", *r.reference_energy) : "");
  }
  return s;
}

}  // namespace mcvqe
