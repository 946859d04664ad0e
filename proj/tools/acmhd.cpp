#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "acmhd/config.hpp"
#include "acmhd/diagnostics.hpp"
#include "acmhd/errors.hpp"
#include "acmhd/harness.hpp"
#include "acmhd/io.hpp"
#include "acmhd/solver.hpp"
#include "acmhd/vector_calculus.hpp"

namespace fs = std::filesystem;
using namespace acmhd;

namespace {

std::string g3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

DataKind data_kind(const std::string& s) {
  if (s == "well") return DataKind::well_prepared;
  if (s == "ill") return DataKind::ill_prepared;
  return DataKind::custom;
}

// initial-size budget for user-supplied states: the scaled pressure and
// potential may not dwarf the kinetic and magnetic content
void check_budget(const CheckpointData& ck, double epsilon) {
  const double cap = std::max(1.0, l2_norm(ck.u) + l2_norm(ck.B));
  const double p_scaled = std::sqrt(epsilon) * l2_norm(ck.p);
  const double phi_scaled = std::sqrt(epsilon) * l2_norm(ck.phi);
  if (p_scaled > cap)
    throw ParamError("initial pressure exceeds the energy budget: sqrt(eps)||p|| = " +
                     g3(p_scaled) + " > " + g3(cap) + " = max(1, ||u|| + ||B||)");
  if (phi_scaled > cap)
    throw ParamError("initial potential exceeds the energy budget: sqrt(eps)||phi|| = " +
                     g3(phi_scaled) + " > " + g3(cap) + " = max(1, ||u|| + ||B||)");
}

AcState initial_state(const RunConfig& cfg, const Grid3& g) {
  const DataKind kind = data_kind(cfg.data);
  if (kind != DataKind::custom) return make_initial_data(g, kind, cfg.epsilon);

  CheckpointData ck = read_checkpoint(cfg.init_checkpoint);
  if (ck.grid.n() != cfg.n || std::abs(ck.grid.box() - cfg.box) > 1e-12 * cfg.box)
    throw ParamError("checkpoint grid (" + std::to_string(ck.grid.n()) +
                     ") disagrees with the configuration (" + std::to_string(cfg.n) + ")");
  const double eps = cfg.has_epsilon ? cfg.epsilon : ck.epsilon;
  check_budget(ck, eps);
  return state_from_physical(ck.u, ck.B, ck.p, ck.phi, eps, ck.time);
}

// explicit dt wins; otherwise derive one from the advective CFL target and
// round it so the horizon is an integer number of steps
double resolve_dt(const RunConfig& cfg, const AcState& s0) {
  if (cfg.has_dt) return cfg.dt;
  Vec3Field u = to_physical(s0.u);
  Vec3Field B = to_physical(s0.B);
  double vmax = 1e-6;
  for (int i = 0; i < 3; ++i)
    vmax = std::max({vmax, u[i].ph().abs().maxCoeff(), B[i].ph().abs().maxCoeff()});
  const double dx = s0.p.grid().dx();
  const double dt0 = cfg.cfl * dx / vmax;
  const long steps = std::max(1L, static_cast<long>(std::ceil(cfg.T / dt0)));
  return cfg.T / static_cast<double>(steps);
}

int cmd_run(const RunConfig& cfg) {
  if (cfg.sponge)
    throw ParamError("sponge = true belongs to the probe command, not run");
  fs::create_directories(cfg.out);
  Grid3 g(cfg.n, cfg.box);
  AcState s0 = initial_state(cfg, g);
  const double t0 = s0.time;

  SimOptions opts;
  opts.T = cfg.T;
  opts.dt = resolve_dt(cfg, s0);
  opts.cadence = cfg.cadence;
  opts.controls.mu = cfg.mu;
  opts.controls.nonlinear = cfg.nonlinear;
  opts.mask = {true, true, true, cfg.checkpoint_every > 0};
  opts.keep_snapshots = false;

  AuxSeries aux;
  long snap_index = 0;
  opts.on_snapshot = [&](const Snapshot& snap) {
    aux.observe(snap);
    if (cfg.checkpoint_every > 0 && snap_index % cfg.checkpoint_every == 0) {
      char tag[32];
      std::snprintf(tag, sizeof tag, "_%06ld.ck", snap_index);
      write_checkpoint(fs::path(cfg.out) / (cfg.name + tag), snap, cfg.box,
                       s0.epsilon, cfg.mu);
    }
    ++snap_index;
  };

  Trajectory tr = simulate_ac(std::move(s0), opts);

  const fs::path csv = fs::path(cfg.out) / (cfg.name + ".csv");
  const fs::path rep = fs::path(cfg.out) / (cfg.name + ".json");
  write_csv(csv.string(), tr);
  write_json(rep.string(), report_json(cfg, tr, aux));

  const DiagRecord& last = tr.records.back();
  std::cout << cfg.name << ": " << tr.records.size() - 1 << " steps, t = " << t0 << " .. "
            << last.time << ", dt = " << g3(tr.dt) << "\n"
            << "  energy " << g3(tr.records.front().energy) << " -> " << g3(last.energy)
            << ", balance residual " << g3(energy_balance_residual(tr)) << "\n"
            << "  wrote " << csv.string() << ", " << rep.string() << "\n";
  return 0;
}

int cmd_reference(const RunConfig& cfg) {
  fs::create_directories(cfg.out);
  Grid3 g(cfg.n, cfg.box);
  AcState seed = initial_state(cfg, g);
  IncState s0{leray_P(seed.u), leray_P(seed.B), seed.time};

  SimOptions opts;
  opts.T = cfg.T;
  opts.dt = resolve_dt(cfg, seed);
  opts.cadence = cfg.cadence;
  opts.controls.mu = cfg.mu;
  opts.controls.nonlinear = cfg.nonlinear;
  opts.mask = {true, true, false, false};
  opts.keep_snapshots = false;

  AuxSeries aux;
  opts.on_snapshot = [&](const Snapshot& snap) { aux.observe(snap); };
  Trajectory tr = simulate_reference(std::move(s0), opts);

  const fs::path csv = fs::path(cfg.out) / (cfg.name + "_ref.csv");
  const fs::path rep = fs::path(cfg.out) / (cfg.name + "_ref.json");
  write_csv(csv.string(), tr);
  write_json(rep.string(), report_json(cfg, tr, aux));
  std::cout << cfg.name << " (reference): " << tr.records.size() - 1
            << " steps, energy " << g3(tr.records.front().energy) << " -> "
            << g3(tr.records.back().energy) << "\n"
            << "  wrote " << csv.string() << ", " << rep.string() << "\n";
  return 0;
}

int cmd_sweep(RunConfig cfg, const std::vector<double>& epsilons) {
  fs::create_directories(cfg.out);
  if (cfg.data == "custom")
    throw ParamError("sweep supports the built-in data families only");

  SweepSpec spec;
  spec.n = cfg.n;
  spec.box = cfg.box;
  spec.mu = cfg.mu;
  spec.T = cfg.T;
  spec.dt = cfg.dt;
  spec.cadence = cfg.cadence;
  spec.data = data_kind(cfg.data);
  spec.nonlinear = cfg.nonlinear;
  if (!epsilons.empty()) spec.epsilons = epsilons;

  SweepReport rep = epsilon_sweep(spec);

  std::cout << "epsilon      q_u(L2L4)    q_B(L2L4)    |Pu-u_ref|   |PB-B_ref|\n";
  for (const SweepEntry& e : rep.entries) {
    std::printf("%-12.3g %-12.4g %-12.4g %-12.4g %-12.4g\n", e.epsilon, e.qu_l2l4, e.qB_l2l4,
                e.pu_diff, e.pB_diff);
  }
  auto show_fit = [](const char* what, const RateFit& f, bool below) {
    if (below)
      std::printf("%s: below measurement floor\n", what);
    else
      std::printf("%s: exponent %.4f (r2 %.4f, %d points)\n", what, f.exponent, f.r2, f.n);
  };
  show_fit("q_u decay", rep.fit_qu, rep.qu_below_floor);
  show_fit("q_B decay", rep.fit_qB, rep.qB_below_floor);
  show_fit("Pu convergence", rep.fit_pu, rep.pu_below_floor);
  show_fit("PB convergence", rep.fit_pB, rep.pB_below_floor);
  if (rep.dt_control_gap >= 0)
    std::printf("dt control: relative shift %.3g at eps = %.3g under dt/2\n",
                rep.dt_control_gap, rep.entries.back().epsilon);

  nlohmann::json j;
  j["build"] = build_id();
  j["config_echo"] = print_config(cfg);
  j["epsilons"] = nlohmann::json::array();
  for (const SweepEntry& e : rep.entries) {
    j["epsilons"].push_back({{"epsilon", e.epsilon},
                             {"q_u_l2l4", e.qu_l2l4},
                             {"q_B_l2l4", e.qB_l2l4},
                             {"pu_diff", e.pu_diff},
                             {"pB_diff", e.pB_diff},
                             {"strichartz_p", e.strich_p},
                             {"strichartz_dtp", e.strich_dtp},
                             {"sup_eps_dtp_Hm1", e.eps_dtp_hm1}});
  }
  auto fit_json = [](const RateFit& f, bool below) {
    return nlohmann::json{{"exponent", f.exponent},
                          {"prefactor", f.prefactor},
                          {"r2", f.r2},
                          {"points", f.n},
                          {"below_floor", below}};
  };
  j["fit_q_u"] = fit_json(rep.fit_qu, rep.qu_below_floor);
  j["fit_q_B"] = fit_json(rep.fit_qB, rep.qB_below_floor);
  j["fit_pu"] = fit_json(rep.fit_pu, rep.pu_below_floor);
  j["fit_pB"] = fit_json(rep.fit_pB, rep.pB_below_floor);
  j["floor_q"] = rep.floor_q;
  j["floor_p"] = rep.floor_p;
  j["dt_control_gap"] = rep.dt_control_gap;

  const fs::path out = fs::path(cfg.out) / (cfg.name + "_sweep.json");
  write_json(out.string(), j);
  std::cout << "wrote " << out.string() << "\n";
  return 0;
}

int cmd_diag(const std::vector<std::string>& paths, std::vector<int> strides, bool linear,
             const std::string& out) {
  if (paths.size() < 3)
    throw ParamError("diag needs at least three checkpoints for a second difference");
  if (strides.empty()) strides = {1, 2};

  std::vector<CheckpointData> cks;
  cks.reserve(paths.size());
  for (const std::string& p : paths) cks.push_back(read_checkpoint(p));

  const CheckpointData& head = cks.front();
  for (const CheckpointData& ck : cks) {
    if (ck.grid.n() != head.grid.n() || std::abs(ck.grid.box() - head.grid.box()) > 1e-12)
      throw ParamError("checkpoints live on different grids");
    if (std::abs(ck.epsilon - head.epsilon) > 1e-12 * head.epsilon ||
        std::abs(ck.mu - head.mu) > 1e-12)
      throw ParamError("checkpoints carry different physical parameters");
  }
  const double spacing = cks[1].time - cks[0].time;
  if (!(spacing > 0)) throw ParamError("checkpoints must be ordered by time");
  for (std::size_t i = 1; i < cks.size(); ++i) {
    const double gap = cks[i].time - cks[i - 1].time;
    if (std::abs(gap - spacing) > 1e-6 * spacing)
      throw ParamError("checkpoints are not uniformly spaced in time");
  }

  Trajectory tr(head.grid);
  tr.epsilon = head.epsilon;
  tr.mu = head.mu;
  tr.dt = spacing;
  tr.cadence = 1;
  tr.horizon = cks.back().time - cks.front().time;
  tr.nonlinear = !linear;
  for (CheckpointData& ck : cks) {
    Snapshot s;
    s.time = ck.time;
    s.u = std::move(ck.u);
    s.B = std::move(ck.B);
    s.p = std::move(ck.p);
    s.phi = std::move(ck.phi);
    tr.snapshots.push_back(std::move(s));
  }

  std::cout << "wave-equation defect in W^{-2,2}, tau step = stride * "
            << g3(spacing / std::sqrt(tr.epsilon)) << "\n";
  std::cout << "stride  centers  pressure      (scale)       potential     (scale)\n";
  nlohmann::json rows = nlohmann::json::array();
  for (int s : strides) {
    WaveResidual rp = wave_residual(tr, WaveField::pressure, s);
    WaveResidual rf = wave_residual(tr, WaveField::potential, s);
    std::printf("%-7d %-8d %-13.5g %-13.5g %-13.5g %-13.5g\n", s, rp.centers, rp.residual,
                rp.scale, rf.residual, rf.scale);
    rows.push_back({{"stride", s},
                    {"centers", rp.centers},
                    {"pressure_residual", rp.residual},
                    {"pressure_scale", rp.scale},
                    {"potential_residual", rf.residual},
                    {"potential_scale", rf.scale}});
  }
  if (!out.empty()) {
    nlohmann::json j;
    j["build"] = build_id();
    j["epsilon"] = tr.epsilon;
    j["mu"] = tr.mu;
    j["spacing"] = spacing;
    j["nonlinear"] = tr.nonlinear;
    j["residuals"] = std::move(rows);
    write_json(out, j);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_probe(const ProbeSpec& spec, const std::string& out) {
  ProbeResult res = local_decay_probe(spec);
  std::cout << "window energy, initial " << g3(res.window_initial) << "\n";
  std::cout << "horizon   sponge-on     sponge-off\n";
  for (std::size_t i = 0; i < res.horizons.size(); ++i)
    std::printf("%-9.4g %-13.5g %-13.5g\n", res.horizons[i], res.window_on[i],
                res.window_off[i]);
  std::cout << "total energy: initial " << g3(res.total_initial) << ", final with sponge "
            << g3(res.total_on_final) << ", final without " << g3(res.total_off_final)
            << "\n";
  if (!out.empty()) {
    nlohmann::json j;
    j["build"] = build_id();
    j["horizons"] = res.horizons;
    j["window_on"] = res.window_on;
    j["window_off"] = res.window_off;
    j["window_initial"] = res.window_initial;
    j["total_initial"] = res.total_initial;
    j["total_on_final"] = res.total_on_final;
    j["total_off_final"] = res.total_off_final;
    write_json(out, j);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral solver and verification harness for the relaxed MHD system"};
  app.require_subcommand(1);

  std::string config_path, out_override, diag_out, probe_out;
  std::optional<std::uint64_t> seed_override;
  std::vector<double> eps_list;
  std::vector<std::string> ck_paths;
  std::vector<int> strides;
  bool diag_linear = false;
  ProbeSpec probe;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "configuration file")->required();
    sub->add_option("-o,--out", out_override, "output directory override");
    sub->add_option("--seed", seed_override, "seed override");
  };

  CLI::App* run = app.add_subcommand("run", "integrate the relaxed system");
  add_common(run);
  CLI::App* ref = app.add_subcommand("reference", "integrate the incompressible reference");
  add_common(ref);
  CLI::App* sweep = app.add_subcommand("sweep", "relaxation sweep against one reference");
  add_common(sweep);
  sweep->add_option("--epsilons", eps_list, "relaxation parameters")->delimiter(',');

  CLI::App* diag = app.add_subcommand("diag", "wave-equation defect from stored checkpoints");
  diag->add_option("--checkpoint", ck_paths, "uniformly spaced checkpoints (at least 3)")
      ->required()
      ->expected(-3);
  diag->add_option("--strides", strides, "second-difference strides")->delimiter(',');
  diag->add_flag("--linear", diag_linear, "checkpoints come from a linear run");
  diag->add_option("-o,--out", diag_out, "JSON output path");

  CLI::App* probe_cmd = app.add_subcommand("probe", "local acoustic energy decay probe");
  probe_cmd->add_option("-n,--n", probe.n, "grid size");
  probe_cmd->add_option("--epsilon", probe.epsilon, "relaxation parameter");
  probe_cmd->add_option("--dt", probe.dt, "time step");
  probe_cmd->add_option("--horizons", probe.horizons, "measurement times")->delimiter(',');
  probe_cmd->add_option("--strength", probe.sponge_strength, "sponge strength");
  probe_cmd->add_option("--window-frac", probe.window_frac, "window radius / half box");
  probe_cmd->add_option("-o,--out", probe_out, "JSON output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(probe_cmd)) return cmd_probe(probe, probe_out);
    if (app.got_subcommand(diag)) return cmd_diag(ck_paths, strides, diag_linear, diag_out);

    RunConfig cfg = parse_config_file(config_path);
    if (!out_override.empty()) cfg.out = out_override;
    if (seed_override) cfg.seed = *seed_override;
    if (app.got_subcommand(run)) return cmd_run(cfg);
    if (app.got_subcommand(ref)) return cmd_reference(cfg);
    return cmd_sweep(cfg, eps_list);
  } catch (const SolverAbort& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
