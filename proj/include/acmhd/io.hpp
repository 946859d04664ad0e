#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "acmhd/config.hpp"
#include "acmhd/state.hpp"

namespace acmhd {

// One row per diagnostic record:
// time,energy,enstrophy_u,enstrophy_B,div_u,div_B,q_u_L4,q_B_L4 at %.17g.
void write_csv(const std::string& path, const Trajectory& tr);

// Binary state file: magic "ACMHD001", u32 n, f64 box/epsilon/mu/time,
// then eight n^3 blocks of f64 physical samples (u1 u2 u3 B1 B2 B3 p phi),
// x varying fastest. Everything little-endian.
struct CheckpointData {
  Grid3 grid;
  Vec3Field u, B;  // physical
  Field p, phi;
  double epsilon, mu, time;
};

void write_checkpoint(const std::string& path, const AcState& s, double mu);
// snapshot variant: requires u, B, p, and phi to be present
void write_checkpoint(const std::string& path, const Snapshot& snap, double box,
                      double epsilon, double mu);
CheckpointData read_checkpoint(const std::string& path);

// per-snapshot series feeding the run report; call observe on every snapshot
struct AuxSeries {
  std::vector<double> times;
  std::vector<double> eps_dtp_hm1;  // ||div u||_{H^-1}  ( = eps ||dt p||_{H^-1} )
  std::vector<double> p_w24;        // ||p||_{W^{-2,4}}
  std::vector<double> dtp_w34;      // ||div u||_{W^{-3,4}}  ( = eps ||dt p||_{W^{-3,4}} )

  void observe(const Snapshot& snap);
};

// JSON run report: configuration echo (re-parseable), build id, diagnostic
// records, energy-ledger summaries, and the dispersive norms derived from
// the aux series.
nlohmann::json report_json(const RunConfig& cfg, const Trajectory& tr, const AuxSeries& aux);

void write_json(const std::string& path, const nlohmann::json& j);

// version stamp baked in at configure time
std::string build_id();

}  // namespace acmhd
