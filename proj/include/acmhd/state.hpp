#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acmhd/field.hpp"

namespace acmhd {

// Relaxed-system state. Fields are held spectrally and stay inside the
// dealias band; p and phi are mean-free (gauge). epsilon > 0.
struct AcState {
  Vec3Field u;
  Vec3Field B;
  Field p;
  Field phi;
  double epsilon;
  double time;
};

// Incompressible reference state (div u = div B = 0, spectral).
struct IncState {
  Vec3Field u;
  Vec3Field B;
  double time;
};

// Per-step scalar diagnostics. q_norms carries running space-time norm
// accumulations keyed "field:q,r,s"; the standard drivers maintain
// "u:2,4,0" and "B:2,4,0" as the trapezoid integral of ||Q.(t)||_L4^2 up to
// the record's time.
struct DiagRecord {
  double time = 0;
  double energy = 0;
  double enstrophy_u = 0;
  double enstrophy_B = 0;
  double div_u = 0;
  double div_B = 0;
  double q_u_l4 = 0;
  double q_B_l4 = 0;
  std::map<std::string, double> q_norms;
};

// What a trajectory retains per sample time. Fields are stored as physical
// samples; consumers transform back as needed.
struct SnapshotMask {
  bool u = true;
  bool B = true;
  bool p = false;
  bool phi = false;
};

struct Snapshot {
  double time = 0;
  std::optional<Vec3Field> u;
  std::optional<Vec3Field> B;
  std::optional<Field> p;
  std::optional<Field> phi;
};

struct Trajectory {
  explicit Trajectory(const Grid3& g) : grid(g) {}

  Grid3 grid;
  double epsilon = 0;  // 0 marks a reference (incompressible) run
  double mu = 1;
  double dt = 0;
  double horizon = 0;
  int cadence = 1;
  bool nonlinear = true;
  std::vector<DiagRecord> records;    // one per step, records[0] at t = 0
  std::vector<Snapshot> snapshots;    // every cadence steps, snapshots[0] at t = 0

  double snapshot_dt() const { return dt * cadence; }
};

}  // namespace acmhd
