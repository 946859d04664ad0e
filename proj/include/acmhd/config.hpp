#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace acmhd {

// Flat "key = value" run configuration; '#' starts a comment. Unknown and
// duplicated keys are rejected with their line number. dt and cfl are
// mutually exclusive; whichever is absent gets derived at run setup. The
// has_* flags record which of the optional numbers were given explicitly.
struct RunConfig {
  std::string name = "run";
  int n = 32;
  double box = 2 * M_PI;
  double epsilon = 1e-2;
  double mu = 1;
  double T = 1;
  double dt = 1e-3;
  double cfl = 0.5;
  std::string data = "well";  // well | ill | custom
  std::uint64_t seed = 0;
  int cadence = 1;
  std::string out = "out";
  bool nonlinear = true;
  long checkpoint_every = 0;    // snapshots between checkpoint dumps; 0 = never
  std::string init_checkpoint;  // starting state, required for data = custom
  bool sponge = false;
  double sponge_strength = 20;
  double window_frac = 0.25;
  bool has_epsilon = false;
  bool has_dt = false;
  bool has_cfl = false;

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// canonical text form; parse_config(print_config(c)) == c
std::string print_config(const RunConfig& c);

}  // namespace acmhd
