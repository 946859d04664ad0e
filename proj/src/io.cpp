#include "acmhd/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "acmhd/diagnostics.hpp"
#include "acmhd/errors.hpp"
#include "acmhd/spectral.hpp"
#include "acmhd/vector_calculus.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint layout assumes a little-endian host");

#ifndef ACMHD_BUILD_ID
#define ACMHD_BUILD_ID "unknown"
#endif

namespace acmhd {
namespace {

constexpr char kMagic[8] = {'A', 'C', 'M', 'H', 'D', '0', '0', '1'};
constexpr std::size_t kHeaderBytes = 8 + 4 + 4 * 8;

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void put_block(std::ofstream& out, const Eigen::ArrayXd& v) {
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
}

Eigen::ArrayXd get_block(std::ifstream& in, Eigen::Index size, const std::string& path) {
  Eigen::ArrayXd v(size);
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(size * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(size * sizeof(double)))
    throw IoError(IoError::Kind::truncated, "checkpoint " + path + " ends mid-block");
  return v;
}

void write_checkpoint_blocks(const std::string& path, int n, double box, double epsilon,
                             double mu, double time, const Vec3Field& u_ph,
                             const Vec3Field& B_ph, const Field& p_ph, const Field& phi_ph) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(IoError::Kind::system, "cannot open " + path + " for writing");
  out.write(kMagic, sizeof kMagic);
  const std::uint32_t n32 = static_cast<std::uint32_t>(n);
  out.write(reinterpret_cast<const char*>(&n32), 4);
  for (double v : {box, epsilon, mu, time}) out.write(reinterpret_cast<const char*>(&v), 8);
  for (int i = 0; i < 3; ++i) put_block(out, u_ph[i].ph());
  for (int i = 0; i < 3; ++i) put_block(out, B_ph[i].ph());
  put_block(out, p_ph.ph());
  put_block(out, phi_ph.ph());
  out.flush();
  if (!out) throw IoError(IoError::Kind::system, "failed writing " + path);
}

double trapezoid(const std::vector<double>& v, double h) {
  if (v.size() < 2) return 0;
  double s = 0;
  for (double x : v) s += x;
  return h * (s - 0.5 * (v.front() + v.back()));
}

double l4_in_time(const std::vector<double>& v, double h) {
  std::vector<double> p4(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) p4[i] = v[i] * v[i] * v[i] * v[i];
  return std::pow(trapezoid(p4, h), 0.25);
}

}  // namespace

void write_csv(const std::string& path, const Trajectory& tr) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError(IoError::Kind::system, "cannot open " + path + " for writing");
  out << "time,energy,enstrophy_u,enstrophy_B,div_u,div_B,q_u_L4,q_B_L4\n";
  for (const DiagRecord& r : tr.records) {
    out << fmt17(r.time) << ',' << fmt17(r.energy) << ',' << fmt17(r.enstrophy_u) << ','
        << fmt17(r.enstrophy_B) << ',' << fmt17(r.div_u) << ',' << fmt17(r.div_B) << ','
        << fmt17(r.q_u_l4) << ',' << fmt17(r.q_B_l4) << '\n';
  }
  out.flush();
  if (!out) throw IoError(IoError::Kind::system, "failed writing " + path);
}

void write_checkpoint(const std::string& path, const AcState& s, double mu) {
  const Grid3& g = s.p.grid();
  write_checkpoint_blocks(path, g.n(), g.box(), s.epsilon, mu, s.time, to_physical(s.u),
                          to_physical(s.B), to_physical(s.p), to_physical(s.phi));
}

void write_checkpoint(const std::string& path, const Snapshot& snap, double box, double epsilon,
                      double mu) {
  if (!snap.u || !snap.B || !snap.p || !snap.phi)
    throw ContractError("checkpoint snapshot must carry u, B, p, and phi");
  const Grid3& g = snap.u->grid();
  write_checkpoint_blocks(path, g.n(), box, epsilon, mu, snap.time, *snap.u, *snap.B, *snap.p,
                          *snap.phi);
}

CheckpointData read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(IoError::Kind::system, "cannot open checkpoint " + path);

  char magic[8];
  in.read(magic, 8);
  if (in.gcount() != 8) throw IoError(IoError::Kind::truncated, "checkpoint " + path + " is too short");
  if (std::memcmp(magic, kMagic, 8) != 0)
    throw IoError(IoError::Kind::bad_magic, "file " + path + " is not a checkpoint");

  std::uint32_t n32 = 0;
  in.read(reinterpret_cast<char*>(&n32), 4);
  double header[4];
  in.read(reinterpret_cast<char*>(header), 32);
  if (!in) throw IoError(IoError::Kind::truncated, "checkpoint " + path + " has a short header");

  const int n = static_cast<int>(n32);
  if (n < 8 || n > 4096 || (n & (n - 1)) != 0)
    throw IoError(IoError::Kind::mismatch,
                  "checkpoint " + path + " declares unsupported grid size " + std::to_string(n));
  const double box = header[0], epsilon = header[1], mu = header[2], time = header[3];
  if (!(box > 0) || !(epsilon > 0) || !(mu >= 0) || !std::isfinite(time))
    throw IoError(IoError::Kind::mismatch, "checkpoint " + path + " has invalid header fields");

  const std::uintmax_t npts = static_cast<std::uintmax_t>(n) * n * n;
  std::error_code ec;
  const std::uintmax_t actual = std::filesystem::file_size(path, ec);
  if (!ec) {
    const std::uintmax_t expected = kHeaderBytes + 8 * npts * sizeof(double);
    if (actual < expected)
      throw IoError(IoError::Kind::truncated, "checkpoint " + path + " is shorter than its header promises");
    if (actual > expected)
      throw IoError(IoError::Kind::mismatch, "checkpoint " + path + " carries trailing data");
  }

  Grid3 g(n, box);
  const Eigen::Index size = g.size();
  auto scalar = [&] { return Field::physical(g, get_block(in, size, path)); };
  Field u1 = scalar(), u2 = scalar(), u3 = scalar();
  Field B1 = scalar(), B2 = scalar(), B3 = scalar();
  Field p = scalar(), phi = scalar();
  return CheckpointData{g,
                        Vec3Field(std::move(u1), std::move(u2), std::move(u3)),
                        Vec3Field(std::move(B1), std::move(B2), std::move(B3)),
                        std::move(p),
                        std::move(phi),
                        epsilon,
                        mu,
                        time};
}

void AuxSeries::observe(const Snapshot& snap) {
  if (!snap.u) throw ContractError("aux series needs snapshots carrying u");
  times.push_back(snap.time);
  Field divu = divergence(to_spectral(*snap.u));
  eps_dtp_hm1.push_back(sobolev_norm(divu, -1.0, Sobolev::inhomogeneous));
  dtp_w34.push_back(lp_norm(to_physical(sobolev_multiplier(divu, -3.0, Sobolev::inhomogeneous)), 4));
  if (snap.p) {
    Field ps = to_spectral(*snap.p);
    p_w24.push_back(lp_norm(to_physical(sobolev_multiplier(ps, -2.0, Sobolev::inhomogeneous)), 4));
  }
}

nlohmann::json report_json(const RunConfig& cfg, const Trajectory& tr, const AuxSeries& aux) {
  nlohmann::json j;
  j["name"] = cfg.name;
  j["build"] = build_id();
  j["config_echo"] = print_config(cfg);
  j["grid"] = {{"n", tr.grid.n()}, {"box", tr.grid.box()}};
  j["epsilon"] = tr.epsilon;
  j["mu"] = tr.mu;
  j["dt"] = tr.dt;
  j["horizon"] = tr.horizon;
  j["cadence"] = tr.cadence;
  j["nonlinear"] = tr.nonlinear;

  nlohmann::json recs = nlohmann::json::array();
  for (const DiagRecord& r : tr.records) {
    recs.push_back({{"time", r.time},
                    {"energy", r.energy},
                    {"enstrophy_u", r.enstrophy_u},
                    {"enstrophy_B", r.enstrophy_B},
                    {"div_u", r.div_u},
                    {"div_B", r.div_B},
                    {"q_u_L4", r.q_u_l4},
                    {"q_B_L4", r.q_B_l4}});
  }
  j["records"] = std::move(recs);

  if (tr.records.size() >= 2) {
    j["energy_balance_residual"] = energy_balance_residual(tr);
    j["energy_inequality_slack"] = energy_inequality_slack(tr);
    j["q_u_l2l4"] = std::sqrt(tr.records.back().q_norms.at("u:2,4,0"));
    j["q_B_l2l4"] = std::sqrt(tr.records.back().q_norms.at("B:2,4,0"));
  }

  if (!aux.times.empty()) {
    const double h = tr.snapshot_dt();
    nlohmann::json a;
    a["times"] = aux.times;
    a["eps_dtp_Hm1"] = aux.eps_dtp_hm1;
    a["p_Wm2_4"] = aux.p_w24;
    a["dtp_Wm3_4_times_eps"] = aux.dtp_w34;
    if (tr.epsilon > 0) {
      a["sup_eps_dtp_Hm1"] =
          *std::max_element(aux.eps_dtp_hm1.begin(), aux.eps_dtp_hm1.end());
      if (!aux.p_w24.empty())
        a["strichartz_p"] = std::pow(tr.epsilon, 3.0 / 8) * l4_in_time(aux.p_w24, h);
      a["strichartz_dtp"] = std::pow(tr.epsilon, -1.0 / 8) * l4_in_time(aux.dtp_w34, h);
    }
    j["aux"] = std::move(a);
  }
  return j;
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError(IoError::Kind::system, "cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  out.flush();
  if (!out) throw IoError(IoError::Kind::system, "failed writing " + path);
}

std::string build_id() { return ACMHD_BUILD_ID; }

}  // namespace acmhd
