#include "acmhd/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "acmhd/errors.hpp"

namespace acmhd {
namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ParamError("line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, int line) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    fail(line, "expected a number, got '" + v + "'");
  }
  if (used != v.size()) fail(line, "trailing characters in number '" + v + "'");
  return x;
}

long parse_long(const std::string& v, int line) {
  std::size_t used = 0;
  long x = 0;
  try {
    x = std::stol(v, &used);
  } catch (const std::exception&) {
    fail(line, "expected an integer, got '" + v + "'");
  }
  if (used != v.size()) fail(line, "trailing characters in integer '" + v + "'");
  return x;
}

std::uint64_t parse_u64(const std::string& v, int line) {
  std::size_t used = 0;
  std::uint64_t x = 0;
  try {
    x = std::stoull(v, &used);
  } catch (const std::exception&) {
    fail(line, "expected a nonnegative integer, got '" + v + "'");
  }
  if (used != v.size()) fail(line, "trailing characters in integer '" + v + "'");
  return x;
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true") return true;
  if (v == "false") return false;
  fail(line, "expected true or false, got '" + v + "'");
}

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  int line_dt = 0, line_cfl = 0;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty()) fail(lineno, "missing key before '='");
    if (val.empty()) fail(lineno, "missing value for key '" + key + "'");
    if (!seen.insert(key).second) fail(lineno, "duplicate key '" + key + "'");

    if (key == "name")
      c.name = val;
    else if (key == "n")
      c.n = static_cast<int>(parse_long(val, lineno));
    else if (key == "box")
      c.box = parse_double(val, lineno);
    else if (key == "epsilon") {
      c.epsilon = parse_double(val, lineno);
      c.has_epsilon = true;
    } else if (key == "mu")
      c.mu = parse_double(val, lineno);
    else if (key == "T")
      c.T = parse_double(val, lineno);
    else if (key == "dt") {
      c.dt = parse_double(val, lineno);
      c.has_dt = true;
      line_dt = lineno;
    } else if (key == "cfl") {
      c.cfl = parse_double(val, lineno);
      c.has_cfl = true;
      line_cfl = lineno;
    } else if (key == "data") {
      if (val != "well" && val != "ill" && val != "custom")
        fail(lineno, "data must be well, ill, or custom");
      c.data = val;
    } else if (key == "seed")
      c.seed = parse_u64(val, lineno);
    else if (key == "cadence")
      c.cadence = static_cast<int>(parse_long(val, lineno));
    else if (key == "out")
      c.out = val;
    else if (key == "nonlinear")
      c.nonlinear = parse_bool(val, lineno);
    else if (key == "checkpoint_every")
      c.checkpoint_every = parse_long(val, lineno);
    else if (key == "init_checkpoint")
      c.init_checkpoint = val;
    else if (key == "sponge")
      c.sponge = parse_bool(val, lineno);
    else if (key == "sponge_strength")
      c.sponge_strength = parse_double(val, lineno);
    else if (key == "window_frac")
      c.window_frac = parse_double(val, lineno);
    else
      fail(lineno, "unknown key '" + key + "'");
  }

  if (c.has_dt && c.has_cfl)
    fail(std::max(line_dt, line_cfl), "dt and cfl are mutually exclusive");
  if (c.n < 8) throw ParamError("config: n must be at least 8");
  if (!(c.box > 0)) throw ParamError("config: box must be positive");
  if (!(c.epsilon > 0)) throw ParamError("config: epsilon must be positive");
  if (c.mu < 0) throw ParamError("config: mu must be nonnegative");
  if (!(c.T > 0)) throw ParamError("config: T must be positive");
  if (!(c.dt > 0)) throw ParamError("config: dt must be positive");
  if (!(c.cfl > 0)) throw ParamError("config: cfl must be positive");
  if (c.cadence < 1) throw ParamError("config: cadence must be at least 1");
  if (c.checkpoint_every < 0) throw ParamError("config: checkpoint_every must be nonnegative");
  if (!(c.sponge_strength > 0)) throw ParamError("config: sponge_strength must be positive");
  if (!(c.window_frac > 0 && c.window_frac < 0.5))
    throw ParamError("config: window_frac must lie in (0, 0.5)");
  if (c.data == "custom" && c.init_checkpoint.empty())
    throw ParamError("config: data = custom requires init_checkpoint");
  return c;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(IoError::Kind::system, "cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string print_config(const RunConfig& c) {
  std::ostringstream os;
  os << "name = " << c.name << "\n";
  os << "n = " << c.n << "\n";
  os << "box = " << fmt17(c.box) << "\n";
  if (c.has_epsilon) os << "epsilon = " << fmt17(c.epsilon) << "\n";
  os << "mu = " << fmt17(c.mu) << "\n";
  os << "T = " << fmt17(c.T) << "\n";
  if (c.has_dt) os << "dt = " << fmt17(c.dt) << "\n";
  if (c.has_cfl) os << "cfl = " << fmt17(c.cfl) << "\n";
  os << "data = " << c.data << "\n";
  os << "seed = " << c.seed << "\n";
  os << "cadence = " << c.cadence << "\n";
  os << "out = " << c.out << "\n";
  os << "nonlinear = " << (c.nonlinear ? "true" : "false") << "\n";
  os << "checkpoint_every = " << c.checkpoint_every << "\n";
  if (!c.init_checkpoint.empty()) os << "init_checkpoint = " << c.init_checkpoint << "\n";
  os << "sponge = " << (c.sponge ? "true" : "false") << "\n";
  os << "sponge_strength = " << fmt17(c.sponge_strength) << "\n";
  os << "window_frac = " << fmt17(c.window_frac) << "\n";
  return os.str();
}

}  // namespace acmhd
