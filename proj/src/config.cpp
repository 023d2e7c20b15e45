#include <wavebound/config.hpp>

#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wavebound {

FluidParams RunConfig::fluid() const {
  FluidParams fp;
  fp.g = g;
  fp.omega = omega;
  fp.m = m;
  return fp;
}

SolverOptions RunConfig::solver() const {
  SolverOptions so;
  so.n_x = n_x;
  so.n_p = n_p;
  so.max_newton_iter = max_newton_iter;
  so.interior_threshold = interior_threshold;
  so.surface_threshold = surface_threshold;
  so.amplitude_step = amplitude_step;
  so.max_continuation_steps = max_continuation_steps;
  return so;
}

SweepOptions RunConfig::sweep() const {
  SweepOptions sw;
  sw.target_d0_fraction = target_d0_fraction;
  sw.window_fraction = window_fraction;
  sw.solver = solver();
  return sw;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_num(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for '" + key + "': " + v);
  }
  if (pos != v.size()) throw std::invalid_argument("config: bad number for '" + key + "': " + v);
  return x;
}

int parse_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  int x;
  try {
    x = std::stoi(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for '" + key + "': " + v);
  }
  if (pos != v.size()) throw std::invalid_argument("config: bad integer for '" + key + "': " + v);
  return x;
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw std::invalid_argument("config: empty entry in list '" + key + "'");
    out.push_back(parse_num(key, item));
  }
  if (out.empty()) throw std::invalid_argument("config: empty list for '" + key + "'");
  return out;
}

}  // namespace

void apply_config_text(const std::string& text, RunConfig& cfg) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");

    if (key == "g") cfg.g = parse_num(key, val);
    else if (key == "omega") cfg.omega = parse_num(key, val);
    else if (key == "m") cfg.m = parse_num(key, val);
    else if (key == "L") cfg.L = parse_num(key, val);
    else if (key == "amplitude") cfg.amplitude = parse_num(key, val);
    else if (key == "omegas") cfg.omegas = parse_list(key, val);
    else if (key == "n_x") cfg.n_x = parse_int(key, val);
    else if (key == "n_p") cfg.n_p = parse_int(key, val);
    else if (key == "max_newton_iter") cfg.max_newton_iter = parse_int(key, val);
    else if (key == "interior_threshold") cfg.interior_threshold = parse_num(key, val);
    else if (key == "surface_threshold") cfg.surface_threshold = parse_num(key, val);
    else if (key == "amplitude_step") cfg.amplitude_step = parse_num(key, val);
    else if (key == "max_continuation_steps") cfg.max_continuation_steps = parse_int(key, val);
    else if (key == "target_d0_fraction") cfg.target_d0_fraction = parse_num(key, val);
    else if (key == "window_fraction") cfg.window_fraction = parse_num(key, val);
    else if (key == "out") cfg.out = val;
    else if (key == "format") cfg.format = val;
    else throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_config_text(ss.str(), cfg);
}

}  // namespace wavebound
