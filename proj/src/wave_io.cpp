#include <wavebound/wave_io.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace wavebound {

namespace {

using nlohmann::json;

constexpr const char* kWaveFormat = "wavebound-wave-1";
constexpr const char* kCertFormat = "wavebound-certificate-1";
constexpr const char* kSweepFormat = "wavebound-sweep-1";

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double want_num(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw std::runtime_error(std::string("wave file: missing or non-numeric field '") + key + "'");
  return j[key].get<double>();
}

int want_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw std::runtime_error(std::string("wave file: missing or non-integer field '") + key + "'");
  return j[key].get<int>();
}

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    default: return "vacuous";
  }
}

}  // namespace

std::string wave_to_json_text(const WaveField& wave) {
  const HeightField& f = wave.height;
  json j;
  j["format"] = kWaveFormat;
  j["params"] = {{"g", f.params.g}, {"omega", f.params.omega}, {"m", f.params.m}};
  j["L"] = f.L;
  j["Q"] = f.Q;
  j["s_ref"] = f.s_ref;
  j["d_ref"] = f.d_ref;
  j["n_x"] = f.n_x;
  j["n_p"] = f.n_p;
  j["h"] = f.h;
  j["residuals"] = {{"interior", wave.residuals.interior},
                    {"surface", wave.residuals.surface}};
  j["converged"] = wave.converged;
  j["newton_iterations"] = wave.newton_iterations;
  return j.dump(2) + "\n";
}

WaveField wave_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw std::runtime_error(std::string("wave file: invalid JSON: ") + ex.what());
  }
  if (!j.contains("format") || j["format"] != kWaveFormat)
    throw std::runtime_error("wave file: unknown format tag");
  if (!j.contains("params") || !j["params"].is_object())
    throw std::runtime_error("wave file: missing params object");

  WaveField w;
  HeightField& f = w.height;
  const json& p = j["params"];
  f.params.g = want_num(p, "g");
  f.params.omega = want_num(p, "omega");
  f.params.m = want_num(p, "m");
  f.params.validate();
  f.L = want_num(j, "L");
  f.Q = want_num(j, "Q");
  f.s_ref = want_num(j, "s_ref");
  f.d_ref = want_num(j, "d_ref");
  f.n_x = want_int(j, "n_x");
  f.n_p = want_int(j, "n_p");
  if (f.n_x < 1 || f.n_p < 1 || !(f.L > 0.0) || !(f.d_ref > 0.0))
    throw std::runtime_error("wave file: inconsistent grid metadata");
  if (!j.contains("h") || !j["h"].is_array())
    throw std::runtime_error("wave file: missing height table");
  f.h = j["h"].get<std::vector<double>>();
  if (f.h.size() != static_cast<std::size_t>(f.n_x) * (f.n_p + 1))
    throw std::runtime_error("wave file: height table size disagrees with the grid");

  if (!j.contains("residuals") || !j["residuals"].is_object())
    throw std::runtime_error("wave file: missing residuals");
  w.residuals.interior = want_num(j["residuals"], "interior");
  w.residuals.surface = want_num(j["residuals"], "surface");
  if (!j.contains("converged") || !j["converged"].is_boolean())
    throw std::runtime_error("wave file: missing converged flag");
  w.converged = j["converged"].get<bool>();
  w.newton_iterations = want_int(j, "newton_iterations");
  return w;
}

void write_wave_json(const WaveField& wave, const std::string& path) {
  write_text(path, wave_to_json_text(wave));
}

WaveField read_wave_json(const std::string& path) { return wave_from_json_text(read_text(path)); }

std::string certificate_to_json_text(const BoundCertificate& cert) {
  json j;
  j["format"] = kCertFormat;
  j["params"] = {{"g", cert.params.g}, {"omega", cert.params.omega}, {"m", cert.params.m}};
  j["L"] = cert.L;
  j["lambda"] = cert.lambda;
  j["epsilon"] = cert.epsilon;
  j["amplitude"] = cert.amplitude;
  j["theorem_bound"] = cert.theorem_bound;
  j["refined_bound"] = cert.refined_bound;
  j["Q"] = cert.Q;
  j["Qc"] = cert.Qc;
  j["Q0"] = cert.Q0;
  j["d0"] = cert.d0;
  if (cert.d_minus) j["d_minus"] = *cert.d_minus;
  if (cert.d_plus) j["d_plus"] = *cert.d_plus;
  j["inf_eta"] = cert.inf_eta;
  j["sup_eta"] = cert.sup_eta;
  j["is_stream"] = cert.is_stream;
  j["flags"] = cert.flags();

  json checks = json::array();
  for (const InequalityCheck& c : cert.checks) {
    json e;
    e["name"] = c.name;
    e["status"] = status_name(c.status);
    e["scale"] = c.scale;
    if (c.margin) e["margin"] = *c.margin;
    checks.push_back(e);
  }
  j["checks"] = checks;

  json ndm = json::object();
  for (std::size_t i = 0; i < cert.nondim_margins.size() && i < cert.checks.size(); ++i)
    if (cert.nondim_margins[i]) ndm[cert.checks[i].name] = *cert.nondim_margins[i];
  j["nondim_margins"] = ndm;

  j["stored_residuals"] = {{"interior", cert.stored_residuals.interior},
                           {"surface", cert.stored_residuals.surface}};
  j["recomputed_residuals"] = {{"interior", cert.recomputed_residuals.interior},
                               {"surface", cert.recomputed_residuals.surface}};
  j["all_pass"] = cert.all_pass;
  return j.dump(2) + "\n";
}

void write_certificate_json(const BoundCertificate& cert, const std::string& path) {
  write_text(path, certificate_to_json_text(cert));
}

std::string sweep_to_csv(const SweepTable& table) {
  std::ostringstream out;
  out << "omega,g,m,L,amplitude,theorem_bound,refined_bound,Q,Qc,Q0,"
         "d_minus,d_plus,d0,inf_eta,sup_eta,flags\n";
  for (const SweepRow& r : table.rows) {
    auto cell = [&](double v, bool present) {
      out << ',';
      if (present) out << num17(v);
    };
    out << num17(r.omega) << ',' << num17(r.g) << ',' << num17(r.m);
    cell(r.L, r.L > 0.0);
    cell(r.amplitude, r.ok);
    cell(r.theorem_bound, r.theorem_bound > 0.0);
    cell(r.refined_bound, r.refined_bound > 0.0);
    cell(r.Q, r.ok);
    cell(r.Qc, r.Qc > 0.0);
    cell(r.Q0, r.Q0 > 0.0);
    cell(r.d_minus.value_or(0.0), r.d_minus.has_value());
    cell(r.d_plus.value_or(0.0), r.d_plus.has_value());
    cell(r.d0, r.d0 > 0.0);
    cell(r.inf_eta, r.ok);
    cell(r.sup_eta, r.ok);
    out << ',' << r.flags << '\n';
  }
  return out.str();
}

std::string sweep_to_json_text(const SweepTable& table) {
  json rows = json::array();
  for (const SweepRow& r : table.rows) {
    json e;
    e["omega"] = r.omega;
    e["g"] = r.g;
    e["m"] = r.m;
    e["ok"] = r.ok;
    if (!r.ok) e["error"] = r.error;
    if (r.L > 0.0) e["L"] = r.L;
    if (r.ok) {
      e["amplitude"] = r.amplitude;
      e["Q"] = r.Q;
      e["inf_eta"] = r.inf_eta;
      e["sup_eta"] = r.sup_eta;
    }
    if (r.theorem_bound > 0.0) e["theorem_bound"] = r.theorem_bound;
    if (r.refined_bound > 0.0) e["refined_bound"] = r.refined_bound;
    if (r.Qc > 0.0) e["Qc"] = r.Qc;
    if (r.Q0 > 0.0) e["Q0"] = r.Q0;
    if (r.d0 > 0.0) e["d0"] = r.d0;
    if (r.d_minus) e["d_minus"] = *r.d_minus;
    if (r.d_plus) e["d_plus"] = *r.d_plus;
    e["flags"] = r.flags;
    e["reached_target"] = r.reached_target;
    if (!r.stop_reason.empty()) e["stop_reason"] = r.stop_reason;
    e["continuation_steps"] = r.continuation_steps;
    rows.push_back(e);
  }
  json j;
  j["format"] = kSweepFormat;
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

void write_sweep(const SweepTable& table, const std::string& path, const std::string& format) {
  if (format == "csv")
    write_text(path, sweep_to_csv(table));
  else if (format == "json")
    write_text(path, sweep_to_json_text(table));
  else
    throw std::invalid_argument("write_sweep: format must be csv or json");
}

}  // namespace wavebound
