#include "cli.hpp"

#include "engel/errors.hpp"
#include "engel/expmap.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <sstream>

namespace engel::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void put(std::string& s, double v) {
  if (v == 0.0) v = 0.0;  // no "-0" in output
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  s += buf;
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

nlohmann::json num_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

template <class T>
nlohmann::json opt(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::vector<TraceRow> trace_rows(const RunConfig& config) {
  if (config.samples < 2) throw DomainError("samples must be at least 2");
  if (!(config.t_end > 0.0)) throw DomainError("t-end must be positive");
  std::vector<TraceRow> rows;
  rows.reserve(config.samples);
  const double dt = config.t_end / (config.samples - 1);
  auto time_at = [&](int i) { return i == config.samples - 1 ? config.t_end : i * dt; };

  if (config.causal == Family::Lightlike) {
    for (int i = 0; i < config.samples; ++i) {
      const double t = time_at(i);
      rows.push_back({t, exp_lightlike(t, config.branch), kNaN, kNaN, kNaN, kNaN});
    }
    return rows;
  }

  const Covector lambda = config.covector();
  const Stratum s = classify(lambda);
  if (s == Stratum::UNRESOLVED_BOUNDARY) throw DomainError("covector lies on a stratum boundary");
  const double supr = t_supr(lambda);
  if (!(config.t_end < supr)) {
    throw DomainError("t-end must be below t_supr = " + std::to_string(supr));
  }
  for (int i = 0; i < config.samples; ++i) {
    const double t = time_at(i);
    const Covector l = t == 0.0 ? lambda : vertical_flow(lambda, t);
    rows.push_back({t, exp_map(lambda, t), l.theta, l.c, hamiltonian_H({}, l.costate()), energy(l)});
  }
  return rows;
}

std::string format_csv(const std::vector<TraceRow>& rows) {
  std::string s = kTraceHeader;
  s += '\n';
  for (const TraceRow& r : rows) {
    for (double v : {r.t, r.q.x1, r.q.x2, r.q.y, r.q.z, r.theta, r.c, r.H}) {
      put(s, v);
      s += ',';
    }
    put(s, r.E);
    s += '\n';
  }
  return s;
}

std::string format_json(const std::vector<TraceRow>& rows) {
  nlohmann::json j;
  j["columns"] = {"t", "x1", "x2", "y", "z", "theta", "c", "H", "E"};
  nlohmann::json data = nlohmann::json::array();
  for (const TraceRow& r : rows) {
    nlohmann::json row = nlohmann::json::array();
    for (double v : {r.t, r.q.x1, r.q.x2, r.q.y, r.q.z, r.theta, r.c, r.H, r.E}) row.push_back(num_or_null(v));
    data.push_back(std::move(row));
  }
  j["rows"] = std::move(data);
  return j.dump() + "\n";
}

std::vector<TraceRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) throw Error("parse_csv: missing header");
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double v[9];
    const char* p = line.c_str();
    for (int k = 0; k < 9; ++k) {
      char* end = nullptr;
      v[k] = std::strtod(p, &end);
      if (end == p) throw Error("parse_csv: bad field in row " + std::to_string(rows.size() + 1));
      p = end;
      if (k < 8) {
        if (*p != ',') throw Error("parse_csv: expected 9 fields");
        ++p;
      }
    }
    if (*p != '\0') throw Error("parse_csv: trailing characters");
    rows.push_back({v[0], {v[1], v[2], v[3], v[4]}, v[5], v[6], v[7], v[8]});
  }
  return rows;
}

bool rows_equal(const std::vector<TraceRow>& a, const std::vector<TraceRow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const TraceRow &r = a[i], &s = b[i];
    if (!(same(r.t, s.t) && same(r.q.x1, s.q.x1) && same(r.q.x2, s.q.x2) && same(r.q.y, s.q.y) &&
          same(r.q.z, s.q.z) && same(r.theta, s.theta) && same(r.c, s.c) && same(r.H, s.H) && same(r.E, s.E))) {
      return false;
    }
  }
  return true;
}

std::string classify_json(const Covector& lambda) {
  const Stratum s = classify(lambda);
  nlohmann::json j;
  j["stratum"] = to_string(s);
  j["energy"] = energy(lambda);
  if (s != Stratum::UNRESOLVED_BOUNDARY) j["t_supr"] = num_or_null(t_supr(lambda));
  if (is_rectifiable(s)) {
    const RectifiedCoords rc = rectify(lambda);
    j["k2"] = rc.k2;
    j["ae"] = rc.ae;
    j["psi0"] = rc.psi0;
    j["phi0"] = rc.phi0;
  }
  return j.dump() + "\n";
}

std::string maxwell_json(const MaxwellReport& rep) {
  nlohmann::json j;
  j["stratum"] = to_string(rep.stratum);
  j["f_name"] = rep.f_name;
  j["grid_min"] = rep.grid_min;
  j["first_root"] = opt(rep.first_root);
  j["root_bracket"] = rep.root_bracket;
  j["t_max1"] = opt(rep.t_max1);
  j["t_max2"] = opt(rep.t_max2);
  j["max1_empty"] = opt(rep.max1_empty);
  j["max2_empty"] = opt(rep.max2_empty);
  j["cut_bound"] = num_or_null(rep.cut_bound);
  j["no_bound"] = rep.no_bound;
  return j.dump() + "\n";
}

}  // namespace engel::cli
