#include "spaceform/report.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace spaceform {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Check make_check(const std::string& name, const std::string& identity, double target,
                 double observed, double tolerance) {
  Check c;
  c.name = name;
  c.identity = identity;
  c.target = target;
  c.observed = observed;
  c.tolerance = tolerance;
  c.pass = std::isfinite(observed) && std::fabs(observed - target) <= tolerance;
  return c;
}

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = schema;
  j["command"] = command;
  j["seed"] = seed;
  j["all_pass"] = all_pass();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["identity"] = c.identity;
    // doubles as fixed-format strings so serialization is byte-stable
    e["target"] = format_double(c.target);
    e["observed"] = format_double(c.observed);
    e["tolerance"] = format_double(c.tolerance);
    e["pass"] = c.pass;
    arr.push_back(e);
  }
  j["checks"] = arr;
  return j.dump(2) + "\n";
}

std::string Report::to_text() const {
  std::string out;
  for (const auto& c : checks) {
    out += c.pass ? "[pass] " : "[FAIL] ";
    out += c.name + ": " + c.identity + "  target=" + format_double(c.target) +
           " observed=" + format_double(c.observed) + " tol=" + format_double(c.tolerance) + "\n";
  }
  return out;
}

}  // namespace spaceform
