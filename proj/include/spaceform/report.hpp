#pragma once

#include <string>
#include <vector>

namespace spaceform {

/// One verification record.  `identity` names the mathematical fact being
/// certified; pass means |observed - target| <= tolerance.
struct Check {
  std::string name;
  std::string identity;
  double target = 0;
  double observed = 0;
  double tolerance = 0;
  bool pass = false;
};

Check make_check(const std::string& name, const std::string& identity, double target,
                 double observed, double tolerance);

struct Report {
  int schema = 1;
  std::string command;
  unsigned long long seed = 0;
  std::vector<Check> checks;

  bool all_pass() const;
  void append(const Check& c) { checks.push_back(c); }
  void append(const std::vector<Check>& cs) { checks.insert(checks.end(), cs.begin(), cs.end()); }

  /// Deterministic serialization (stable key order, %.17g doubles, no
  /// timestamps): identical runs produce identical bytes.
  std::string to_json() const;

  /// One line per check, for terminal output.
  std::string to_text() const;
};

/// %.17g formatting used everywhere a double is printed.
std::string format_double(double x);

}  // namespace spaceform
