#ifndef HOLOFORM_REPORT_HPP
#define HOLOFORM_REPORT_HPP

#include <string>
#include <vector>

#include "vendor_json_fwd.hpp"

namespace holoform {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Machine-readable run report; serialization is deterministic apart from
/// the timestamp field.
struct Report {
  std::string command;
  nlohmann::ordered_json scenario;
  std::vector<CheckResult> checks;

  void add(const std::string& name, double residual, double tolerance, bool pass);
  /// residual <= tolerance
  void add_residual(const std::string& name, double residual, double tolerance);
  /// value strictly above a floor (nondegeneracy style)
  void add_floor(const std::string& name, double value, double floor);

  bool pass() const;
  nlohmann::ordered_json to_json(bool with_timestamp = true) const;
  std::string human_readable() const;
};

}  // namespace holoform

#endif
