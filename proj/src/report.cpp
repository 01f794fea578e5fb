#include "holoform/report.hpp"

#include <chrono>
#include <sstream>

namespace holoform {

void Report::add(const std::string& name, double residual, double tolerance, bool pass) {
  checks.push_back({name, residual, tolerance, pass});
}

void Report::add_residual(const std::string& name, double residual, double tolerance) {
  add(name, residual, tolerance, residual <= tolerance);
}

void Report::add_floor(const std::string& name, double value, double floor) {
  add(name, value, floor, value > floor);
}

bool Report::pass() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::ordered_json Report::to_json(bool with_timestamp) const {
  nlohmann::ordered_json j;
  j["version"] = "1";
  if (with_timestamp) {
    const auto now = std::chrono::system_clock::now();
    j["generated_at_unix_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count();
  }
  j["command"] = command;
  j["scenario"] = scenario;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CheckResult& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["residual"] = c.residual;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    arr.push_back(e);
  }
  j["checks"] = arr;
  j["pass"] = pass();
  return j;
}

std::string Report::human_readable() const {
  std::ostringstream os;
  os << command << "\n";
  for (const CheckResult& c : checks)
    os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << "  residual=" << c.residual
       << " tolerance=" << c.tolerance << "\n";
  os << (pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace holoform
