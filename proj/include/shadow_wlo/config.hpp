#pragma once

#include "shadow_wlo/selfcheck.hpp"
#include "shadow_wlo/statesum.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace shadow_wlo {

struct JobConfig {
  std::string group = "A1";
  int level = 0;
  int genus = 0;
  Mode mode = Mode::abstract;
  int N = 4;
  int refinement = 1;
  AbstractLink link;
  std::vector<std::string> outputs{"wlo", "shadow", "compare"};

  bool wants(const std::string& what) const;
};

// malformed config; path names the offending field, e.g. "link[0].color[1]"
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

JobConfig parse_config(const std::string& text);
JobConfig load_config(const std::string& path);
nlohmann::json config_to_json(const JobConfig& c);

struct RunOptions {
  int threads = 1;
  double tolerance = 1e-9;
};

struct JobOutcome {
  nlohmann::json report;
  bool ok = true;  // every requested comparison and check passed
};

// deterministic: no timings inside the report
JobOutcome run_job(const JobConfig& config, const RunOptions& opt = {});
nlohmann::json selfcheck_report(const std::vector<SuiteResult>& suites);

nlohmann::json complex_json(cplx z);

}  // namespace shadow_wlo
