#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmdet/session.hpp"
#include "gmdet/verify.hpp"

namespace gmdet {

inline constexpr const char* kVersion = "gmdet 0.1.0";

enum class Outcome { Pass, Fail, Inconclusive, Error };

struct Report {
  std::string command;
  std::string target;
  std::string status;
  Outcome outcome = Outcome::Pass;
  std::optional<std::string> value;
  std::optional<std::string> residual;
  std::vector<std::pair<std::string, std::string>> dlog_decomposition;
  std::optional<std::string> witness;
  std::optional<int> chi;
  std::optional<std::size_t> dim_h1;
  std::optional<long> elapsed_ms;
  std::optional<std::string> note;
  std::vector<std::pair<std::string, std::string>> details;
};

struct RunOptions {
  bool json = false;
  std::optional<DlogMode> mode;
  // Unit expressions in the session's parameters; automatic basis when absent.
  std::optional<std::vector<std::string>> units;
  SumBound sum_bound = SumBound::MMinus1;
  std::optional<std::size_t> max_passes;
  std::optional<int> truncation;
  bool parallel = false;
  bool timing = false;
};

struct RunResult {
  std::vector<Report> reports;
  int exit_code = 0;
};

// 0 all pass, 1 some Distinct/fail, 2 some Inconclusive, 3 input or precondition error.
int exit_code(const std::vector<Report>& reports);

RunResult run(const session::Script& script, const RunOptions& opts = {});

std::string render_text(const Report& r);
std::string render_json(const Report& r);

// Parses, runs and prints; returns the exit code.
int run_session(const std::string& text, const RunOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace gmdet
