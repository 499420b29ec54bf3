#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gmdet/props.hpp"
#include "gmdet/runner.hpp"
#include "json.hpp"

namespace {

std::vector<std::string> split_units(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Determinant of the Gauss-Manin connection versus the residue pairing"};
  app.set_version_flag("--version", std::string(gmdet::kVersion));

  std::string input = "-";
  bool json = false, parallel = false, timing = false;
  std::string mode, units = "auto", sum_bound = "m-1";
  std::optional<std::size_t> max_passes;
  std::optional<int> truncation;
  std::uint64_t seed = 1;
  std::size_t cases = 20;

  auto* props = app.add_subcommand("props", "run the randomized property suites");
  app.require_subcommand(0, 1);

  app.add_option("script", input, "session file, or - for stdin");
  app.add_flag("--json", json, "one JSON report per line");
  app.add_option("--mode", mode, "dlog coefficient lattice")->check(CLI::IsMember({"integer", "half", "rational"}));
  app.add_option("--units", units, "auto, or comma-separated unit expressions");
  app.add_option("--sum-bound", sum_bound, "Newton-sum bound for exponential instances")
      ->check(CLI::IsMember({"m-1", "m-2"}));
  app.add_option("--max-passes", max_passes, "elimination step limit per reduction");
  app.add_option("--truncation", truncation, "Laurent order for local closedness checks");
  app.add_flag("--parallel", parallel, "evaluate check statements concurrently");
  app.add_flag("--timing", timing, "include elapsed_ms in reports");
  app.add_option("--seed", seed, "seed for the property suites");
  props->add_option("--seed", seed, "random seed");
  props->add_option("--cases", cases, "cases per property");
  props->add_flag("--json", json, "one JSON result per line");

  CLI11_PARSE(app, argc, argv);

  if (props->parsed()) {
    auto results = gmdet::run_properties(seed, cases);
    bool ok = true;
    for (const auto& r : results) {
      ok = ok && r.ok();
      if (json) {
        nlohmann::ordered_json j;
        j["command"] = "props";
        j["target"] = r.name;
        j["status"] = r.ok() ? "pass" : "fail";
        j["value"] = std::to_string(r.cases - r.failures) + "/" + std::to_string(r.cases);
        if (!r.ok()) j["witness"] = r.first_failure;
        j["version"] = gmdet::kVersion;
        std::cout << j.dump() << "\n";
      } else {
        std::cout << (r.ok() ? "PASS " : "FAIL ") << r.name << " " << (r.cases - r.failures) << "/" << r.cases;
        if (!r.ok()) std::cout << "  " << r.first_failure;
        std::cout << "\n";
      }
    }
    return ok ? 0 : 1;
  }

  std::string text;
  if (input == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(input);
    if (!in) {
      std::cerr << "error: cannot open " << input << "\n";
      return 3;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  gmdet::RunOptions opts;
  opts.json = json;
  if (mode == "integer") opts.mode = gmdet::DlogMode::Integer;
  if (mode == "half") opts.mode = gmdet::DlogMode::Half;
  if (mode == "rational") opts.mode = gmdet::DlogMode::Rational;
  if (units != "auto") opts.units = split_units(units);
  opts.sum_bound = sum_bound == "m-2" ? gmdet::SumBound::MMinus2 : gmdet::SumBound::MMinus1;
  opts.max_passes = max_passes;
  opts.truncation = truncation;
  opts.parallel = parallel;
  opts.timing = timing;
  return gmdet::run_session(text, opts, std::cout, std::cerr);
}
