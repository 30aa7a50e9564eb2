#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "toristab/geometry.hpp"

namespace toristab {

/// Loads a polytope from a file path or a "catalog:NAME" reference.
Polytope load_polytope(const std::string& source);

struct AnalyzeOptions {
  std::string x0;       // "a,b,..." override of the base point, empty = optimize
  bool json = false;
  int oracle_mmax = 0;  // 0 = no Ehrhart cross-check
};

struct TestConfigOptions {
  std::string fn_path;     // convex PL function file
  std::string level_text;  // rational L
  bool json = false;
  int oracle_mmax = 0;     // 0 = no weight-sum oracle
};

struct SearchOptions {
  int grid_depth = 4;
  int max_slope = 2;
  bool assume_v_zero = false;
  bool json = false;
};

/// Subcommand bodies. Each returns the process exit code for reported
/// outcomes and throws (ParseError, ValidationError, UsageError, Error)
/// for failures; run_cli maps exceptions to exit codes.
int cmd_validate(const std::string& source, std::ostream& out);
int cmd_analyze(const std::string& source, const AnalyzeOptions& options,
                std::ostream& out);
int cmd_test_config(const std::string& source, const TestConfigOptions& options,
                    std::ostream& out);
int cmd_search_destab(const std::string& source, const SearchOptions& options,
                      std::ostream& out);
int cmd_catalog(bool json, std::ostream& out);

/// Argument parsing and dispatch. args excludes the program name.
/// Exit codes: 0 success (including inconclusive or negative analyses),
/// 1 parse/validation/runtime failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace toristab
