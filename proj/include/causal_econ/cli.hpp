#pragma once

// The causal-econ command line.
//
//   validate <file>                      diagnostics; exit 1 on errors
//   loops <file.cdg> [--json]
//   propagate <file.cdg> --shock v:up|down [--target v] [--freeze a,b] [--dot out] [--budget n] [--json]
//   multiplier --kind g|t --mpc x [--delta v] [--rounds k] [--json]
//   grade --ref <file.cdg> --answers <dir|file.ans> [--csv out] [--json]
//   stats --activity name=file.csv ... [--common-only]
//   stats --skeleton name [--workspace dir] [--all-attempts]
//   skeleton <file.cdg> [-o file.skel]
//   export <file.cdg> --format dsl|json|dot [-o out]
//   serve [--host h] [--port n] [--workspace dir]
//
// A diagram argument that is not an existing file is looked up among the
// built-in fixtures by stem, so "national_income_subset.cdg" always works.

#include <ostream>
#include <string>
#include <vector>

namespace causal_econ {

/// args excludes the program name. Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace causal_econ
