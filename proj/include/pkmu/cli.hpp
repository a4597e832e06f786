#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pkmu {

/// Command-line front end: list, verify, classify, canonical, deform, report.
/// `args` excludes the program name. Returns the process exit status:
/// 0 = all checks passed, 1 = a mathematical check failed, 2 = usage or parse
/// error. Output goes to `out`, usage errors to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pkmu
