#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bihamil {

// Exit status: 0 all checks pass, 1 a check failed, 2 parse error (arguments,
// manifest or expression), 3 precondition failure, 4 internal defect.
// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline constexpr const char* kReportSchema = "bihamil-report/1";

}  // namespace bihamil
