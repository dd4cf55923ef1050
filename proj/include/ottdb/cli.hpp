#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ottdb {

/// Whole command line without the program name. Exit codes: 0 success,
/// 1 query/parse error, 2 integrity/authorization error, 3 I/O error.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace ottdb
