#pragma once

#include <string_view>

namespace ottdb {

/// The six reference catalog queries, verbatim (1-based).
std::string_view paper_query(int number);

}  // namespace ottdb
