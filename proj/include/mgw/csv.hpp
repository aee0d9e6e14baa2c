// Minimal RFC-4180 CSV writing: comma separator, CRLF-free ('\n') rows,
// fields quoted only when they contain a comma, quote or newline.
#pragma once

#include <string>
#include <vector>

namespace mgw {

std::string csv_escape(const std::string& field);
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace mgw
