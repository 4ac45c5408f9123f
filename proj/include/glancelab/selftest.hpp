#pragma once

#include <vector>

#include "glancelab/oracle.hpp"

namespace glancelab::selftest {

/// Every oracle comparison, in a fixed order.
std::vector<oracle::OracleReport> run_all();

bool all_passed(const std::vector<oracle::OracleReport>& reports);

}  // namespace glancelab::selftest
