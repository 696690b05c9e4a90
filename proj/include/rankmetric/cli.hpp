#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace rankmetric::cli {

enum class Format { Json, Csv, Table };

struct RunConfig {
    std::string command;
    int q = 0;
    int e = 0;
    int n = 0;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;  // 0: RANKMETRIC_BUDGET or the library default
    int workers = 1;
    Format format = Format::Json;
    std::string out;
};

/// Entry point of the rankmetric tool. Returns the process exit code: 0 on
/// success, 1 on a certified fixture mismatch, 2 on errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rankmetric::cli
