#pragma once

#include <iosfwd>

namespace corename {

/// Entry point of the corename tool. Returns 0 on success, 1 on usage
/// errors and 2 on data errors; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace corename
