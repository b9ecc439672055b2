#pragma once

#include <iosfwd>

namespace dfsslab::cli {

/// Exit codes: 0 success, 1 argument error, 2 numerical or resource failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dfsslab::cli
