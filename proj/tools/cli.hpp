#pragma once

#include <iostream>

namespace leapsim {

/// Full command-line driver. Returns the process exit status:
/// 0 on success, 1 on simulation failure, 2 on usage or input errors.
int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
            std::ostream& err = std::cerr);

}  // namespace leapsim
