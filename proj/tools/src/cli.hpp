#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracfront::cli {

enum Exit : int { kOk = 0, kValidation = 1, kNumerical = 2, kInconclusive = 3 };

// Entry point shared by main() and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracfront::cli
