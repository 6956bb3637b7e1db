#pragma once

#include <iosfwd>

namespace neuronav::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kValidation = 2;
inline constexpr int kCheckFailed = 3;
inline constexpr int kIo = 4;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace neuronav::cli
