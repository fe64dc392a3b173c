#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hkz {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitInvalidInput = 3;
inline constexpr int kExitUnsupported = 4;

// args excludes the program name.
int RunCli(std::vector<std::string> const& args, std::ostream& out,
           std::ostream& err);

}  // namespace hkz
