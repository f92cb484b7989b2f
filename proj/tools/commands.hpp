#pragma once

#include <string>

namespace sepnmf::cli {

// Exit codes shared with scripts; keep in sync with README.
enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kArgumentError = 3,
  kNumericalError = 4,
  kIoError = 5,
};

int run(int argc, char** argv);

}  // namespace sepnmf::cli
