#pragma once

#include <string>
#include <vector>

#include "streamveil/error.hpp"
#include "streamveil/pipeline.hpp"

namespace streamveil {

/// Thrown for --help as well as bad usage; what() is the full text to print
/// and exit_code() the process status (0 for help).
class UsageError : public Error {
 public:
  UsageError(const std::string& text, int exit_code)
      : Error(text), exit_code_(exit_code) {}

  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

/// Parses argv (without the program name) into a pipeline config.
PipelineConfig parse_args(const std::vector<std::string>& args);

}  // namespace streamveil
