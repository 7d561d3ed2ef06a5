#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cltscope {

// Where and how tables are emitted.
struct OutputSpec {
  enum class Format { kCsv, kJson };
  Format format = Format::kCsv;
  std::optional<std::string> path;  // default: standard output
  int precision = 6;                // decimal digits, in [1, 17]
};

// Entry point behind the cltscope binary. Returns the process exit status:
// 0 on success, 2 on usage errors, 1 on computation/domain errors.
int run_cli(const std::vector<std::string>& args);

}  // namespace cltscope
