#include <string>
#include <vector>

#include "cltscope/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cltscope::run_cli(args);
}
