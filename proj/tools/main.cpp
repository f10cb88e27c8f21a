#include <vector>

#include "mbrl/monitor/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mbrl::cli_dispatch(args);
}
