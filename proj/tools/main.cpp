#include <string>
#include <vector>

#include "artfima/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return artfima::run_cli(args);
}
