#include <vector>

#include "kplume/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kplume::run_cli(args);
}
