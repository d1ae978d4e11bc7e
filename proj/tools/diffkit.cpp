#include "diffkit/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  const diffkit::CliResult res = diffkit::run_cli(std::vector<std::string>(argv + 1, argv + argc));
  std::cout << res.out;
  return res.code;
}
