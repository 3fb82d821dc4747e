#include <iostream>
#include <string>
#include <vector>

#include "nlgbidi/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  std::vector<std::string> args(argv + 1, argv + argc);
  return nlgbidi::dispatch(args, std::cout, std::cerr);
}
