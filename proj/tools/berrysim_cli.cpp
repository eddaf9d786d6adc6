#include <string>
#include <vector>

#include "berrysim/cli.hpp"

int main(int argc, char** argv) {
  return berrysim::cli::main(std::vector<std::string>(argv, argv + argc));
}
