#include <iostream>

#include "homeoqm_cli/cli.h"

int main(int argc, char** argv) {
  return homeoqm::cli::RunCli(argc, argv, std::cout, std::cerr);
}
