#include <iostream>
#include <string>
#include <vector>

#include "powpres/cli.h"

int main(int argc, char** argv)
{
  std::vector<std::string> args(argv, argv + argc);
  return powpres::runCli(args, std::cout, std::cerr);
}
