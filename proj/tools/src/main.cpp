#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
  return laplace_limits::cli::run(argc, argv, std::cout, std::cerr);
}
