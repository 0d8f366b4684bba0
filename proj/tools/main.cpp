#include "cli_args.hpp"
#include "cli_run.hpp"

#include <iostream>

int main(int argc, char** argv) {
  const auto parsed =
      nwidth::cli::parse_args(argc, argv, std::cout, std::cerr);
  if (!parsed.config) return parsed.exit_code;
  return nwidth::cli::run(*parsed.config, std::cout, std::cerr);
}
