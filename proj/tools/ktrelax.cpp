// Command-line driver for the advection, non-convex and Lax benchmarks.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 numerical failure.

#include <exception>
#include <iostream>

#include "ktrelax/cli.hpp"

int main(int argc, char** argv) {
  using namespace ktrelax;
  cli::RunConfig config;
  try {
    config = cli::parse_args(argc, argv);
  } catch (const cli::HelpRequested& help) {
    std::cout << help.what();
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n"
              << "run 'ktrelax --help' for the list of flags\n";
    return 1;
  }

  try {
    for (const auto& path : cli::run(config, std::cout)) {
      std::cout << "wrote " << path << '\n';
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
