#include <exception>
#include <iostream>

#include "akform_cli.hpp"

int main(int argc, char** argv) {
  try {
    return akform::cli::run(argc, argv, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "akform: internal error: " << e.what() << "\n";
    return 3;
  }
}
