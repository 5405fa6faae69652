#include "algdyn/cli.hpp"

int main(int argc, char** argv) {
  return algdyn::cli::run(argc, argv);
}
