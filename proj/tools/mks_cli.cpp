#include "mks/cli.hpp"

int main(int argc, char** argv) { return mks::cli::run(argc, argv, std::cout, std::cerr); }
