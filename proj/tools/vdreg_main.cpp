#include "vdreg/cli.hpp"

int main(int argc, char** argv) { return vdreg::cli::run(argc, argv); }
