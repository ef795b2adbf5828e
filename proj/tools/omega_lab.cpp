#include "omegalab/cli.hpp"

int main(int argc, char** argv) { return omegalab::cli_main(argc, argv); }
