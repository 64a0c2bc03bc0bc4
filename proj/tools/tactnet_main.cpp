#include "tactnet/cli.hpp"

int main(int argc, char** argv) { return tactnet::cli_main(argc, argv); }
