#include "ginstat/cli.hpp"

int main(int argc, char** argv) { return ginstat::cli_main(argc, argv); }
