#include "cli.hpp"

int main(int argc, char** argv) { return smx::cli_main(argc, argv); }
