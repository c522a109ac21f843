#include "cli.hpp"

int main(int argc, char** argv) { return leapsim::run_cli(argc, argv); }
