#include "cli.hpp"

int main(int argc, char** argv) { return cheese::tools::run_cli(argc, argv); }
