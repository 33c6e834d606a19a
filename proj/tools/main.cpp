#include "dchain/cli.hpp"

int main(int argc, char** argv) { return dchain::run_cli(argc, argv); }
