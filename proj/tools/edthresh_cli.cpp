#include "edthresh/harness/cli.hpp"

int main(int argc, char** argv) { return edthresh::run_cli(argc, argv); }
