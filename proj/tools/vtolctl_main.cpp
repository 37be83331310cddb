#include "vtolctl/sim.hpp"

int main(int argc, char** argv) { return vtolctl::run_cli(argc, argv); }
