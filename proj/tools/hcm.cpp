#include "hcm/cli.hpp"

int main(int argc, char** argv) { return hcm::run_cli(argc, argv); }
