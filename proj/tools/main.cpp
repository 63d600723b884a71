#include "mcpp/cli.hpp"

int main(int argc, char** argv) { return mcpp::run_cli(argc, argv); }
