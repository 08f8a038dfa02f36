#include "bicm/cli.hpp"

int main(int argc, char** argv) { return bicm::run_cli(argc, argv); }
