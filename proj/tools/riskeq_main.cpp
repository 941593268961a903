#include "riskeq/cli.hpp"

int main(int argc, char** argv) { return riskeq::run_cli(argc, argv); }
