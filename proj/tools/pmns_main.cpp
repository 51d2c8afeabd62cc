#include "pmns/cli.hpp"

int main(int argc, char** argv) { return pmns::run_cli(argc, argv); }
