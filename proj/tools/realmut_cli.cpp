#include "realmut/cli.hpp"

int main(int argc, char** argv) { return realmut::cli_main(argc, argv); }
