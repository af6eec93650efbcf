#include "abc/cli.hpp"

int main(int argc, char** argv) { return abc::run(argc, argv); }
