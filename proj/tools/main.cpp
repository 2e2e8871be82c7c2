#include "courtcast/cli.hpp"

int main(int argc, char** argv) { return courtcast::cli::run(argc, argv); }
