#include "commands.hpp"

int main(int argc, char** argv) { return anonsat::cli::run(argc, argv); }
