#include "commands.hpp"

int main(int argc, char** argv) { return sepnmf::cli::run(argc, argv); }
