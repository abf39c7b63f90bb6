#include <iostream>
#include <string>
#include <vector>

#include "attackobs/cli.hh"

int main(int argc, char** argv)
{
    const std::vector<std::string> args(argv + 1, argv + argc);
    return attackobs::run_cli(args, std::cout, std::cerr);
}
