#include <iostream>

#include "boolfilter/cli.hpp"

int main(int argc, char** argv)
{
    return boolfilter::run_cli(argc, argv, std::cout, std::cerr);
}
