#include <iostream>

#include "avgorder/cli.hpp"

int main(int argc, char** argv)
{
    return avgorder::run_cli(argc, argv, std::cout, std::cerr);
}
