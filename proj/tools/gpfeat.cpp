#include <iostream>

#include "gpfeat/cli/app.hpp"

int main(int argc, char** argv)
{
    return gpfeat::run_cli(argc, argv, std::cout, std::cerr);
}
