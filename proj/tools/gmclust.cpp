#include <iostream>

#include "gmclust/cli.hpp"

int main(int argc, char** argv)
{
    return gmclust::cli_main(argc, argv, std::cout, std::cerr);
}
