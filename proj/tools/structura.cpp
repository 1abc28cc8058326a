#include "structura/lab.hpp"

int main(int argc, char** argv)
{
    return structura::runCli(argc, argv);
}
