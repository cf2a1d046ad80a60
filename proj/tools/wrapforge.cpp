#include "wrapforge/batch.hpp"

#include <iostream>

int main(int argc, char **argv) { return wrapforge::run(argc, argv, std::cout, std::cerr); }
