#include <iostream>
#include <string>
#include <vector>

#include "frontlab/acceptance.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> ids;
    for (int k = 1; k < argc; ++k) ids.push_back(argv[k]);
    int failures = frontlab::run_acceptance(ids, std::cout);
    if (failures) std::cout << failures << " criterion(s) failed\n";
    return failures == 0 ? 0 : 1;
}
