#include <iostream>

#include "trichokinetics/acceptance.hpp"

int main() {
    const auto results = tricho::acceptance::run_all(&std::cout);
    return tricho::acceptance::all_passed(results) ? 0 : 1;
}
