#include <iostream>

#include "adhm/acceptance.hpp"

// One line per acceptance criterion; nonzero exit if any fails its checks or
// its runtime budget.
int main() {
    int failed = 0;
    for (const auto& r : adhm::run_acceptance()) {
        std::cout << r.report(true) << std::endl;
        failed += !r.passed();
    }
    return failed == 0 ? 0 : 1;
}
