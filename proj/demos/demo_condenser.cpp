// Sweep the (2,1) condenser over inner radii and print the certified
// sandwich next to the solver value.

#include <cstdio>

#include "slcap/slcap.hpp"

int main() {
    slcap::SolverOptions opts;
    opts.max_iterations = 2000;
    const auto rows = slcap::sweep_radii(2, 0.9, 10, 128, opts);
    std::printf("%6s %12s %12s %12s\n", "r", "lower", "value", "upper");
    for (const auto& row : rows) {
        std::printf("%6.2f %12.6f %12.6f %12.6f\n", row.r, row.lower, row.value, row.upper);
    }
    return 0;
}
