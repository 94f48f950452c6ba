// Rearrange a small sampled grid and evaluate its Lorentz norms.

#include <cstdio>

#include "slcap/slcap.hpp"

int main() {
    slcap::SampledGrid g;
    g.dimension = 2;
    g.h = 0.5;
    g.shape = {3, 3};
    g.values = {0.0, 1.0, 0.0, 1.0, 4.0, 1.0, 0.0, 1.0, 0.0};

    const auto f = slcap::rearrange_sampled(g);
    std::printf("rearranged pieces:\n");
    for (const auto& p : f.pieces()) {
        std::printf("  value %.3f on measure %.3f\n", p.value, p.measure);
    }

    for (auto [p, q] : {std::pair{2.0, 1.0}, {2.0, 2.0}, {3.0, 1.5}}) {
        const slcap::LorentzExponents e(p, q);
        const auto quasi = slcap::lorentz_quasinorm(f, e);
        const auto norm = slcap::lorentz_norm(f, e);
        std::printf("(p,q) = (%.1f, %.1f): quasinorm %.6f, norm %.6f, ratio %.4f\n", p, q,
                    quasi.value, norm.value, norm.value / quasi.value);
    }
    return 0;
}
