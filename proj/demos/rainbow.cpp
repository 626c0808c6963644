// Rainbow triangles: extremal entropy, a witness and its container coverage.
#include <cmath>
#include <cstdio>

#include "mcc/containers.hpp"
#include "mcc/registry.hpp"

int main() {
    const auto& P = mcc::builtin("rainbow-k3");
    for (int n = 3; n <= 5; ++n) {
        auto r = mcc::extremal_entropy(P, n);
        double closed = std::log(2.0) / std::log(3.0) * n * (n - 1) / 2;
        std::printf("n=%d ex=%.9f closed=%.9f nodes=%llu\n", n, r.value, closed, static_cast<unsigned long long>(r.nodes));
        auto c = r.witness.palettes.front();
        std::printf("  witness palette on every pair: {");
        for (int col : mcc::palette_colours(c)) std::printf(" %d", col);
        std::printf(" }\n");
    }
    mcc::ContainerPipelineOptions o;
    o.no_sparsify = true;
    o.coverage = mcc::coverage_mode::exact;
    auto rep = mcc::run_container_pipeline(P, 5, o).report;
    std::printf("containers n=5: %zu templates, coverage %llu/%llu, max entropy %.4f\n", rep.family_size,
                static_cast<unsigned long long>(rep.covered), static_cast<unsigned long long>(rep.checked), rep.max_entropy);
}
