// Exposed-point CLT on the two-segment law, printed as a summary table.

#include <cstdio>

#include "randset/randset.hpp"

int main() {
    using namespace randset;
    const auto y = DiscreteRandomSet::create({
        {0.5, ConvexBody::hull({make_vector({0, 0}), make_vector({1, 0})})},
        {0.5, ConvexBody::hull({make_vector({0, 0}), make_vector({0, 1})})},
    });
    const Vector f = make_vector({1, 1});

    const ConvexBody ey = expectation(y);
    std::printf("E Y has %zu vertices\n", ey.size());
    const Selection sel = exposed_selection(y, f);
    std::printf("exposed point (%g, %g)\n", sel.mean[0], sel.mean[1]);

    ExperimentConfig cfg;
    cfg.master_seed = 7;
    cfg.sample_sizes = {1000};
    cfg.replications = 500;
    const ExperimentReport report = clt_exposed_experiment(y, f, cfg);
    for (const auto& v : report.verdicts) {
        std::printf("%-4s %s  %s\n", v.passed ? "ok" : "FAIL", v.name.c_str(), v.detail.c_str());
    }
    return 0;
}
