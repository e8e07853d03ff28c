// Intersects the circle u^2 + v^2 = 1/2 with the line u = v inside the unit
// square, once per basis.

#include <cstdio>

#include "kts/kts.hpp"

int main()
{
    using namespace kts;
    // coefficient (i, j) multiplies u^i v^j
    auto f = BivariateSystem::zero(Basis::power, 2, 2);
    f(0, 0) = {-0.5, 0.0};
    f(2, 0) = {1.0, 0.0};
    f(0, 2) = {1.0, 0.0};
    f(1, 0) = {0.0, 1.0};
    f(0, 1) = {0.0, -1.0};

    for (Basis b : all_bases) {
        const auto g = convert(f, b, ConversionFrame::shared_variable);
        const auto report = kts_solve(g);
        std::printf("%-9s zeros=%zu patches=%ld smallest width=%g\n", std::string(to_string(b)).c_str(),
                    report.zeros.size(), report.patches_examined, report.smallest_width);
        for (const auto& z : report.zeros) {
            std::printf("          (%.15f, %.15f) rho*=%.4g\n", z.location.x, z.location.y, z.rho_star);
        }
    }
}
