// Data sweep: how close does the minimized max entry of U A U^* get to the
// spectral-norm upper bound on matrices whose nuclear/n bound lies strictly
// below it? Emits CSV; draws its own conclusions nowhere.

#include <cstdio>
#include <cstdlib>

#include "apport/certify.hpp"
#include "apport/io.hpp"
#include "apport/linalg.hpp"
#include "apport/rng.hpp"
#include "apport/search.hpp"

using namespace apport;

int main(int argc, char** argv) {
    std::uint64_t seed = 1;
    int samples = 20;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
    if (argc > 2) samples = std::atoi(argv[2]);

    std::printf("n,seed,sample,lower,estimate,upper,nuclear_over_n,normal\n");
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        const std::size_t n = 2 + rng.next_below(3);
        CMatrix a(n);
        for (cd& z : a.entries()) z = rng.next_cgaussian();

        const UBounds b = u_bounds(a);
        SearchOptions opt;
        opt.restarts = 6;
        opt.iters = 400;
        opt.seed = Rng::mix(seed, static_cast<std::uint64_t>(s));
        const ApportionReport rep = search_unitary(a, opt);
        const double estimate = rep.kappa + rep.residual;  // best max-norm found

        std::printf("%zu,%llu,%d,%s,%s,%s,%s,%d\n", n,
                    static_cast<unsigned long long>(seed), s, fmt17(b.lower).c_str(),
                    fmt17(estimate).c_str(), fmt17(b.upper).c_str(),
                    b.normal_upper ? fmt17(*b.normal_upper).c_str() : "",
                    b.normal_upper.has_value() ? 1 : 0);
    }
    return 0;
}
