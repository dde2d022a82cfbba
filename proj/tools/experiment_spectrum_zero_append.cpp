// Data sweep: for a uniform matrix B, is spec(B) with ONE appended zero the
// spectrum of some uniform matrix? Runs the general-similarity search on the
// extended diagonal and emits the residuals as CSV. No resolution claimed.

#include <cstdio>
#include <cstdlib>

#include "apport/io.hpp"
#include "apport/linalg.hpp"
#include "apport/rng.hpp"
#include "apport/search.hpp"

using namespace apport;

int main(int argc, char** argv) {
    std::uint64_t seed = 1;
    int samples = 8;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
    if (argc > 2) samples = std::atoi(argv[2]);

    std::printf("base,n,seed,sample,status,residual\n");
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        // base uniform matrices with known spectra: DFT and a random phase flat
        const std::size_t n = 2 + rng.next_below(2);
        const bool use_dft = (s % 2 == 0);
        CMatrix b(n);
        if (use_dft) {
            b = dft(n);
        } else {
            for (cd& z : b.entries()) {
                const double t = 2.0 * 3.14159265358979323846 * rng.next_double();
                z = cd(std::cos(t), std::sin(t));
            }
        }
        const std::vector<cd> spec = small_eig(b);
        CVector extended(spec.begin(), spec.end());
        extended.push_back(cd(0.0, 0.0));

        SearchOptions opt;
        opt.restarts = 8;
        opt.iters = 800;
        opt.seed = Rng::mix(seed, static_cast<std::uint64_t>(s));
        const ApportionReport rep = search_gl(diag(extended), opt);
        std::printf("%s,%zu,%llu,%d,%s,%s\n", use_dft ? "dft" : "random-flat", n + 1,
                    static_cast<unsigned long long>(seed), s, to_string(rep.status).c_str(),
                    fmt17(rep.residual).c_str());
    }
    return 0;
}
