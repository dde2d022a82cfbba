#include "apport/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "apport/certify.hpp"
#include "apport/linalg.hpp"
#include "apport/rng.hpp"

namespace apport {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr int kSchedule[] = {2, 4, 8, 16, 32, 64};

// n * (mean (|b|/||B||_F)^p)^{1/p}: >= 1, equal to 1 exactly for uniform B.
// Ratios of squared magnitudes keep the value exactly invariant under scaling.
double power_mean_surrogate(const CMatrix& b, int p) {
    const std::size_t n = b.n();
    double total = 0.0;
    std::vector<double> q(n * n);
    for (std::size_t i = 0; i < n * n; ++i) {
        q[i] = std::norm(b.entries()[i]);
        total += q[i];
    }
    if (total <= 0.0) return 0.0;
    double mean = 0.0;
    for (double& v : q) {
        v /= total;
        double w = v;  // v^{p/2} by repeated squaring, p/2 a power of two
        for (int e = p / 2; e > 1; e /= 2) w *= w;
        mean += w;
    }
    mean /= static_cast<double>(n * n);
    return static_cast<double>(n) * std::pow(mean, 1.0 / static_cast<double>(p));
}

// (1/p)(logmeanexp(p log m) + logmeanexp(-p log m)) -> log ur as p grows
double log_ratio_surrogate(const CMatrix& b, int p) {
    const std::size_t n = b.n();
    std::vector<double> lm(n * n);
    for (std::size_t i = 0; i < n * n; ++i) {
        const double m = std::abs(b.entries()[i]);
        lm[i] = (m > 1e-300) ? std::log(m) : -700.0;
    }
    auto lse = [&](double sign) {
        double hi = -std::numeric_limits<double>::infinity();
        for (double v : lm) hi = std::max(hi, sign * static_cast<double>(p) * v);
        double s = 0.0;
        for (double v : lm) s += std::exp(sign * static_cast<double>(p) * v - hi);
        return hi + std::log(s / static_cast<double>(n * n));
    };
    return (lse(+1.0) + lse(-1.0)) / static_cast<double>(p);
}

// (I - tau S)(I + tau S)^{-1}, unitary for skew-Hermitian S
CMatrix cayley(double tau, const CMatrix& s) {
    const std::size_t n = s.n();
    CMatrix plus = identity(n), minus = identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            plus(i, j) += tau * s(i, j);
            minus(i, j) -= tau * s(i, j);
        }
    return minus * inverse(plus);
}

// skew-Hermitian basis direction index -> (k, j, type); types: 0 real
// antisymmetric pair, 1 imaginary symmetric pair, 2 imaginary diagonal
struct Direction {
    std::size_t k, j;
    int type;
};

std::vector<Direction> unitary_directions(std::size_t n) {
    std::vector<Direction> dirs;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = k + 1; j < n; ++j) {
            dirs.push_back({k, j, 0});
            dirs.push_back({k, j, 1});
        }
    for (std::size_t k = 0; k < n; ++k) dirs.push_back({k, k, 2});
    return dirs;
}

// apply the elementary Cayley rotation along `d` with parameter tau to a
// copy of B (rows and columns k, j only)
CMatrix probe_rotation(const CMatrix& b, const Direction& d, double tau) {
    const std::size_t n = b.n();
    CMatrix out = b;
    cd g00, g01, g10, g11;
    if (d.type == 2) {
        const cd phase = (cd(1.0, 0.0) - cd(0.0, tau)) / (cd(1.0, 0.0) + cd(0.0, tau));
        for (std::size_t t = 0; t < n; ++t) {
            out(d.k, t) *= phase;
            out(t, d.k) *= std::conj(phase);
        }
        out(d.k, d.k) = b(d.k, d.k);  // phase cancels on the diagonal
        return out;
    }
    const double den = 1.0 + tau * tau;
    if (d.type == 0) {
        g00 = (1.0 - tau * tau) / den;
        g01 = -2.0 * tau / den;
        g10 = 2.0 * tau / den;
        g11 = g00;
    } else {
        g00 = (1.0 - tau * tau) / den;
        g01 = cd(0.0, -2.0 * tau / den);
        g10 = cd(0.0, -2.0 * tau / den);
        g11 = g00;
    }
    for (std::size_t t = 0; t < n; ++t) {  // rows: G B
        const cd bk = b(d.k, t), bj = b(d.j, t);
        out(d.k, t) = g00 * bk + g01 * bj;
        out(d.j, t) = g10 * bk + g11 * bj;
    }
    for (std::size_t t = 0; t < n; ++t) {  // cols: (G B) G^*
        const cd bk = out(t, d.k), bj = out(t, d.j);
        out(t, d.k) = bk * std::conj(g00) + bj * std::conj(g01);
        out(t, d.j) = bk * std::conj(g10) + bj * std::conj(g11);
    }
    return out;
}

CMatrix assemble_skew(const std::vector<Direction>& dirs, const std::vector<double>& g,
                      std::size_t n) {
    CMatrix s(n);
    for (std::size_t d = 0; d < dirs.size(); ++d) {
        const auto& dir = dirs[d];
        if (dir.type == 0) {
            s(dir.k, dir.j) += g[d];
            s(dir.j, dir.k) -= g[d];
        } else if (dir.type == 1) {
            s(dir.k, dir.j) += cd(0.0, g[d]);
            s(dir.j, dir.k) += cd(0.0, g[d]);
        } else {
            s(dir.k, dir.k) += cd(0.0, g[d]);
        }
    }
    return s;
}

struct UnitaryRun {
    CMatrix best_u;
    double best_metric = std::numeric_limits<double>::infinity();
    std::int64_t iterations = 0;
};

// Minimize `objective(B, p)` over U with B = U A U^*; `metric` is the exact
// quantity reported (tracked at every accepted iterate, monotone by
// construction).
UnitaryRun minimize_over_unitaries(const CMatrix& a, const CMatrix& start, int iters,
                                   const std::function<double(const CMatrix&, int)>& objective,
                                   const std::function<double(const CMatrix&)>& metric) {
    const std::size_t n = a.n();
    const std::vector<Direction> dirs = unitary_directions(n);
    const double h = 1e-6;

    UnitaryRun run;
    CMatrix u = start;
    CMatrix b = conjugate_by(u, a);
    run.best_u = u;
    run.best_metric = metric(b);

    const int per_p = std::max(1, iters / static_cast<int>(std::size(kSchedule)));
    for (int p : kSchedule) {
        double cur = objective(b, p);
        for (int it = 0; it < per_p; ++it) {
            std::vector<double> g(dirs.size());
            double gnorm2 = 0.0;
            for (std::size_t d = 0; d < dirs.size(); ++d) {
                const double fp = objective(probe_rotation(b, dirs[d], +h), p);
                const double fm = objective(probe_rotation(b, dirs[d], -h), p);
                g[d] = (fp - fm) / (2.0 * h);
                gnorm2 += g[d] * g[d];
            }
            if (gnorm2 < 1e-28) break;
            // descent direction: the step (I - tau S)(I + tau S)^{-1} moves
            // along -2S, and the probes measure the derivative along -2T_d
            for (double& v : g) v = -v;
            const CMatrix s = assemble_skew(dirs, g, n);
            const double snorm = frobenius(s);

            double tau = 1.0 / (1.0 + snorm);
            bool accepted = false;
            while (tau >= 1e-12) {
                const CMatrix q = cayley(tau, s);
                const CMatrix bt = conjugate_by(q, b);
                const double ft = objective(bt, p);
                if (ft < cur) {
                    u = q * u;
                    b = conjugate_by(u, a);  // recompute to contain drift
                    cur = objective(b, p);
                    accepted = true;
                    break;
                }
                tau *= 0.5;
            }
            ++run.iterations;
            if (!accepted) break;
            const double m = metric(b);
            if (m < run.best_metric) {
                run.best_metric = m;
                run.best_u = u;
            }
        }
    }
    return run;
}

struct RestartOutcome {
    CMatrix transform;
    double metric = std::numeric_limits<double>::infinity();
    std::int64_t iterations = 0;
};

// deterministic parallel restarts: stream r is seeded from mix(seed, r),
// reduction keeps the smallest metric with ties to the lowest index
std::vector<RestartOutcome> run_restarts(int restarts, int jobs,
                                         const std::function<RestartOutcome(int, Rng&)>& body,
                                         std::uint64_t seed) {
    const int count = std::max(restarts, 1);
    std::vector<RestartOutcome> results(count);
    const int threads = std::max(1, std::min(jobs, count));
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t]() {
            try {
                for (int r = t; r < count; r += threads) {
                    Rng rng(Rng::mix(seed, static_cast<std::uint64_t>(r)));
                    results[r] = body(r, rng);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return results;
}

bool hermitian_psd_rank_ge2(const CMatrix& a) {
    const double scale = std::max(1.0, max_abs(a));
    if (max_abs_diff(a, adjoint(a)) > 1e-10 * scale) return false;
    const HermitianEig eig = hermitian_eig(a);
    const double lmax = eig.values.empty() ? 0.0 : eig.values.front();
    if (eig.values.back() < -1e-10 * std::max(1.0, lmax)) return false;
    std::size_t rank = 0;
    for (double v : eig.values)
        if (v > 1e-10 * lmax) ++rank;
    return rank >= 2;
}

// Theorem-level infeasibility for 2x2 inputs under general similarity:
// a real eigenvalue ratio outside {0, -1} cannot be apportioned.
std::optional<std::string> gl_2x2_infeasible(const CMatrix& a) {
    if (a.n() != 2) return std::nullopt;
    const std::vector<cd> eig = small_eig(a);
    cd big = eig[0], small = eig[1];
    if (std::abs(small) > std::abs(big)) std::swap(big, small);
    const double scale = std::max(1.0, max_abs(a));
    if (std::abs(big) <= 1e-12 * scale) return std::nullopt;  // {0,0} is realizable
    const cd mu = small / big;
    if (std::abs(mu.imag()) > 1e-12) return std::nullopt;
    if (std::abs(mu) <= 1e-12 || std::abs(mu + 1.0) <= 1e-12) return std::nullopt;
    return "2x2 real eigenvalue ratio outside {0,-1}";
}

}  // namespace

bool additive_apport_test(const CMatrix& a, const CMatrix& m) {
    if (a.n() != m.n()) throw std::invalid_argument("additive_apport_test: size mismatch");
    if (cond_estimate(m) >= 1e12) throw std::domain_error("additive_apport_test: M is singular");
    const CMatrix b = m * a * inverse(m);
    const CVector v = vec(hadamard(b, conjugate(b)));  // |b_ij|^2, real
    const std::size_t big = v.size();
    const double vnorm = norm2(v);
    if (vnorm == 0.0) return true;  // the zero matrix is uniform
    for (std::size_t k = 1; k < big; ++k) {
        cd comp(0.0, 0.0);
        for (std::size_t j = 0; j < big; ++j) {
            const double ang = -2.0 * kPi * static_cast<double>((k * j) % big) /
                               static_cast<double>(big);
            comp += v[j] * cd(std::cos(ang), std::sin(ang));
        }
        comp /= std::sqrt(static_cast<double>(big));
        if (std::abs(comp) >= 1e-9 * vnorm) return false;
    }
    return true;
}

ApportionReport search_unitary(const CMatrix& a, const SearchOptions& opt) {
    const std::size_t n = a.n();
    const double target = frobenius(a) / static_cast<double>(n);
    auto metric = [](const CMatrix& b) { return max_abs(b); };

    const auto results = run_restarts(
        opt.restarts, opt.jobs,
        [&](int r, Rng& rng) {
            const CMatrix start = (r == 0) ? identity(n) : random_unitary(n, rng);
            const UnitaryRun run =
                minimize_over_unitaries(a, start, opt.iters, power_mean_surrogate, metric);
            return RestartOutcome{run.best_u, run.best_metric, run.iterations};
        },
        opt.seed);

    const RestartOutcome* best = &results.front();
    for (const auto& r : results)
        if (r.metric < best->metric) best = &r;

    ApportionReport rep;
    rep.transform = best->transform;
    rep.result = conjugate_by(best->transform, a);
    rep.kappa = target;
    rep.residual = best->metric - target;
    rep.seed = opt.seed;
    for (const auto& r : results) rep.iterations += r.iterations;

    if (is_uniform(rep.result, opt.tol).first) {
        rep.status = ApportionStatus::uniform;
    } else if (hermitian_psd_rank_ge2(a)) {
        rep.status = ApportionStatus::infeasible_by_theorem;
        rep.note = "positive semidefinite with rank >= 2";
    } else if (n >= 2 &&
               certify_not_u_apportionable(a).kind == CertificateKind::translation_violation) {
        rep.status = ApportionStatus::infeasible_by_theorem;
        rep.note = "translation bound violated";
    } else {
        rep.status = ApportionStatus::inconclusive;
    }
    return rep;
}

namespace {

struct GlState {
    CMatrix m, minv, b;
    double penalty = 0.0;
};

bool gl_rebuild(const CMatrix& a, const CMatrix& m, GlState& st) {
    try {
        st.minv = inverse(m);
    } catch (const std::domain_error&) {
        return false;
    }
    const double cond = frobenius(m) * frobenius(st.minv);
    if (!std::isfinite(cond)) return false;
    st.m = m;
    st.b = m * a * st.minv;
    st.penalty = 1e-8 * cond * cond;
    return true;
}

CMatrix det_normalize(const CMatrix& m) {
    const cd d = det(m);
    if (d == cd(0.0, 0.0)) return m;
    const std::size_t n = m.n();
    const cd root = std::pow(d, 1.0 / static_cast<double>(n));
    CMatrix out = m;
    out *= 1.0 / root;
    return out;
}

}  // namespace

ApportionReport search_gl(const CMatrix& a, const SearchOptions& opt) {
    const std::size_t n = a.n();
    const double h = 1e-6;

    auto deviation = [](const CMatrix& b) {
        double c = 0.0;
        for (const cd& z : b.entries()) c += std::abs(z);
        c /= static_cast<double>(b.entries().size());
        double dev = 0.0;
        for (const cd& z : b.entries()) dev = std::max(dev, std::abs(std::abs(z) - c));
        return dev;
    };

    const auto results = run_restarts(
        opt.restarts, opt.jobs,
        [&](int r, Rng& rng) {
            CMatrix m = identity(n);
            if (r != 0) {
                for (;;) {
                    for (cd& z : m.entries()) z = rng.next_cgaussian();
                    if (std::abs(det(m)) > 1e-6) break;
                }
                m = det_normalize(m);
            }
            GlState st;
            if (!gl_rebuild(a, m, st)) throw std::runtime_error("search_gl: bad start");

            RestartOutcome out;
            out.transform = st.m;
            out.metric = deviation(st.b);

            const int per_p = std::max(1, opt.iters / static_cast<int>(std::size(kSchedule)));
            for (int p : kSchedule) {
                double cur = power_mean_surrogate(st.b, p) + st.penalty;
                for (int it = 0; it < per_p; ++it) {
                    // central differences along elementary multiplicative
                    // directions M <- (I + tau D) M, D in {E_kj, i E_kj}
                    CMatrix grad(n);
                    double gnorm2 = 0.0;
                    for (std::size_t di = 0; di < n; ++di)
                        for (std::size_t dj = 0; dj < n; ++dj)
                            for (int part = 0; part < 2; ++part) {
                                const cd delta = (part == 0) ? cd(h, 0.0) : cd(0.0, h);
                                double vals[2];
                                for (int sgn = 0; sgn < 2; ++sgn) {
                                    const cd t = (sgn == 0) ? delta : -delta;
                                    // (I + tE_kj)^{-1} = I - tE_kj (k != j) or scalar on diag
                                    CMatrix bt = st.b;
                                    // rows: (I+tE) B -> row di += t * row dj
                                    for (std::size_t c2 = 0; c2 < n; ++c2)
                                        bt(di, c2) += t * st.b(dj, c2);
                                    // cols: B (I+tE)^{-1}
                                    if (di != dj) {
                                        for (std::size_t r2 = 0; r2 < n; ++r2)
                                            bt(r2, dj) -= t * bt(r2, di);
                                    } else {
                                        const cd f = 1.0 / (1.0 + t);
                                        for (std::size_t r2 = 0; r2 < n; ++r2) bt(r2, di) *= f;
                                    }
                                    // penalty probe: cond of (I + tE) M
                                    CMatrix mt = st.m;
                                    for (std::size_t c2 = 0; c2 < n; ++c2)
                                        mt(di, c2) += t * st.m(dj, c2);
                                    CMatrix mit = st.minv;
                                    if (di != dj) {
                                        for (std::size_t r2 = 0; r2 < n; ++r2)
                                            mit(r2, dj) -= t * mit(r2, di);
                                    } else {
                                        const cd f = 1.0 / (1.0 + t);
                                        for (std::size_t r2 = 0; r2 < n; ++r2) mit(r2, di) *= f;
                                    }
                                    const double cond = frobenius(mt) * frobenius(mit);
                                    vals[sgn] = power_mean_surrogate(bt, p) + 1e-8 * cond * cond;
                                }
                                const double g = (vals[0] - vals[1]) / (2.0 * h);
                                grad(di, dj) += (part == 0) ? cd(g, 0.0) : cd(0.0, g);
                                gnorm2 += g * g;
                            }
                    ++out.iterations;
                    if (gnorm2 < 1e-28) break;

                    const double gnorm = std::sqrt(gnorm2);
                    double tau = 0.5 / (1.0 + gnorm);
                    bool accepted = false;
                    while (tau >= 1e-12) {
                        CMatrix step = identity(n);
                        for (std::size_t i2 = 0; i2 < n; ++i2)
                            for (std::size_t j2 = 0; j2 < n; ++j2)
                                step(i2, j2) -= tau * grad(i2, j2);
                        const CMatrix mt = det_normalize(step * st.m);
                        GlState ts;
                        if (gl_rebuild(a, mt, ts)) {
                            const double ft = power_mean_surrogate(ts.b, p) + ts.penalty;
                            if (ft < cur) {
                                st = ts;
                                cur = ft;
                                accepted = true;
                                break;
                            }
                        }
                        tau *= 0.5;
                    }
                    if (!accepted) break;
                    const double m2 = deviation(st.b);
                    if (m2 < out.metric) {
                        out.metric = m2;
                        out.transform = st.m;
                    }
                }
            }
            return out;
        },
        opt.seed);

    const RestartOutcome* best = &results.front();
    for (const auto& r : results)
        if (r.metric < best->metric) best = &r;

    ApportionReport rep;
    rep.transform = best->transform;
    rep.result = best->transform * a * inverse(best->transform);
    double c = 0.0;
    for (const cd& z : rep.result.entries()) c += std::abs(z);
    c /= static_cast<double>(rep.result.entries().size());
    rep.kappa = c;
    rep.residual = best->metric;
    rep.seed = opt.seed;
    for (const auto& r : results) rep.iterations += r.iterations;

    if (is_uniform(rep.result, opt.tol).first && rep.residual < opt.tol * (1.0 + c)) {
        rep.status = ApportionStatus::uniform;
    } else if (auto reason = gl_2x2_infeasible(a)) {
        rep.status = ApportionStatus::infeasible_by_theorem;
        rep.note = *reason;
    } else {
        rep.status = ApportionStatus::inconclusive;
    }
    return rep;
}

double verify_decomposition(const CMatrix& a, const CMatrix& m, double kappa) {
    const CMatrix b = m * a * inverse(m);
    for (const cd& z : b.entries())
        if (std::abs(z) == 0.0)
            throw std::domain_error("verify_decomposition: conjugated matrix has a zero entry");
    const CMatrix rebuilt =
        cd(kappa * kappa, 0.0) * (inverse(m) * hadamard_inverse(conjugate(b)) * m);
    return max_abs_diff(a, rebuilt);
}

std::pair<bool, std::optional<CMatrix>> realizable_real_pair(double r) {
    if (std::abs(r) <= 1e-12) {
        CMatrix w = ones(2);
        w *= 0.5;
        return {true, w};
    }
    if (std::abs(r + 1.0) <= 1e-12) {
        CMatrix w(2, {cd(1, 0), cd(1, 0), cd(1, 0), cd(-1, 0)});
        w *= 1.0 / std::sqrt(2.0);
        return {true, w};
    }
    return {false, std::nullopt};
}

bool constant_spectrum_check(cd lambda) { return std::abs(lambda) <= 1e-12; }

CMatrix similarity_2x2(cd c, cd x, cd y, cd z) {
    if (x == cd(0.0, 0.0)) throw std::domain_error("similarity_2x2: x must be nonzero");
    const cd one(1.0, 0.0);
    CMatrix b(2);
    b(0, 0) = one + (one - c) * y * z;
    b(0, 1) = -(one - c) * x * y;
    b(1, 0) = (one - c) * (one + y * z) * z / x;
    b(1, 1) = c - (one - c) * y * z;
    return b;
}

ApportionReport example_family(double a, double theta) {
    if (a == 0.0) throw std::domain_error("example_family: a must be nonzero");
    if (!(theta > 0.0 && theta < 2.0 * kPi))
        throw std::domain_error("example_family: theta must be in (0, 2*pi)");
    CMatrix m(2);
    m(0, 0) = a;
    m(0, 1) = 1.0 / a;
    m(1, 0) = a;
    m(1, 1) = cd(std::cos(theta), std::sin(theta)) / a;
    const CMatrix target = diag({cd(2.0, 0.0), cd(0.0, 0.0)});

    ApportionReport rep;
    rep.transform = m;
    rep.result = m * target * inverse(m);
    const auto [flag, c] = is_uniform(rep.result, 1e-9);
    rep.kappa = c;
    double dev = 0.0;
    for (const cd& z : rep.result.entries()) dev = std::max(dev, std::abs(std::abs(z) - c));
    rep.residual = dev;
    rep.status = flag ? ApportionStatus::uniform : ApportionStatus::inconclusive;
    return rep;
}

CMatrix spectra_zero_pad(const CMatrix& b, std::size_t r) {
    if (r < 1) throw std::invalid_argument("spectra_zero_pad: r must be >= 1");
    if (!is_uniform(b, 1e-9).first) throw std::domain_error("spectra_zero_pad: input not uniform");
    const std::size_t n = b.n();
    const CMatrix u = kron(dft(r), identity(n));
    return conjugate_by(u, kron(unit_matrix(r, 0, 0), b));
}

CMatrix kron_uniform(const CMatrix& b1, const CMatrix& b2) {
    if (!is_uniform(b1, 1e-9).first || !is_uniform(b2, 1e-9).first)
        throw std::domain_error("kron_uniform: inputs must be uniform");
    return kron(b1, b2);
}

double uar_estimate(const CMatrix& a, const SearchOptions& opt) {
    if (max_abs(a) == 0.0) throw std::domain_error("uar_estimate: zero matrix");
    const std::size_t n = a.n();

    auto metric = [](const CMatrix& b) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const cd& z : b.entries()) {
            const double m = std::abs(z);
            lo = std::min(lo, m);
            hi = std::max(hi, m);
        }
        if (lo == 0.0) return std::numeric_limits<double>::infinity();
        return hi / lo;
    };

    const auto results = run_restarts(
        opt.restarts, opt.jobs,
        [&](int r, Rng& rng) {
            const CMatrix start = (r == 0) ? identity(n) : random_unitary(n, rng);
            const UnitaryRun run =
                minimize_over_unitaries(a, start, opt.iters, log_ratio_surrogate, metric);
            return RestartOutcome{run.best_u, run.best_metric, run.iterations};
        },
        opt.seed);

    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : results) best = std::min(best, r.metric);
    return best;
}

}  // namespace apport
