#pragma once

#include "apport/cmatrix.hpp"
#include "apport/linalg.hpp"
#include "apport/rng.hpp"

namespace testutil {

using apport::cd;
using apport::CMatrix;
using apport::CVector;

inline CMatrix random_matrix(std::size_t n, apport::Rng& rng) {
    CMatrix a(n);
    for (cd& z : a.entries()) z = rng.next_cgaussian();
    return a;
}

inline CMatrix random_hermitian(std::size_t n, apport::Rng& rng) {
    const CMatrix a = random_matrix(n, rng);
    return cd(0.5, 0.0) * (a + apport::adjoint(a));
}

inline CVector random_vector(std::size_t n, apport::Rng& rng) {
    CVector v(n);
    for (cd& z : v) z = rng.next_cgaussian();
    return v;
}

inline CVector random_unit_vector(std::size_t n, apport::Rng& rng) {
    CVector v = random_vector(n, rng);
    const double r = apport::norm2(v);
    return apport::scale(1.0 / r, std::move(v));
}

/// x y^* for random x (unit) and y
inline CMatrix random_rank_one(std::size_t n, apport::Rng& rng) {
    return apport::outer(random_unit_vector(n, rng), random_vector(n, rng));
}

inline double unitarity_defect(const CMatrix& u) {
    return apport::max_abs_diff(apport::adjoint(u) * u, apport::identity(u.n()));
}

inline CMatrix h2() {
    return CMatrix(2, {cd(1, 0), cd(1, 0), cd(1, 0), cd(-1, 0)});
}

}  // namespace testutil
