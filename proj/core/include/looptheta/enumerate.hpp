#pragma once

#include "looptheta/linalg.hpp"

#include <functional>

namespace looptheta {

struct EnumerationOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All x in Z^r with (x+shift)^T G (x+shift) <= r2 (G symmetric positive
// definite), visited by the Fincke-Pohst recursion on the Cholesky factor.
// f receives the integer point and the exact quadratic value. Throws
// EnumerationOverflow past max_points.
void sphere_enumerate(const RealMat& G, const std::vector<Real>& shift, const Real& r2,
                      long max_points,
                      const std::function<void(const std::vector<long>&, const Real&)>& f);

// Cholesky diagonal of G (used for product-form tail bounds).
std::vector<Real> cholesky_diagonal(const RealMat& G);

} // namespace looptheta
