#pragma once

#include "adhm/datum.hpp"

namespace adhm {

struct NotStableError : std::runtime_error {
    explicit NotStableError(const std::string& m) : std::runtime_error(m) {}
};

// Perturbation of a datum; the G-direction is constrained symmetric, so
// the ambient chart has dimension 2n^2 + nr + n(n+1)/2.
struct TangentVector {
    Mat X_A, X_B, X_I, X_G;
};

struct TangentReport {
    int n = 0, r = 0;
    int ambient_dim = 0;
    int jac_rank = 0;
    int ker_dim = 0;
    int orbit_dim = 0;
    int moduli_tangent_dim = 0;
    int expected_dim = 0;  // rn + 2n
    bool smooth = false;
};

int tangent_ambient_dim(int n, int r);

// Flattened coordinates: [vec X_A | vec X_B | vec X_I | sym-coords X_G].
Mat flatten_tangent(const TangentVector& v);
TangentVector unflatten_tangent(const Mat& col, int n, int r, FieldKind f);

// Matrix of the linearization of the three defining equations at d. Rows:
// the two symmetry equations projected on an antisymmetric basis, then the
// full ADHM linearization.
Mat jacobian(const SymplecticDatum& d);

// Matrix of the infinitesimal gauge action x -> ([x,A],[x,B],xI,-x^T G - G x),
// with columns indexed by the n^2 matrix units.
Mat orbit_map(const SymplecticDatum& d);

// Value of the defining equations at d, in the jacobian's row coordinates.
Mat equation_residual_vector(const SymplecticDatum& d);

TangentReport tangent_report(const SymplecticDatum& d, double tol = kDefaultTol);
bool is_smooth_point(const SymplecticDatum& d, double tol = kDefaultTol);

// Relative error between jacobian * v and the finite-difference directional
// derivative of the residual map (complex-float backend).
double jacobian_fd_error(const SymplecticDatum& d, const TangentVector& v, double step);

TangentVector random_tangent(int n, int r, FieldKind f, Rng& rng);

}  // namespace adhm
