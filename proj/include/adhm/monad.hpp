#pragma once

#include <array>

#include "adhm/datum.hpp"

namespace adhm {

struct ZeroPointError : std::runtime_error {
    explicit ZeroPointError(const std::string& m) : std::runtime_error(m) {}
};

// The two maps of the three-term complex attached to a classical datum,
// stored as coefficient blocks of the homogeneous coordinates (x, y, z):
//   alpha(x,y,z) = (z*A + x, z*B + y, z*J)^T   ((2n+r) x n)
//   beta(x,y,z)  = (-z*B - y, z*A + x, z*I)    (n x (2n+r))
struct MonadMaps {
    int n = 0, r = 0;
    Mat alpha_x, alpha_y, alpha_z;
    Mat beta_x, beta_y, beta_z;

    FieldKind field() const { return alpha_x.field(); }
    Mat alpha_at(const Scalar& x, const Scalar& y, const Scalar& z) const;
    Mat beta_at(const Scalar& x, const Scalar& y, const Scalar& z) const;
};

struct ComplexCheck {
    bool ok = false;
    // coefficients of x^2, y^2, z^2, xy, xz, yz in beta*alpha
    std::array<Mat, 6> coeffs;
    double residual = 0.0;
    const Mat& zz() const { return coeffs[2]; }
};

struct FiberReport {
    std::array<Scalar, 3> point;
    int rank_alpha = 0;
    int rank_beta = 0;
    int fiber_dim = 0;
};

struct LiftCondition {
    std::string name;
    bool ok;
    double residual;
};

struct SymplecticLift {
    Mat G1, G2, F;
    std::vector<LiftCondition> conditions;
    // residuals of the two commuting squares F*alpha = beta^T*G1 and
    // G2*beta = alpha^T*F, expanded in the coordinate coefficients
    double square1_residual = 0.0;
    double square2_residual = 0.0;
    bool ok = false;
};

MonadMaps build_monad(const ClassicalDatum& d);

// Expands beta*alpha symbolically; the complex condition is equivalent to
// the classical ADHM equation, and the z^2 coefficient carries the defect.
ComplexCheck check_complex(const MonadMaps& m, double tol = kDefaultTol);

// Scale so the last coordinate above threshold becomes one.
std::array<Scalar, 3> normalize_point(const std::array<Scalar, 3>& p, double tol = kDefaultTol);

FiberReport fiber(const MonadMaps& m, const std::array<Scalar, 3>& p, double tol = kDefaultTol);

// Fiber reports with fiber_dim > r over the supplied candidate points.
// Completeness is relative to the candidate set; the jump locus of a
// stable datum lies in the joint spectrum of the residual blocks, so that
// set (plus any user grid) is the canonical choice.
std::vector<FiberReport> scan_singular(const MonadMaps& m,
                                       const std::vector<std::array<Scalar, 3>>& candidates,
                                       double tol = kDefaultTol);

SymplecticLift check_lift(const SymplecticDatum& d, double tol = kDefaultTol);

}  // namespace adhm
