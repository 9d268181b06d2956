#pragma once

#include <utility>
#include <vector>

#include "adhm/matrix.hpp"

namespace adhm {

struct NotSymmetricError : std::runtime_error {
    explicit NotSymmetricError(const std::string& m) : std::runtime_error(m) {}
};
struct NotCommutingError : std::runtime_error {
    explicit NotCommutingError(const std::string& m) : std::runtime_error(m) {}
};
struct SingularError : std::runtime_error {
    explicit SingularError(const std::string& m) : std::runtime_error(m) {}
};

// Univariate scalar polynomial, ascending coefficients.
struct UPoly {
    FieldKind field = FieldKind::Rational;
    std::vector<Scalar> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    void trim();
    Scalar eval(const Scalar& t) const;
    UPoly to_field(FieldKind k) const;
};

UPoly charpoly(const Mat& a);  // det(t*Id - a), monic
int minpoly_degree(const Mat& a, double tol = kDefaultTol);
Scalar poly_resultant(const UPoly& p, const UPoly& q);
// True when the charpolys of a and b have a common root (exact fields:
// resultant test; float: root clustering).
bool spectra_intersect(const Mat& a, const Mat& b, double tol = kDefaultTol);
std::vector<std::complex<double>> poly_roots(const UPoly& p);

// Smallest subspace containing seed and invariant under every operator.
Subspace krylov_closure(const Subspace& seed, const std::vector<Mat>& ops,
                        double tol = kDefaultTol);

// {X : aX = Xa} as a subspace of the n^2-dimensional matrix space
// (row-major vectorization).
Subspace commutant(const Mat& a, double tol = kDefaultTol);
bool is_nonderogatory(const Mat& a, double tol = kDefaultTol);

// Solve v*S - sigma*v = C for v ((n-k) x k). Unique when the spectra of S
// and sigma are disjoint; otherwise a particular solution or nullopt.
std::optional<Mat> sylvester_solve(const Mat& S, const Mat& sigma, const Mat& C,
                                   double tol = kDefaultTol);

// Symmetric solution Z of [S, Z] = C. For symmetric nonderogatory S the
// bracket maps the symmetric matrices onto the antisymmetric ones, so a
// solution always exists there; otherwise solvability depends on C.
std::optional<Mat> solve_bracket_symmetric(const Mat& S, const Mat& C,
                                           double tol = kDefaultTol);

// Joint eigenvalue pairs of a commuting pair, with multiplicity, computed
// in complex floating point (exact inputs are converted after an exact
// commutation check). Sorted lexicographically for determinism.
std::vector<std::pair<Scalar, Scalar>> joint_spectrum(const Mat& alpha, const Mat& beta,
                                                      double tol = kDefaultTol);

struct Congruence {
    Mat g;                      // g^{-T} G g^{-1} = diag(weights, 0)
    int rank = 0;
    bool weighted = false;      // exact path could not scale all pivots to 1
    std::vector<Scalar> weights;  // the rank leading diagonal entries
};

// Normalize a symmetric matrix by congruence to diag(1_k, 0), or to a
// weighted diagonal when the required square roots are missing from an
// exact field.
Congruence symmetric_congruence(const Mat& G, double tol = kDefaultTol);

// s with s*s^T = g, complex-float field only.
Mat symmetric_factor(const Mat& g, double tol = kDefaultTol);

// Square root within the same exact field, when one exists.
std::optional<Scalar> exact_sqrt(const Scalar& s);

}  // namespace adhm
