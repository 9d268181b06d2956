#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adhm/linalg.hpp"
#include "adhm/matrix.hpp"
#include "adhm/rng.hpp"

namespace adhm {

struct SingularGaugeError : std::runtime_error {
    explicit SingularGaugeError(const std::string& m) : std::runtime_error(m) {}
};
struct GenerationError : std::runtime_error {
    explicit GenerationError(const std::string& m) : std::runtime_error(m) {}
};
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& m) : std::runtime_error(m) {}
};

// Symplectic structure on the framing space W. The canonical constructor
// gives the Darboux form [[0, 1],[ -1, 0 ]] in half-blocks, for which
// -Omega^{-1} = Omega.
struct SymplecticForm {
    int r = 0;
    Mat matrix;
    Mat inv;

    static SymplecticForm standard(int r, FieldKind kind);
    static SymplecticForm explicit_form(const Mat& omega, double tol = kDefaultTol);
    SymplecticForm to_field(FieldKind k) const;
};

struct SymplecticDatum {
    int n = 0, r = 0;
    Mat A, B, I, G;
    SymplecticForm omega;

    FieldKind field() const { return A.field(); }
    SymplecticDatum to_field(FieldKind k) const;
};

struct ClassicalDatum {
    int n = 0, r = 0;
    Mat A, B, I, J;

    FieldKind field() const { return A.field(); }
};

struct GaugeElement {
    Mat g;
};

struct EquationResidual {
    std::string name;
    double residual;  // max-abs of the residual matrix
    bool ok;
};

struct ValidationReport {
    bool ok = false;
    std::vector<EquationResidual> equations;
    std::vector<std::string> violated() const {
        std::vector<std::string> v;
        for (const auto& e : equations)
            if (!e.ok) v.push_back(e.name);
        return v;
    }
};

// The four defining conditions: G symmetric, GA-symmetry, GB-symmetry, and
// the ADHM equation [A,B] - I Omega^{-1} I^T G = 0 (convention fixed once
// and used everywhere; every other formula in the library is derived from
// it and machine-checked).
ValidationReport validate(const SymplecticDatum& d, double tol = kDefaultTol);
SymplecticDatum make_datum(int n, int r, const Mat& A, const Mat& B, const Mat& I, const Mat& G,
                           const SymplecticForm& omega, double tol = kDefaultTol);
// Shape-checked but not equation-checked; for reports and negative tests.
SymplecticDatum assemble_unchecked(int n, int r, const Mat& A, const Mat& B, const Mat& I,
                                   const Mat& G, const SymplecticForm& omega);

bool classical_equation_holds(const ClassicalDatum& d, double tol = kDefaultTol);
Mat classical_defect(const ClassicalDatum& d);  // [A,B] + I J

// J = -Omega^{-1} I^T G
ClassicalDatum iota(const SymplecticDatum& d);

bool is_stable(const Mat& A, const Mat& B, const Mat& I, double tol = kDefaultTol);
bool is_stable(const SymplecticDatum& d, double tol = kDefaultTol);
bool is_stable(const ClassicalDatum& d, double tol = kDefaultTol);
// No nonzero A,B-invariant subspace inside ker J; checked on the dualized
// datum (A^T, B^T, J^T, I^T).
bool is_costable(const ClassicalDatum& d, double tol = kDefaultTol);

SymplecticDatum act(const GaugeElement& g, const SymplecticDatum& d, double tol = kDefaultTol);
ClassicalDatum act(const GaugeElement& g, const ClassicalDatum& d, double tol = kDefaultTol);

// Gauge sending d1 to d2, when one exists. On stable data the action is
// free, so the witness is unique.
std::optional<GaugeElement> orbit_equivalent(const SymplecticDatum& d1, const SymplecticDatum& d2,
                                             double tol = kDefaultTol);

// A valid stable datum over the rationals with G = diag(1_k, 0) in the
// block shape A = [[A0,0],[a,alpha]], B = [[B0,0],[0,beta]], I = [I0; X]:
// A0, B0 symmetric with A0 nonderogatory, (alpha, beta) commuting
// symmetric polynomials in one nonderogatory matrix whose spectrum avoids
// B0, and the mixed row solved through the Sylvester operator.
SymplecticDatum random_datum(int r, int n, int k, Rng& rng);

// Symmetric matrix with prescribed distinct rational eigenvalues, produced
// by conjugating a diagonal with a Cayley-transform orthogonal matrix.
Mat random_symmetric_nonderogatory(int n, Rng& rng);

Mat random_invertible(int n, FieldKind kind, Rng& rng);

int rank_G(const SymplecticDatum& d, double tol = kDefaultTol);

}  // namespace adhm
