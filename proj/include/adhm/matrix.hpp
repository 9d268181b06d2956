#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "adhm/scalar.hpp"

namespace adhm {

struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& m) : std::runtime_error(m) {}
};

// Dense matrix over a fixed field, row-major. Dimensions are fixed at
// construction; 0-by-k shapes are legal and arise for charge-0 data.
class Mat {
public:
    Mat() : rows_(0), cols_(0), kind_(FieldKind::Rational) {}
    Mat(int rows, int cols, FieldKind kind)
        : rows_(rows), cols_(cols), kind_(kind),
          e_(static_cast<size_t>(rows) * cols, Scalar::zero(kind)) {}

    static Mat identity(int n, FieldKind kind);
    // Small-integer literal constructor, used heavily in tests.
    static Mat from_int_rows(std::initializer_list<std::initializer_list<long>> rows,
                             FieldKind kind = FieldKind::Rational);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    FieldKind field() const { return kind_; }

    Scalar& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const Scalar& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

    Mat transpose() const;
    Mat conj_transpose() const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat operator-() const;
    Mat scaled(const Scalar& s) const;

    Mat block(int i0, int j0, int h, int w) const;
    void set_block(int i0, int j0, const Mat& m);

    Mat to_field(FieldKind k) const;

    double max_abs() const;
    bool is_zero() const;                 // exact zero in every entry
    bool is_zero_within(double eps) const;  // max_abs <= eps
    bool equals(const Mat& o) const;

    std::string str() const;

private:
    int rows_, cols_;
    FieldKind kind_;
    std::vector<Scalar> e_;
};

Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);
Mat kron(const Mat& a, const Mat& b);
// Row-major flattening as a column vector, and its inverse.
Mat vec_rowmajor(const Mat& m);
Mat unvec_rowmajor(const Mat& v, int rows, int cols);

// A linear subspace of K^ambient given by an independent-column basis.
// Exact fields keep the basis in reduced column-echelon form so equality
// of subspaces is plain matrix equality.
struct Subspace {
    int ambient = 0;
    Mat basis;  // ambient x dim

    int dim() const { return basis.cols(); }
    static Subspace span(int ambient, const Mat& generators, double tol = kDefaultTol);
    static Subspace zero(int ambient, FieldKind kind);
    bool contains(const Mat& v, double tol = kDefaultTol) const;
    bool same_as(const Subspace& o, double tol = kDefaultTol) const;
};

// Elimination products. Exact fields use fraction-free Bareiss steps on
// denominator-cleared rows; Complex64 uses scaled partial pivoting with a
// relative threshold.
int rank(const Mat& m, double tol = kDefaultTol);
Subspace kernel_basis(const Mat& m, double tol = kDefaultTol);
std::optional<Mat> solve_linear(const Mat& op, const Mat& rhs, double tol = kDefaultTol);
Scalar determinant(const Mat& m);
std::optional<Mat> inverse(const Mat& m, double tol = kDefaultTol);

// Matrices of polynomials in one variable t, stored as coefficient
// matrices of t^0, t^1, ... with trailing zeros trimmed.
class PolyMat {
public:
    PolyMat() : rows_(0), cols_(0), kind_(FieldKind::Rational) {}
    PolyMat(int rows, int cols, FieldKind kind) : rows_(rows), cols_(cols), kind_(kind) {}

    static PolyMat constant(const Mat& m);
    // c0 + c1 * t
    static PolyMat linear(const Mat& c0, const Mat& c1);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    FieldKind field() const { return kind_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero

    const Mat& coeff(int i) const;
    Mat coeff_or_zero(int i) const;
    void set_coeff(int i, const Mat& m);
    void trim();

    Mat eval(const Scalar& t) const;
    PolyMat operator+(const PolyMat& o) const;
    PolyMat operator-(const PolyMat& o) const;
    PolyMat operator*(const PolyMat& o) const;
    PolyMat operator-() const;
    PolyMat scaled(const Scalar& s) const;
    PolyMat transpose() const;
    // Substitute t -> a*t + b.
    PolyMat compose_affine(const Scalar& a, const Scalar& b) const;
    PolyMat to_field(FieldKind k) const;

    bool residual_is_zero(double tol = kDefaultTol) const;
    double max_abs() const;

private:
    int rows_, cols_;
    FieldKind kind_;
    std::vector<Mat> c_;
};

}  // namespace adhm
