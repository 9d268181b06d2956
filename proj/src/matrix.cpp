#include "adhm/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace adhm {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw ShapeError(msg);
}

}  // namespace

Mat Mat::identity(int n, FieldKind kind) {
    Mat m(n, n, kind);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(kind);
    return m;
}

Mat Mat::from_int_rows(std::initializer_list<std::initializer_list<long>> rows, FieldKind kind) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
    Mat m(r, c, kind);
    int i = 0;
    for (const auto& row : rows) {
        require(static_cast<int>(row.size()) == c, "from_int_rows: ragged rows");
        int j = 0;
        for (long v : row) m.at(i, j++) = Scalar::integer(v, kind);
        ++i;
    }
    return m;
}

Mat Mat::transpose() const {
    Mat m(cols_, rows_, kind_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

Mat Mat::conj_transpose() const {
    Mat m(cols_, rows_, kind_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j).conj();
    return m;
}

Mat Mat::operator+(const Mat& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, "mat add: shape mismatch");
    Mat m = *this;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(i, j) += o.at(i, j);
    return m;
}

Mat Mat::operator-(const Mat& o) const { return *this + (-o); }

Mat Mat::operator-() const {
    Mat m = *this;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(i, j) = -m.at(i, j);
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    require(cols_ == o.rows_, "mat mul: shape mismatch");
    Mat m(rows_, o.cols_, kind_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) m.at(i, j) += aik * o.at(k, j);
        }
    return m;
}

Mat Mat::scaled(const Scalar& s) const {
    Mat m = *this;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(i, j) *= s;
    return m;
}

Mat Mat::block(int i0, int j0, int h, int w) const {
    require(i0 >= 0 && j0 >= 0 && i0 + h <= rows_ && j0 + w <= cols_, "block out of range");
    Mat m(h, w, kind_);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) m.at(i, j) = at(i0 + i, j0 + j);
    return m;
}

void Mat::set_block(int i0, int j0, const Mat& m) {
    require(i0 + m.rows() <= rows_ && j0 + m.cols() <= cols_, "set_block out of range");
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) at(i0 + i, j0 + j) = m.at(i, j);
}

Mat Mat::to_field(FieldKind k) const {
    Mat m(rows_, cols_, k);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j).to_field(k);
    return m;
}

double Mat::max_abs() const {
    double m = 0.0;
    for (const auto& s : e_) m = std::max(m, s.abs());
    return m;
}

bool Mat::is_zero() const {
    for (const auto& s : e_)
        if (!s.is_zero()) return false;
    return true;
}

bool Mat::is_zero_within(double eps) const { return max_abs() <= eps; }

bool Mat::equals(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || kind_ != o.kind_) return false;
    for (size_t i = 0; i < e_.size(); ++i)
        if (e_[i] != o.e_[i]) return false;
    return true;
}

std::string Mat::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (int j = 0; j < cols_; ++j) os << at(i, j).str() << (j + 1 < cols_ ? ", " : "");
        os << (i + 1 < rows_ ? ";\n" : "]");
    }
    return os.str();
}

Mat hstack(const Mat& a, const Mat& b) {
    if (a.cols() == 0 && a.rows() == 0) return b;
    if (b.cols() == 0 && b.rows() == 0) return a;
    require(a.rows() == b.rows(), "hstack: row mismatch");
    Mat m(a.rows(), a.cols() + b.cols(), a.field());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

Mat vstack(const Mat& a, const Mat& b) {
    if (a.cols() == 0 && a.rows() == 0) return b;
    if (b.cols() == 0 && b.rows() == 0) return a;
    require(a.cols() == b.cols(), "vstack: col mismatch");
    Mat m(a.rows() + b.rows(), a.cols(), a.field());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat m(a.rows() * b.rows(), a.cols() * b.cols(), a.field());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a.at(i, j).is_zero()) continue;
            m.set_block(i * b.rows(), j * b.cols(), b.scaled(a.at(i, j)));
        }
    return m;
}

Mat vec_rowmajor(const Mat& m) {
    Mat v(m.rows() * m.cols(), 1, m.field());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) v.at(i * m.cols() + j, 0) = m.at(i, j);
    return v;
}

Mat unvec_rowmajor(const Mat& v, int rows, int cols) {
    require(v.cols() == 1 && v.rows() == rows * cols, "unvec: shape mismatch");
    Mat m(rows, cols, v.field());
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = v.at(i * cols + j, 0);
    return m;
}

// ---------------------------------------------------------------------------
// Elimination engine.

namespace {

struct Echelon {
    Mat u;
    std::vector<int> pivot_cols;
    int rank = 0;
    int sign = 1;             // row-swap parity
    Scalar det_scale;         // product of row prescalings (exact path)
    Scalar last_pivot;        // Bareiss determinant numerator
};

// Multiply each row by the lcm of its denominators so Bareiss runs on
// (Gaussian-)integer entries. Rank and kernels are unchanged; determinant
// callers divide by the accumulated scale.
void clear_denominators(Mat& m, Scalar& scale) {
    scale = Scalar::one(m.field());
    for (int i = 0; i < m.rows(); ++i) {
        mpz_class l(1);
        for (int j = 0; j < m.cols(); ++j) {
            const Scalar& s = m.at(i, j);
            l = lcm(l, s.rat_re().get_den());
            l = lcm(l, s.rat_im().get_den());
        }
        if (l == 1) continue;
        Scalar f = Scalar::rational(mpq_class(l)).to_field(m.field());
        for (int j = 0; j < m.cols(); ++j) m.at(i, j) *= f;
        scale *= f;
    }
}

Echelon eliminate(Mat m, double tol) {
    Echelon e;
    e.det_scale = Scalar::one(m.field());
    e.last_pivot = Scalar::one(m.field());
    const bool exact = is_exact(m.field());
    if (exact) clear_denominators(m, e.det_scale);
    const double threshold = tol * std::max(1.0, m.max_abs());

    Scalar prev = Scalar::one(m.field());
    int pr = 0;
    for (int c = 0; c < m.cols() && pr < m.rows(); ++c) {
        int piv = -1;
        if (exact) {
            for (int i = pr; i < m.rows(); ++i)
                if (!m.at(i, c).is_zero()) {
                    piv = i;
                    break;
                }
        } else {
            double best = threshold;
            for (int i = pr; i < m.rows(); ++i)
                if (m.at(i, c).abs() > best) {
                    best = m.at(i, c).abs();
                    piv = i;
                }
        }
        if (piv < 0) continue;
        if (piv != pr) {
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(pr, j));
            e.sign = -e.sign;
        }
        const Scalar pivot = m.at(pr, c);
        for (int i = pr + 1; i < m.rows(); ++i) {
            if (exact) {
                // One-step fraction-free update; division by prev is exact.
                const Scalar mic = m.at(i, c);
                for (int j = c + 1; j < m.cols(); ++j)
                    m.at(i, j) = (pivot * m.at(i, j) - mic * m.at(pr, j)) / prev;
            } else {
                const Scalar f = m.at(i, c) / pivot;
                for (int j = c + 1; j < m.cols(); ++j) m.at(i, j) -= f * m.at(pr, j);
            }
            m.at(i, c) = Scalar::zero(m.field());
        }
        prev = pivot;
        e.pivot_cols.push_back(c);
        ++pr;
    }
    e.u = std::move(m);
    e.rank = pr;
    e.last_pivot = prev;
    return e;
}

// Back-substitution on the echelon form: fill the pivot coordinates of x
// so that u * x = rhs_col (rhs_col may be a column of u itself).
void back_substitute(const Echelon& e, Mat& x, const Mat& rhs) {
    for (int p = e.rank - 1; p >= 0; --p) {
        int pc = e.pivot_cols[p];
        Scalar acc = rhs.at(p, 0);
        for (int j = pc + 1; j < e.u.cols(); ++j)
            if (!x.at(j, 0).is_zero()) acc -= e.u.at(p, j) * x.at(j, 0);
        x.at(pc, 0) = acc / e.u.at(p, pc);
    }
}

}  // namespace

int rank(const Mat& m, double tol) { return eliminate(m, tol).rank; }

Subspace kernel_basis(const Mat& m, double tol) {
    Echelon e = eliminate(m, tol);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : e.pivot_cols) is_pivot[c] = true;
    Mat basis(m.cols(), m.cols() - e.rank, m.field());
    int col = 0;
    Mat zero_rhs(e.rank > 0 ? e.rank : 1, 1, m.field());
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Mat x(m.cols(), 1, m.field());
        x.at(f, 0) = Scalar::one(m.field());
        // rhs for pivot rows: -u(:,f) restricted to pivot rows
        Mat rhs(e.rank > 0 ? e.rank : 1, 1, m.field());
        for (int p = 0; p < e.rank; ++p) rhs.at(p, 0) = -e.u.at(p, f);
        Mat xp = x;
        for (int p = e.rank - 1; p >= 0; --p) {
            int pc = e.pivot_cols[p];
            Scalar acc = rhs.at(p, 0);
            for (int j = pc + 1; j < m.cols(); ++j) {
                if (j == f || !is_pivot[j]) continue;
                if (!xp.at(j, 0).is_zero()) acc -= e.u.at(p, j) * xp.at(j, 0);
            }
            xp.at(pc, 0) = acc / e.u.at(p, pc);
        }
        basis.set_block(0, col, xp);
        ++col;
    }
    Subspace s;
    s.ambient = m.cols();
    s.basis = basis;
    return s;
}

std::optional<Mat> solve_linear(const Mat& op, const Mat& rhs, double tol) {
    if (op.rows() != rhs.rows()) throw ShapeError("solve_linear: row mismatch");
    if (op.cols() == 0) {
        // Empty operator: solvable iff rhs vanishes.
        bool ok = is_exact(op.field()) ? rhs.is_zero()
                                       : rhs.is_zero_within(tol * std::max(1.0, rhs.max_abs()));
        if (!ok) return std::nullopt;
        return Mat(0, rhs.cols(), op.field());
    }
    Mat solution(op.cols(), rhs.cols(), op.field());
    // Eliminate once on [op | rhs] and back-substitute each rhs column.
    Mat aug = hstack(op, rhs);
    Echelon e = eliminate(aug, tol);
    const double eps = tol * std::max(1.0, aug.max_abs());
    // Any pivot column inside the rhs region means inconsistency.
    for (int c : e.pivot_cols)
        if (c >= op.cols()) return std::nullopt;
    // Rows past the last pivot must have zero rhs residue.
    for (int i = e.rank; i < aug.rows(); ++i)
        for (int j = op.cols(); j < aug.cols(); ++j) {
            const Scalar& v = e.u.at(i, j);
            bool zero = is_exact(op.field()) ? v.is_zero() : v.abs() <= eps;
            if (!zero) return std::nullopt;
        }
    for (int k = 0; k < rhs.cols(); ++k) {
        Mat x(op.cols(), 1, op.field());
        Mat r(e.rank > 0 ? e.rank : 1, 1, op.field());
        for (int p = 0; p < e.rank; ++p) r.at(p, 0) = e.u.at(p, op.cols() + k);
        Echelon view;
        view.u = e.u.block(0, 0, aug.rows(), op.cols());
        view.pivot_cols = e.pivot_cols;
        view.rank = e.rank;
        back_substitute(view, x, r);
        solution.set_block(0, k, x);
    }
    return solution;
}

Scalar determinant(const Mat& m) {
    if (m.rows() != m.cols()) throw ShapeError("determinant: not square");
    if (m.rows() == 0) return Scalar::one(m.field());
    Echelon e = eliminate(m, kDefaultTol);
    if (e.rank < m.rows()) return Scalar::zero(m.field());
    Scalar det = e.last_pivot;
    if (!is_exact(m.field())) {
        // float path: product of pivots
        det = Scalar::one(m.field());
        for (int p = 0; p < e.rank; ++p) det *= e.u.at(p, e.pivot_cols[p]);
    }
    if (e.sign < 0) det = -det;
    return det / e.det_scale;
}

std::optional<Mat> inverse(const Mat& m, double tol) {
    if (m.rows() != m.cols()) throw ShapeError("inverse: not square");
    return solve_linear(m, Mat::identity(m.rows(), m.field()), tol);
}

// ---------------------------------------------------------------------------
// Subspace.

Subspace Subspace::zero(int ambient, FieldKind kind) {
    Subspace s;
    s.ambient = ambient;
    s.basis = Mat(ambient, 0, kind);
    return s;
}

Subspace Subspace::span(int ambient, const Mat& generators, double tol) {
    if (generators.rows() != ambient) throw ShapeError("span: ambient mismatch");
    // Reduced row echelon of the transpose gives a canonical basis.
    Mat rt = generators.transpose();
    Echelon e = eliminate(rt, tol);
    // Normalize to reduced form so equal subspaces give equal bases.
    Mat u = e.u;
    for (int p = e.rank - 1; p >= 0; --p) {
        int pc = e.pivot_cols[p];
        Scalar inv = u.at(p, pc).inv();
        for (int j = 0; j < u.cols(); ++j) u.at(p, j) *= inv;
        for (int q = 0; q < p; ++q) {
            Scalar f = u.at(q, pc);
            if (f.is_zero()) continue;
            for (int j = 0; j < u.cols(); ++j) u.at(q, j) -= f * u.at(p, j);
        }
    }
    Subspace s;
    s.ambient = ambient;
    s.basis = Mat(ambient, e.rank, generators.field());
    for (int p = 0; p < e.rank; ++p)
        for (int i = 0; i < ambient; ++i) s.basis.at(i, p) = u.at(p, i);
    return s;
}

bool Subspace::contains(const Mat& v, double tol) const {
    if (v.rows() != ambient) throw ShapeError("contains: ambient mismatch");
    if (dim() == 0) {
        return is_exact(v.field()) ? v.is_zero() : v.is_zero_within(tol * std::max(1.0, v.max_abs()));
    }
    return solve_linear(basis, v, tol).has_value();
}

bool Subspace::same_as(const Subspace& o, double tol) const {
    if (ambient != o.ambient || dim() != o.dim()) return false;
    if (is_exact(basis.field()) && is_exact(o.basis.field())) return basis.equals(o.basis);
    // float: mutual containment by rank
    Mat joint = hstack(basis, o.basis);
    return rank(joint, tol) == dim();
}

// ---------------------------------------------------------------------------
// PolyMat.

PolyMat PolyMat::constant(const Mat& m) {
    PolyMat p(m.rows(), m.cols(), m.field());
    p.c_.push_back(m);
    p.trim();
    return p;
}

PolyMat PolyMat::linear(const Mat& c0, const Mat& c1) {
    if (c0.rows() != c1.rows() || c0.cols() != c1.cols())
        throw ShapeError("polymat linear: shape mismatch");
    PolyMat p(c0.rows(), c0.cols(), c0.field());
    p.c_.push_back(c0);
    p.c_.push_back(c1);
    p.trim();
    return p;
}

const Mat& PolyMat::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) throw ShapeError("polymat coeff out of range");
    return c_[i];
}

Mat PolyMat::coeff_or_zero(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Mat(rows_, cols_, kind_);
    return c_[i];
}

void PolyMat::set_coeff(int i, const Mat& m) {
    if (m.rows() != rows_ || m.cols() != cols_) throw ShapeError("polymat set_coeff: shape");
    while (static_cast<int>(c_.size()) <= i) c_.push_back(Mat(rows_, cols_, kind_));
    c_[i] = m;
    trim();
}

void PolyMat::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Mat PolyMat::eval(const Scalar& t) const {
    Mat acc(rows_, cols_, kind_);
    for (int i = degree(); i >= 0; --i) acc = acc.scaled(t) + c_[i];
    return acc;
}

PolyMat PolyMat::operator+(const PolyMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("polymat add: shape mismatch");
    PolyMat p(rows_, cols_, kind_);
    int d = std::max(degree(), o.degree());
    for (int i = 0; i <= d; ++i) p.c_.push_back(coeff_or_zero(i) + o.coeff_or_zero(i));
    p.trim();
    return p;
}

PolyMat PolyMat::operator-(const PolyMat& o) const { return *this + (-o); }

PolyMat PolyMat::operator-() const {
    PolyMat p = *this;
    for (auto& m : p.c_) m = -m;
    return p;
}

PolyMat PolyMat::operator*(const PolyMat& o) const {
    if (cols_ != o.rows_) throw ShapeError("polymat mul: shape mismatch");
    PolyMat p(rows_, o.cols_, kind_);
    if (degree() < 0 || o.degree() < 0) return p;
    p.c_.assign(degree() + o.degree() + 1, Mat(rows_, o.cols_, kind_));
    for (int i = 0; i <= degree(); ++i)
        for (int j = 0; j <= o.degree(); ++j) p.c_[i + j] = p.c_[i + j] + c_[i] * o.c_[j];
    p.trim();
    return p;
}

PolyMat PolyMat::scaled(const Scalar& s) const {
    PolyMat p = *this;
    for (auto& m : p.c_) m = m.scaled(s);
    p.trim();
    return p;
}

PolyMat PolyMat::transpose() const {
    PolyMat p(cols_, rows_, kind_);
    for (const auto& m : c_) p.c_.push_back(m.transpose());
    p.trim();
    return p;
}

PolyMat PolyMat::compose_affine(const Scalar& a, const Scalar& b) const {
    // Horner in the substituted variable.
    PolyMat acc(rows_, cols_, kind_);
    for (int i = degree(); i >= 0; --i) {
        // acc <- acc*(a t + b) + c_i
        PolyMat shifted(rows_, cols_, kind_);
        int d = acc.degree();
        if (d >= 0) {
            shifted.c_.assign(d + 2, Mat(rows_, cols_, kind_));
            for (int k = 0; k <= d; ++k) {
                shifted.c_[k] = shifted.c_[k] + acc.c_[k].scaled(b);
                shifted.c_[k + 1] = shifted.c_[k + 1] + acc.c_[k].scaled(a);
            }
        }
        shifted.trim();
        acc = shifted + PolyMat::constant(c_[i]);
    }
    return acc;
}

PolyMat PolyMat::to_field(FieldKind k) const {
    PolyMat p(rows_, cols_, k);
    for (const auto& m : c_) p.c_.push_back(m.to_field(k));
    p.trim();
    return p;
}

bool PolyMat::residual_is_zero(double tol) const {
    if (is_exact(kind_)) return degree() < 0;
    double scale = std::max(1.0, max_abs());
    for (const auto& m : c_)
        if (!m.is_zero_within(tol * scale)) return false;
    return true;
}

double PolyMat::max_abs() const {
    double m = 0.0;
    for (const auto& mat : c_) m = std::max(m, mat.max_abs());
    return m;
}

}  // namespace adhm
