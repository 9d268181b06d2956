#include "adhm/tangent.hpp"

namespace adhm {

namespace {

int antisym_dim(int n) { return n * (n - 1) / 2; }
int sym_dim(int n) { return n * (n + 1) / 2; }

// coordinates of an antisymmetric matrix: entries (i,j), i<j, row-major
void write_antisym_coords(Mat& target, int row0, int col, const Mat& m) {
    int row = row0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.cols(); ++j) target.at(row++, col) = m.at(i, j);
}

// symmetric basis: diagonal units first, then E_ij + E_ji for i<j
Mat sym_basis_mat(int n, int idx, FieldKind f) {
    Mat e(n, n, f);
    if (idx < n) {
        e.at(idx, idx) = Scalar::one(f);
        return e;
    }
    idx -= n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (idx == 0) {
                e.at(i, j) = Scalar::one(f);
                e.at(j, i) = Scalar::one(f);
                return e;
            }
            --idx;
        }
    throw ShapeError("sym_basis_mat: index out of range");
}

void write_sym_coords(Mat& target, int row0, int col, const Mat& m) {
    int row = row0;
    for (int i = 0; i < m.rows(); ++i) target.at(row++, col) = m.at(i, i);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.cols(); ++j) target.at(row++, col) = m.at(i, j);
}

}  // namespace

int tangent_ambient_dim(int n, int r) { return 2 * n * n + n * r + sym_dim(n); }

Mat flatten_tangent(const TangentVector& v) {
    const int n = v.X_A.rows(), r = v.X_I.cols();
    const FieldKind f = v.X_A.field();
    Mat col(tangent_ambient_dim(n, r), 1, f);
    col.set_block(0, 0, vec_rowmajor(v.X_A));
    col.set_block(n * n, 0, vec_rowmajor(v.X_B));
    col.set_block(2 * n * n, 0, vec_rowmajor(v.X_I));
    Mat tail(sym_dim(n), 1, f);
    write_sym_coords(tail, 0, 0, v.X_G);
    col.set_block(2 * n * n + n * r, 0, tail);
    return col;
}

TangentVector unflatten_tangent(const Mat& col, int n, int r, FieldKind f) {
    TangentVector v;
    v.X_A = unvec_rowmajor(col.block(0, 0, n * n, 1), n, n);
    v.X_B = unvec_rowmajor(col.block(n * n, 0, n * n, 1), n, n);
    v.X_I = unvec_rowmajor(col.block(2 * n * n, 0, n * r, 1), n, r);
    v.X_G = Mat(n, n, f);
    int idx = 2 * n * n + n * r;
    for (int i = 0; i < n; ++i) v.X_G.at(i, i) = col.at(idx++, 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            v.X_G.at(i, j) = col.at(idx, 0);
            v.X_G.at(j, i) = col.at(idx, 0);
            ++idx;
        }
    return v;
}

Mat jacobian(const SymplecticDatum& d) {
    const int n = d.n, r = d.r;
    const FieldKind f = d.field();
    const int rows = 2 * antisym_dim(n) + n * n;
    const int cols = tangent_ambient_dim(n, r);
    Mat jac(rows, cols, f);
    const Mat At = d.A.transpose(), Bt = d.B.transpose(), It = d.I.transpose();
    const Mat K = d.I * d.omega.inv;  // n x r

    int col = 0;
    // X_A directions: E1 = G e - e^T G, E3 = e B - B e
    for (int u = 0; u < n * n; ++u) {
        Mat e(n, n, f);
        e.at(u / n, u % n) = Scalar::one(f);
        write_antisym_coords(jac, 0, col, d.G * e - e.transpose() * d.G);
        Mat e3 = e * d.B - d.B * e;
        jac.set_block(2 * antisym_dim(n), col, vec_rowmajor(e3));
        ++col;
    }
    // X_B directions: E2 = G e - e^T G, E3 = A e - e A
    for (int u = 0; u < n * n; ++u) {
        Mat e(n, n, f);
        e.at(u / n, u % n) = Scalar::one(f);
        write_antisym_coords(jac, antisym_dim(n), col, d.G * e - e.transpose() * d.G);
        Mat e3 = d.A * e - e * d.A;
        jac.set_block(2 * antisym_dim(n), col, vec_rowmajor(e3));
        ++col;
    }
    // X_I directions: E3 = -(e Omega^{-1} I^T G + I Omega^{-1} e^T G)
    for (int u = 0; u < n * r; ++u) {
        Mat e(n, r, f);
        e.at(u / r, u % r) = Scalar::one(f);
        Mat e3 = -(e * d.omega.inv * It * d.G + K * e.transpose() * d.G);
        jac.set_block(2 * antisym_dim(n), col, vec_rowmajor(e3));
        ++col;
    }
    // X_G directions: E1 = s A - A^T s, E2 = s B - B^T s, E3 = -I Omega^{-1} I^T s
    for (int u = 0; u < sym_dim(n); ++u) {
        Mat s = sym_basis_mat(n, u, f);
        write_antisym_coords(jac, 0, col, s * d.A - At * s);
        write_antisym_coords(jac, antisym_dim(n), col, s * d.B - Bt * s);
        Mat e3 = -(K * It * s);
        jac.set_block(2 * antisym_dim(n), col, vec_rowmajor(e3));
        ++col;
    }
    return jac;
}

Mat orbit_map(const SymplecticDatum& d) {
    const int n = d.n, r = d.r;
    const FieldKind f = d.field();
    Mat out(tangent_ambient_dim(n, r), n * n, f);
    for (int u = 0; u < n * n; ++u) {
        Mat x(n, n, f);
        x.at(u / n, u % n) = Scalar::one(f);
        TangentVector v;
        v.X_A = x * d.A - d.A * x;
        v.X_B = x * d.B - d.B * x;
        v.X_I = x * d.I;
        v.X_G = -(x.transpose() * d.G + d.G * x);
        out.set_block(0, u, flatten_tangent(v));
    }
    return out;
}

Mat equation_residual_vector(const SymplecticDatum& d) {
    const int n = d.n;
    const FieldKind f = d.field();
    Mat out(2 * antisym_dim(n) + n * n, 1, f);
    write_antisym_coords(out, 0, 0, d.G * d.A - d.A.transpose() * d.G);
    write_antisym_coords(out, antisym_dim(n), 0, d.G * d.B - d.B.transpose() * d.G);
    Mat adhm = d.A * d.B - d.B * d.A - d.I * d.omega.inv * d.I.transpose() * d.G;
    out.set_block(2 * antisym_dim(n), 0, vec_rowmajor(adhm));
    return out;
}

TangentReport tangent_report(const SymplecticDatum& d, double tol) {
    if (!is_stable(d, tol))
        throw NotStableError("tangent_report: datum is not stable; the orbit is not free there");
    TangentReport rep;
    rep.n = d.n;
    rep.r = d.r;
    rep.ambient_dim = tangent_ambient_dim(d.n, d.r);
    Mat jac = jacobian(d);
    Mat orb = orbit_map(d);
    // gauge directions are always tangent to the equations
    if (is_exact(d.field())) {
        if (!(jac * orb).is_zero())
            throw ValidationError("tangent_report: orbit directions violate the linearization");
    }
    rep.jac_rank = rank(jac, tol);
    rep.ker_dim = rep.ambient_dim - rep.jac_rank;
    rep.orbit_dim = rank(orb, tol);
    rep.moduli_tangent_dim = rep.ker_dim - rep.orbit_dim;
    rep.expected_dim = d.r * d.n + 2 * d.n;
    rep.smooth = (rep.moduli_tangent_dim == rep.expected_dim);
    return rep;
}

bool is_smooth_point(const SymplecticDatum& d, double tol) {
    TangentReport rep = tangent_report(d, tol);
    if (is_exact(d.field()) && !rep.smooth) {
        // cross-check: a nonderogatory endomorphism forces smoothness
        if (is_nonderogatory(d.A, tol) || is_nonderogatory(d.B, tol))
            throw ValidationError("is_smooth_point: nonderogatory criterion contradicts rank count");
    }
    return rep.smooth;
}

double jacobian_fd_error(const SymplecticDatum& d, const TangentVector& v, double step) {
    SymplecticDatum df = d.to_field(FieldKind::Complex64);
    TangentVector vf{v.X_A.to_field(FieldKind::Complex64), v.X_B.to_field(FieldKind::Complex64),
                     v.X_I.to_field(FieldKind::Complex64), v.X_G.to_field(FieldKind::Complex64)};
    Scalar h = Scalar::complex64(step);
    SymplecticDatum moved = assemble_unchecked(
        df.n, df.r, df.A + vf.X_A.scaled(h), df.B + vf.X_B.scaled(h), df.I + vf.X_I.scaled(h),
        df.G + vf.X_G.scaled(h), df.omega);
    Mat fd = (equation_residual_vector(moved) - equation_residual_vector(df)).scaled(h.inv());
    Mat lin = jacobian(df) * flatten_tangent(vf);
    double denom = std::max(1.0, lin.max_abs());
    return (fd - lin).max_abs() / denom;
}

TangentVector random_tangent(int n, int r, FieldKind f, Rng& rng) {
    TangentVector v;
    v.X_A = Mat(n, n, f);
    v.X_B = Mat(n, n, f);
    v.X_I = Mat(n, r, f);
    v.X_G = Mat(n, n, f);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            v.X_A.at(i, j) = rng.rational(3, 2).to_field(f);
            v.X_B.at(i, j) = rng.rational(3, 2).to_field(f);
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < r; ++j) v.X_I.at(i, j) = rng.rational(3, 2).to_field(f);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Scalar s = rng.rational(3, 2).to_field(f);
            v.X_G.at(i, j) = s;
            v.X_G.at(j, i) = s;
        }
    return v;
}

}  // namespace adhm
