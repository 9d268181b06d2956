#include "adhm/datum.hpp"

namespace adhm {

SymplecticForm SymplecticForm::standard(int r, FieldKind kind) {
    if (r <= 0 || r % 2 != 0) throw ShapeError("symplectic form: r must be even and positive");
    SymplecticForm f;
    f.r = r;
    f.matrix = Mat(r, r, kind);
    const int h = r / 2;
    for (int i = 0; i < h; ++i) {
        f.matrix.at(i, h + i) = Scalar::one(kind);
        f.matrix.at(h + i, i) = -Scalar::one(kind);
    }
    // For the Darboux form, -Omega^{-1} = Omega.
    f.inv = -f.matrix;
    return f;
}

SymplecticForm SymplecticForm::explicit_form(const Mat& omega, double tol) {
    if (omega.rows() != omega.cols()) throw ShapeError("symplectic form: not square");
    SymplecticForm f;
    f.r = omega.rows();
    f.matrix = omega;
    Mat anti = omega + omega.transpose();
    bool ok = is_exact(omega.field()) ? anti.is_zero()
                                      : anti.is_zero_within(tol * std::max(1.0, omega.max_abs()));
    if (!ok) throw ValidationError("symplectic form: not antisymmetric");
    auto inv = inverse(omega, tol);
    if (!inv) throw ValidationError("symplectic form: not invertible");
    f.inv = *inv;
    return f;
}

SymplecticForm SymplecticForm::to_field(FieldKind k) const {
    SymplecticForm f;
    f.r = r;
    f.matrix = matrix.to_field(k);
    f.inv = inv.to_field(k);
    return f;
}

SymplecticDatum SymplecticDatum::to_field(FieldKind k) const {
    return {n, r, A.to_field(k), B.to_field(k), I.to_field(k), G.to_field(k), omega.to_field(k)};
}

namespace {

void check_shapes(int n, int r, const Mat& A, const Mat& B, const Mat& I, const Mat& G,
                  const SymplecticForm& omega) {
    if (A.rows() != n || A.cols() != n) throw ShapeError("datum: A must be n x n");
    if (B.rows() != n || B.cols() != n) throw ShapeError("datum: B must be n x n");
    if (I.rows() != n || I.cols() != r) throw ShapeError("datum: I must be n x r");
    if (G.rows() != n || G.cols() != n) throw ShapeError("datum: G must be n x n");
    if (omega.r != r) throw ShapeError("datum: omega size mismatch");
}

EquationResidual residual_entry(const std::string& name, const Mat& res, double tol,
                                double scale) {
    EquationResidual e;
    e.name = name;
    e.residual = res.max_abs();
    e.ok = is_exact(res.field()) ? res.is_zero() : e.residual <= tol * scale;
    return e;
}

}  // namespace

SymplecticDatum assemble_unchecked(int n, int r, const Mat& A, const Mat& B, const Mat& I,
                                   const Mat& G, const SymplecticForm& omega) {
    check_shapes(n, r, A, B, I, G, omega);
    return {n, r, A, B, I, G, omega};
}

ValidationReport validate(const SymplecticDatum& d, double tol) {
    check_shapes(d.n, d.r, d.A, d.B, d.I, d.G, d.omega);
    ValidationReport rep;
    double m = std::max({1.0, d.A.max_abs(), d.B.max_abs(), d.I.max_abs(), d.G.max_abs(),
                         d.omega.inv.max_abs()});
    double scale = m * m;
    rep.equations.push_back(residual_entry("G-symmetry", d.G - d.G.transpose(), tol, scale));
    rep.equations.push_back(
        residual_entry("GA-symmetry", d.G * d.A - d.A.transpose() * d.G, tol, scale));
    rep.equations.push_back(
        residual_entry("GB-symmetry", d.G * d.B - d.B.transpose() * d.G, tol, scale));
    Mat adhm_res = d.A * d.B - d.B * d.A - d.I * d.omega.inv * d.I.transpose() * d.G;
    rep.equations.push_back(residual_entry("ADHM", adhm_res, tol, scale * m));
    rep.ok = true;
    for (const auto& e : rep.equations) rep.ok = rep.ok && e.ok;
    return rep;
}

SymplecticDatum make_datum(int n, int r, const Mat& A, const Mat& B, const Mat& I, const Mat& G,
                           const SymplecticForm& omega, double tol) {
    SymplecticDatum d = assemble_unchecked(n, r, A, B, I, G, omega);
    ValidationReport rep = validate(d, tol);
    if (!rep.ok) {
        std::string msg = "datum violates:";
        for (const auto& v : rep.violated()) msg += " " + v;
        throw ValidationError(msg);
    }
    return d;
}

Mat classical_defect(const ClassicalDatum& d) {
    return d.A * d.B - d.B * d.A + d.I * d.J;
}

bool classical_equation_holds(const ClassicalDatum& d, double tol) {
    Mat res = classical_defect(d);
    if (is_exact(d.field())) return res.is_zero();
    double m = std::max({1.0, d.A.max_abs(), d.B.max_abs(), d.I.max_abs(), d.J.max_abs()});
    return res.is_zero_within(tol * m * m);
}

ClassicalDatum iota(const SymplecticDatum& d) {
    ClassicalDatum c;
    c.n = d.n;
    c.r = d.r;
    c.A = d.A;
    c.B = d.B;
    c.I = d.I;
    c.J = -(d.omega.inv * d.I.transpose() * d.G);
    return c;
}

bool is_stable(const Mat& A, const Mat& B, const Mat& I, double tol) {
    const int n = A.rows();
    if (n == 0) return true;
    Subspace seed = Subspace::span(n, I, tol);
    Subspace closure = krylov_closure(seed, {A, B}, tol);
    return closure.dim() == n;
}

bool is_stable(const SymplecticDatum& d, double tol) { return is_stable(d.A, d.B, d.I, tol); }
bool is_stable(const ClassicalDatum& d, double tol) { return is_stable(d.A, d.B, d.I, tol); }

bool is_costable(const ClassicalDatum& d, double tol) {
    // dualize: the largest A,B-invariant subspace of ker(J) vanishes iff
    // (A^T, B^T, J^T) is stable.
    return is_stable(d.A.transpose(), d.B.transpose(), d.J.transpose(), tol);
}

SymplecticDatum act(const GaugeElement& g, const SymplecticDatum& d, double tol) {
    auto ginv = inverse(g.g, tol);
    if (!ginv) throw SingularGaugeError("act: gauge element not invertible");
    Mat git = ginv->transpose();
    return {d.n,        d.r, g.g * d.A * (*ginv), g.g * d.B * (*ginv), g.g * d.I,
            git * d.G * (*ginv), d.omega};
}

ClassicalDatum act(const GaugeElement& g, const ClassicalDatum& d, double tol) {
    auto ginv = inverse(g.g, tol);
    if (!ginv) throw SingularGaugeError("act: gauge element not invertible");
    return {d.n, d.r, g.g * d.A * (*ginv), g.g * d.B * (*ginv), g.g * d.I, d.J * (*ginv)};
}

std::optional<GaugeElement> orbit_equivalent(const SymplecticDatum& d1, const SymplecticDatum& d2,
                                             double tol) {
    if (d1.n != d2.n || d1.r != d2.r) return std::nullopt;
    const int n = d1.n;
    const FieldKind f = d1.field();
    Mat id = Mat::identity(n, f);
    // Linear system in g: g A1 - A2 g = 0, g B1 - B2 g = 0, g I1 = I2.
    Mat rows_a = kron(id, d1.A.transpose()) - kron(d2.A, id);
    Mat rows_b = kron(id, d1.B.transpose()) - kron(d2.B, id);
    Mat rows_i = kron(id, d1.I.transpose());
    Mat op = vstack(vstack(rows_a, rows_b), rows_i);
    Mat rhs(2 * n * n, 1, f);
    rhs = vstack(rhs, vec_rowmajor(d2.I));
    auto sol = solve_linear(op, rhs, tol);
    if (!sol) return std::nullopt;
    Mat g = unvec_rowmajor(*sol, n, n);
    auto ginv = inverse(g, tol);
    if (!ginv) return std::nullopt;
    // verify the G transformation law exactly
    Mat gnew = ginv->transpose() * d1.G * (*ginv);
    Mat diff = gnew - d2.G;
    bool ok = is_exact(f) ? diff.is_zero() : diff.is_zero_within(tol * std::max(1.0, gnew.max_abs()));
    if (!ok) return std::nullopt;
    return GaugeElement{g};
}

int rank_G(const SymplecticDatum& d, double tol) { return rank(d.G, tol); }

// ---------------------------------------------------------------------------
// Random generation.

Mat random_symmetric_nonderogatory(int n, Rng& rng) {
    const FieldKind f = FieldKind::Rational;
    if (n == 0) return Mat(0, 0, f);
    // Cayley transform of a random antisymmetric matrix is orthogonal.
    Mat k(n, n, f);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Scalar v = rng.rational(2, 2);
            k.at(i, j) = v;
            k.at(j, i) = -v;
        }
    Mat id = Mat::identity(n, f);
    auto inv_part = inverse(id + k);
    if (!inv_part) throw GenerationError("cayley transform degenerate");
    Mat q = (id - k) * (*inv_part);
    // distinct rational eigenvalues
    Mat d(n, n, f);
    std::vector<long> used;
    for (int i = 0; i < n; ++i) {
        long v;
        for (;;) {
            v = rng.int_in(-6, 6);
            bool dup = false;
            for (long u : used) dup = dup || (u == v);
            if (!dup) break;
        }
        used.push_back(v);
        d.at(i, i) = Scalar::integer(v, f);
    }
    return q.transpose() * d * q;
}

Mat random_invertible(int n, FieldKind kind, Rng& rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Mat g(n, n, kind);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g.at(i, j) = rng.rational(2, 2).to_field(kind);
        if (!determinant(g).is_zero()) return g;
    }
    throw GenerationError("random_invertible: retries exhausted");
}

namespace {

Mat random_mat(int rows, int cols, Rng& rng, long num_max = 2, long den_max = 2) {
    Mat m(rows, cols, FieldKind::Rational);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = rng.rational(num_max, den_max);
    return m;
}

}  // namespace

SymplecticDatum random_datum(int r, int n, int k, Rng& rng) {
    if (r < 2 || r % 2 != 0) throw GenerationError("random_datum: r must be even >= 2");
    if (k < 0 || k > n) throw GenerationError("random_datum: need 0 <= k <= n");
    const FieldKind f = FieldKind::Rational;
    SymplecticForm omega = SymplecticForm::standard(r, f);
    const int m = n - k;

    std::string stage = "init";
    for (int attempt = 0; attempt < 32; ++attempt) {
        try {
            stage = "upper block";
            Mat A0(0, 0, f), B0(0, 0, f), I0(0, r, f);
            if (k > 0) {
                A0 = random_symmetric_nonderogatory(k, rng);
                I0 = random_mat(k, r, rng);
                Mat K = I0 * omega.inv * I0.transpose();
                auto B0s = solve_bracket_symmetric(A0, K);
                if (!B0s) continue;
                B0 = *B0s;
                // mix in a commuting symmetric part for variety
                B0 = B0 + A0.scaled(rng.rational(1, 2));
            }

            stage = "residual block";
            Mat alpha(0, 0, f), beta(0, 0, f), X(0, r, f);
            if (m > 0) {
                Mat N = random_symmetric_nonderogatory(m, rng);
                if (k > 0) {
                    // keep the Sylvester operator invertible: spectra of B0
                    // and beta must stay apart (exact resultant test)
                    int shift = 0;
                    while (spectra_intersect(B0, N) && shift < 16) {
                        N = N + Mat::identity(m, f).scaled(Scalar::rational(1, 7));
                        ++shift;
                    }
                    if (spectra_intersect(B0, N)) continue;
                }
                beta = N;
                alpha = N.scaled(rng.rational(2, 2)) +
                        Mat::identity(m, f).scaled(rng.rational(2, 2));
                if (m > 1) alpha = alpha + (N * N).scaled(rng.rational(1, 3));
                X = random_mat(m, r, rng);
            }

            stage = "mixed row";
            Mat a(m, k, f);
            if (k > 0 && m > 0) {
                Mat C = X * omega.inv * I0.transpose();
                auto sol = sylvester_solve(B0, beta, C);
                if (!sol) continue;
                a = *sol;
            }

            stage = "assembly";
            Mat A(n, n, f), B(n, n, f), I(n, r, f), G(n, n, f);
            A.set_block(0, 0, A0);
            A.set_block(k, 0, a);
            A.set_block(k, k, alpha);
            B.set_block(0, 0, B0);
            B.set_block(k, k, beta);
            I.set_block(0, 0, I0);
            I.set_block(k, 0, X);
            for (int i = 0; i < k; ++i) G.at(i, i) = Scalar::one(f);

            SymplecticDatum d = make_datum(n, r, A, B, I, G, omega);
            stage = "stability";
            if (!is_stable(d)) continue;
            return d;
        } catch (const ValidationError&) {
            continue;
        }
    }
    throw GenerationError("random_datum: retries exhausted at stage " + stage);
}

}  // namespace adhm
