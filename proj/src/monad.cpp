#include "adhm/monad.hpp"

namespace adhm {

Mat MonadMaps::alpha_at(const Scalar& x, const Scalar& y, const Scalar& z) const {
    return alpha_x.scaled(x) + alpha_y.scaled(y) + alpha_z.scaled(z);
}

Mat MonadMaps::beta_at(const Scalar& x, const Scalar& y, const Scalar& z) const {
    return beta_x.scaled(x) + beta_y.scaled(y) + beta_z.scaled(z);
}

MonadMaps build_monad(const ClassicalDatum& d) {
    const int n = d.n, r = d.r;
    const FieldKind f = d.field();
    MonadMaps m;
    m.n = n;
    m.r = r;
    Mat id = Mat::identity(n, f);

    m.alpha_x = Mat(2 * n + r, n, f);
    m.alpha_x.set_block(0, 0, id);
    m.alpha_y = Mat(2 * n + r, n, f);
    m.alpha_y.set_block(n, 0, id);
    m.alpha_z = Mat(2 * n + r, n, f);
    m.alpha_z.set_block(0, 0, d.A);
    m.alpha_z.set_block(n, 0, d.B);
    m.alpha_z.set_block(2 * n, 0, d.J);

    m.beta_x = Mat(n, 2 * n + r, f);
    m.beta_x.set_block(0, n, id);
    m.beta_y = Mat(n, 2 * n + r, f);
    m.beta_y.set_block(0, 0, -id);
    m.beta_z = Mat(n, 2 * n + r, f);
    m.beta_z.set_block(0, 0, -d.B);
    m.beta_z.set_block(0, n, d.A);
    m.beta_z.set_block(0, 2 * n, d.I);
    return m;
}

ComplexCheck check_complex(const MonadMaps& m, double tol) {
    ComplexCheck c;
    c.coeffs[0] = m.beta_x * m.alpha_x;                      // x^2
    c.coeffs[1] = m.beta_y * m.alpha_y;                      // y^2
    c.coeffs[2] = m.beta_z * m.alpha_z;                      // z^2
    c.coeffs[3] = m.beta_x * m.alpha_y + m.beta_y * m.alpha_x;  // xy
    c.coeffs[4] = m.beta_x * m.alpha_z + m.beta_z * m.alpha_x;  // xz
    c.coeffs[5] = m.beta_y * m.alpha_z + m.beta_z * m.alpha_y;  // yz
    double scale = 1.0;
    for (const auto& mat : c.coeffs) scale = std::max(scale, mat.max_abs());
    double worst = 0.0;
    bool ok = true;
    for (const auto& mat : c.coeffs) {
        worst = std::max(worst, mat.max_abs());
        ok = ok && (is_exact(m.field()) ? mat.is_zero() : mat.is_zero_within(tol * scale));
    }
    c.ok = ok;
    c.residual = worst;
    return c;
}

std::array<Scalar, 3> normalize_point(const std::array<Scalar, 3>& p, double tol) {
    double m = std::max({p[0].abs(), p[1].abs(), p[2].abs()});
    if (m == 0.0) throw ZeroPointError("point (0,0,0) is not a point of the plane");
    int last = -1;
    for (int i = 2; i >= 0; --i) {
        bool nz = p[i].exact() ? !p[i].is_zero() : p[i].abs() > tol * m;
        if (nz) {
            last = i;
            break;
        }
    }
    if (last < 0) throw ZeroPointError("point is zero within tolerance");
    Scalar inv = p[last].inv();
    return {p[0] * inv, p[1] * inv, p[2] * inv};
}

FiberReport fiber(const MonadMaps& m, const std::array<Scalar, 3>& p, double tol) {
    auto q = normalize_point(p, tol);
    FiberReport rep;
    rep.point = q;
    rep.rank_alpha = rank(m.alpha_at(q[0], q[1], q[2]), tol);
    rep.rank_beta = rank(m.beta_at(q[0], q[1], q[2]), tol);
    rep.fiber_dim = (2 * m.n + m.r) - rep.rank_alpha - rep.rank_beta;
    return rep;
}

std::vector<FiberReport> scan_singular(const MonadMaps& m,
                                       const std::vector<std::array<Scalar, 3>>& candidates,
                                       double tol) {
    std::vector<FiberReport> jumps;
    for (const auto& p : candidates) {
        FiberReport rep = fiber(m, p, tol);
        if (rep.fiber_dim > m.r) {
            // merge duplicates of the same normalized point
            bool dup = false;
            for (const auto& j : jumps) {
                double d = 0.0;
                for (int i = 0; i < 3; ++i) d += std::abs(j.point[i].to_complex() - rep.point[i].to_complex());
                if (d <= 1e-7 * std::max(1.0, rep.point[0].abs() + rep.point[1].abs() + 1)) {
                    dup = true;
                    break;
                }
            }
            if (!dup) jumps.push_back(rep);
        }
    }
    return jumps;
}

SymplecticLift check_lift(const SymplecticDatum& d, double tol) {
    const int n = d.n, r = d.r;
    const FieldKind f = d.field();
    SymplecticLift lift;
    lift.G1 = -d.G;
    lift.G2 = d.G;
    lift.F = Mat(2 * n + r, 2 * n + r, f);
    lift.F.set_block(0, n, d.G);
    lift.F.set_block(n, 0, -d.G);
    lift.F.set_block(2 * n, 2 * n, d.omega.matrix);

    double m = std::max({1.0, d.A.max_abs(), d.B.max_abs(), d.I.max_abs(), d.G.max_abs()});
    double scale = m * m;
    auto cond = [&](const std::string& name, const Mat& res) {
        LiftCondition c;
        c.name = name;
        c.residual = res.max_abs();
        c.ok = is_exact(f) ? res.is_zero() : c.residual <= tol * scale;
        lift.conditions.push_back(c);
    };

    // the four equivalent conditions for the lift of the symplectic form
    cond("G2 = -G1", lift.G2 + lift.G1);
    {
        Mat expected(2 * n + r, 2 * n + r, f);
        expected.set_block(0, n, d.G);
        expected.set_block(n, 0, -d.G);
        expected.set_block(2 * n, 2 * n, d.omega.matrix);
        cond("F block form", lift.F - expected);
    }
    cond("GA-symmetry", d.G * d.A - d.A.transpose() * d.G);
    cond("GB-symmetry", d.G * d.B - d.B.transpose() * d.G);
    {
        ClassicalDatum c = iota(d);
        cond("J = -Omega^{-1} I^T G", c.J + d.omega.inv * d.I.transpose() * d.G);
    }

    // the commuting squares, expanded in the (x, y, z) coefficients
    MonadMaps mm = build_monad(iota(d));
    double worst1 = 0.0, worst2 = 0.0;
    const Mat* alphas[3] = {&mm.alpha_x, &mm.alpha_y, &mm.alpha_z};
    const Mat* betas[3] = {&mm.beta_x, &mm.beta_y, &mm.beta_z};
    for (int i = 0; i < 3; ++i) {
        Mat s1 = lift.F * (*alphas[i]) - betas[i]->transpose() * lift.G1;
        Mat s2 = lift.G2 * (*betas[i]) - alphas[i]->transpose() * lift.F;
        worst1 = std::max(worst1, s1.max_abs());
        worst2 = std::max(worst2, s2.max_abs());
    }
    lift.square1_residual = worst1;
    lift.square2_residual = worst2;
    bool squares_ok = is_exact(f) ? (worst1 == 0.0 && worst2 == 0.0)
                                  : (worst1 <= tol * scale && worst2 <= tol * scale);
    lift.ok = squares_ok;
    for (const auto& c : lift.conditions) lift.ok = lift.ok && c.ok;
    return lift;
}

}  // namespace adhm
