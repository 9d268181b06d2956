#include "adhm/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace adhm {

void UPoly::trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

Scalar UPoly::eval(const Scalar& t) const {
    Scalar acc = Scalar::zero(field);
    for (int i = degree(); i >= 0; --i) acc = acc * t + c[i];
    return acc;
}

UPoly UPoly::to_field(FieldKind k) const {
    UPoly p;
    p.field = k;
    for (const auto& s : c) p.c.push_back(s.to_field(k));
    return p;
}

UPoly charpoly(const Mat& a) {
    if (a.rows() != a.cols()) throw ShapeError("charpoly: not square");
    const int n = a.rows();
    const FieldKind f = a.field();
    UPoly p;
    p.field = f;
    p.c.assign(n + 1, Scalar::zero(f));
    p.c[n] = Scalar::one(f);
    if (n == 0) return p;
    // Faddeev-LeVerrier; the division by k is exact over the rationals.
    Mat m = a;
    Scalar ck = Scalar::zero(f);
    for (int k = 1; k <= n; ++k) {
        if (k > 1) m = a * (m + Mat::identity(n, f).scaled(ck));
        Scalar tr = Scalar::zero(f);
        for (int i = 0; i < n; ++i) tr += m.at(i, i);
        ck = -(tr / Scalar::integer(k, f));
        p.c[n - k] = ck;
    }
    return p;
}

int minpoly_degree(const Mat& a, double tol) {
    if (a.rows() != a.cols()) throw ShapeError("minpoly_degree: not square");
    const int n = a.rows();
    if (n == 0) return 0;
    Mat power = Mat::identity(n, a.field());
    Mat stack = vec_rowmajor(power);
    for (int d = 1; d <= n; ++d) {
        power = power * a;
        stack = hstack(stack, vec_rowmajor(power));
        if (rank(stack, tol) < d + 1) return d;
    }
    return n;
}

Scalar poly_resultant(const UPoly& p, const UPoly& q) {
    UPoly a = p, b = q;
    a.trim();
    b.trim();
    const FieldKind f = p.field;
    int dp = a.degree(), dq = b.degree();
    if (dp < 0 || dq < 0) return Scalar::zero(f);
    if (dp == 0) {
        Scalar r = Scalar::one(f);
        for (int i = 0; i < dq; ++i) r *= a.c[0];
        return r;
    }
    if (dq == 0) {
        Scalar r = Scalar::one(f);
        for (int i = 0; i < dp; ++i) r *= b.c[0];
        return r;
    }
    Mat syl(dp + dq, dp + dq, f);
    for (int i = 0; i < dq; ++i)
        for (int j = 0; j <= dp; ++j) syl.at(i, i + j) = a.c[dp - j];
    for (int i = 0; i < dp; ++i)
        for (int j = 0; j <= dq; ++j) syl.at(dq + i, i + j) = b.c[dq - j];
    return determinant(syl);
}

bool spectra_intersect(const Mat& a, const Mat& b, double tol) {
    if (a.rows() == 0 || b.rows() == 0) return false;
    UPoly pa = charpoly(a), pb = charpoly(b);
    if (is_exact(a.field()) && is_exact(b.field())) {
        FieldKind f = (a.field() == FieldKind::GaussianRational ||
                       b.field() == FieldKind::GaussianRational)
                          ? FieldKind::GaussianRational
                          : FieldKind::Rational;
        return poly_resultant(pa.to_field(f), pb.to_field(f)).is_zero();
    }
    auto ra = poly_roots(pa);
    auto rb = poly_roots(pb);
    double scale = std::max(1.0, std::max(a.max_abs(), b.max_abs()));
    for (const auto& x : ra)
        for (const auto& y : rb)
            if (std::abs(x - y) <= std::sqrt(tol) * scale) return true;
    return false;
}

std::vector<std::complex<double>> poly_roots(const UPoly& p) {
    UPoly q = p.to_field(FieldKind::Complex64);
    q.trim();
    const int n = q.degree();
    std::vector<std::complex<double>> roots;
    if (n <= 0) return roots;
    std::vector<std::complex<double>> c(n + 1);
    for (int i = 0; i <= n; ++i) c[i] = q.c[i].cplx() / q.c[n].cplx();
    double radius = 1.0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i]));
    radius += 1.0;
    roots.resize(n);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> w = seed;
    for (int i = 0; i < n; ++i) {
        roots[i] = radius * w / std::abs(w);
        w *= seed;
        w += std::complex<double>(0.01 * (i + 1), 0.0);
    }
    auto eval = [&](std::complex<double> z) {
        std::complex<double> acc = 0.0;
        for (int i = n; i >= 0; --i) acc = acc * z + c[i];
        return acc;
    };
    for (int iter = 0; iter < 1000; ++iter) {
        double delta = 0.0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> denom = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            if (std::abs(denom) < 1e-300) denom = 1e-300;
            std::complex<double> step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = std::max(delta, std::abs(step));
        }
        if (delta < 1e-14 * radius) break;
    }
    return roots;
}

Subspace krylov_closure(const Subspace& seed, const std::vector<Mat>& ops, double tol) {
    for (const auto& op : ops)
        if (op.rows() != seed.ambient || op.cols() != seed.ambient)
            throw ShapeError("krylov_closure: operator size mismatch");
    Subspace s = Subspace::span(seed.ambient, seed.basis, tol);
    for (int round = 0; round <= seed.ambient; ++round) {
        Mat gen = s.basis;
        for (const auto& op : ops) gen = hstack(gen, op * s.basis);
        Subspace next = Subspace::span(seed.ambient, gen, tol);
        if (next.dim() == s.dim()) return next;
        s = next;
    }
    return s;
}

Subspace commutant(const Mat& a, double tol) {
    if (a.rows() != a.cols()) throw ShapeError("commutant: not square");
    const int n = a.rows();
    Mat id = Mat::identity(n, a.field());
    Mat op = kron(a, id) - kron(id, a.transpose());
    return kernel_basis(op, tol);
}

bool is_nonderogatory(const Mat& a, double tol) {
    if (a.rows() == 0) return true;
    return commutant(a, tol).dim() == a.rows();
}

std::optional<Mat> sylvester_solve(const Mat& S, const Mat& sigma, const Mat& C, double tol) {
    if (S.rows() != S.cols() || sigma.rows() != sigma.cols())
        throw ShapeError("sylvester_solve: S, sigma must be square");
    if (C.rows() != sigma.rows() || C.cols() != S.rows())
        throw ShapeError("sylvester_solve: C shape mismatch");
    const FieldKind f = S.field();
    Mat op = kron(Mat::identity(sigma.rows(), f), S.transpose()) -
             kron(sigma, Mat::identity(S.rows(), f));
    auto x = solve_linear(op, vec_rowmajor(C), tol);
    if (!x) return std::nullopt;
    return unvec_rowmajor(*x, C.rows(), C.cols());
}

std::optional<Mat> solve_bracket_symmetric(const Mat& S, const Mat& C, double tol) {
    if (S.rows() != S.cols() || C.rows() != C.cols() || S.rows() != C.rows())
        throw ShapeError("solve_bracket_symmetric: size mismatch");
    const int n = S.rows();
    const FieldKind f = S.field();
    const int ncols = n * (n + 1) / 2;
    const int nrows = n * (n - 1) / 2;
    if (nrows == 0) return Mat(n, n, f);  // 1x1 brackets vanish; C is antisymmetric hence 0
    Mat op(nrows, ncols, f);
    int col = 0;
    auto fill_col = [&](const Mat& basis) {
        Mat val = S * basis - basis * S;
        int row = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) op.at(row++, col) = val.at(i, j);
        ++col;
    };
    for (int i = 0; i < n; ++i) {
        Mat e(n, n, f);
        e.at(i, i) = Scalar::one(f);
        fill_col(e);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Mat e(n, n, f);
            e.at(i, j) = Scalar::one(f);
            e.at(j, i) = Scalar::one(f);
            fill_col(e);
        }
    Mat rhs(nrows, 1, f);
    int row = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) rhs.at(row++, 0) = C.at(i, j);
    auto x = solve_linear(op, rhs, tol);
    if (!x) return std::nullopt;
    Mat z(n, n, f);
    int idx = 0;
    for (int i = 0; i < n; ++i) z.at(i, i) = x->at(idx++, 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            z.at(i, j) = x->at(idx, 0);
            z.at(j, i) = x->at(idx, 0);
            ++idx;
        }
    return z;
}

// ---------------------------------------------------------------------------
// Joint spectrum (complex floating point).

namespace {

struct Cluster {
    std::complex<double> value;
    int mult;
};

std::vector<Cluster> cluster_roots(std::vector<std::complex<double>> roots, double eps) {
    std::vector<Cluster> out;
    std::vector<bool> used(roots.size(), false);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        std::complex<double> sum = roots[i];
        int cnt = 1;
        used[i] = true;
        bool grew = true;
        while (grew) {
            grew = false;
            std::complex<double> center = sum / static_cast<double>(cnt);
            for (size_t j = 0; j < roots.size(); ++j) {
                if (used[j]) continue;
                if (std::abs(roots[j] - center) <= eps) {
                    sum += roots[j];
                    ++cnt;
                    used[j] = true;
                    grew = true;
                }
            }
        }
        out.push_back({sum / static_cast<double>(cnt), cnt});
    }
    // magnitude-then-angle processing order
    std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
        double ma = std::abs(a.value), mb = std::abs(b.value);
        if (std::abs(ma - mb) > 1e-12 * (1 + ma + mb)) return ma < mb;
        return std::arg(a.value) < std::arg(b.value);
    });
    return out;
}

std::vector<Cluster> eigen_clusters(const Mat& m, double eps_scale) {
    auto roots = poly_roots(charpoly(m));
    return cluster_roots(std::move(roots), eps_scale);
}

// Basis of ker((m - lambda)^mult) with a tolerance ladder until the
// dimension matches the algebraic multiplicity.
Mat generalized_eigenspace(const Mat& m, std::complex<double> lambda, int mult) {
    const int n = m.rows();
    Mat shifted = m - Mat::identity(n, m.field()).scaled(Scalar::complex64(lambda));
    Mat power = Mat::identity(n, m.field());
    for (int i = 0; i < mult; ++i) power = power * shifted;
    for (double tol : {1e-10, 1e-8, 1e-6, 1e-4}) {
        Subspace k = kernel_basis(power, tol);
        if (k.dim() == mult) return k.basis;
    }
    return kernel_basis(power, 1e-8).basis;
}

}  // namespace

std::vector<std::pair<Scalar, Scalar>> joint_spectrum(const Mat& alpha, const Mat& beta,
                                                      double tol) {
    if (alpha.rows() != alpha.cols() || beta.rows() != beta.cols() ||
        alpha.rows() != beta.rows())
        throw ShapeError("joint_spectrum: need square matrices of equal size");
    const int n = alpha.rows();
    // Commutation check, exact when the field allows it.
    Mat comm = alpha * beta - beta * alpha;
    if (is_exact(alpha.field())) {
        if (!comm.is_zero()) throw NotCommutingError("joint_spectrum: [alpha,beta] != 0");
    } else {
        double scale = std::max(1.0, alpha.max_abs()) * std::max(1.0, beta.max_abs());
        if (!comm.is_zero_within(tol * scale))
            throw NotCommutingError("joint_spectrum: commutator above tolerance");
    }
    std::vector<std::pair<Scalar, Scalar>> out;
    if (n == 0) return out;
    Mat a = alpha.to_field(FieldKind::Complex64);
    Mat b = beta.to_field(FieldKind::Complex64);
    double scale = std::max(1.0, std::max(a.max_abs(), b.max_abs()));

    for (double eps_f : {1e-7, 1e-5, 1e-3}) {
        out.clear();
        double eps = eps_f * scale;
        auto clusters = eigen_clusters(a, eps);
        int total = 0;
        bool ok = true;
        for (const auto& cl : clusters) {
            Mat basis = generalized_eigenspace(a, cl.value, cl.mult);
            if (basis.cols() != cl.mult) {
                ok = false;
                break;
            }
            total += cl.mult;
            // beta restricted to the invariant subspace, in basis coordinates
            auto coords = solve_linear(basis, b * basis, 1e-6);
            if (!coords) {
                ok = false;
                break;
            }
            auto sub = eigen_clusters(*coords, eps);
            int subtotal = 0;
            for (const auto& sc : sub) {
                subtotal += sc.mult;
                for (int i = 0; i < sc.mult; ++i)
                    out.emplace_back(Scalar::complex64(cl.value), Scalar::complex64(sc.value));
            }
            if (subtotal != cl.mult) {
                ok = false;
                break;
            }
        }
        if (ok && total == n) break;
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        auto kx = std::array<double, 4>{x.first.cplx().real(), x.first.cplx().imag(),
                                        x.second.cplx().real(), x.second.cplx().imag()};
        auto ky = std::array<double, 4>{y.first.cplx().real(), y.first.cplx().imag(),
                                        y.second.cplx().real(), y.second.cplx().imag()};
        return kx < ky;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Symmetric congruence and factorization.

namespace {

void add_row_col(Mat& w, Mat& e, int dst, int src, const Scalar& f) {
    // w <- L w L^T and e <- L e for L = Id + f * E_{dst,src}
    for (int j = 0; j < w.cols(); ++j) w.at(dst, j) += f * w.at(src, j);
    for (int i = 0; i < w.rows(); ++i) w.at(i, dst) += f * w.at(i, src);
    for (int j = 0; j < e.cols(); ++j) e.at(dst, j) += f * e.at(src, j);
}

void swap_row_col(Mat& w, Mat& e, int i, int j) {
    if (i == j) return;
    for (int c = 0; c < w.cols(); ++c) std::swap(w.at(i, c), w.at(j, c));
    for (int r = 0; r < w.rows(); ++r) std::swap(w.at(r, i), w.at(r, j));
    for (int c = 0; c < e.cols(); ++c) std::swap(e.at(i, c), e.at(j, c));
}

void scale_row_col(Mat& w, Mat& e, int i, const Scalar& f) {
    for (int c = 0; c < w.cols(); ++c) w.at(i, c) *= f;
    for (int r = 0; r < w.rows(); ++r) w.at(r, i) *= f;
    for (int c = 0; c < e.cols(); ++c) e.at(i, c) *= f;
}

// Symmetric Gaussian diagonalization: returns E with E G E^T diagonal.
struct DiagCongruence {
    Mat w;  // the diagonal result
    Mat e;
    int rank = 0;
};

DiagCongruence diagonalize_symmetric(const Mat& G, double tol) {
    const int n = G.rows();
    const FieldKind f = G.field();
    const bool exact = is_exact(f);
    const double thr = tol * std::max(1.0, G.max_abs());
    DiagCongruence d;
    d.w = G;
    d.e = Mat::identity(n, f);
    auto nonzero = [&](const Scalar& s) { return exact ? !s.is_zero() : s.abs() > thr; };
    int k = 0;
    for (; k < n; ++k) {
        // choose a pivot on the diagonal at position >= k
        int piv = -1;
        double best = thr;
        for (int i = k; i < n; ++i) {
            if (!nonzero(d.w.at(i, i))) continue;
            if (exact) {
                piv = i;
                break;
            }
            if (d.w.at(i, i).abs() > best) {
                best = d.w.at(i, i).abs();
                piv = i;
            }
        }
        if (piv < 0) {
            // all tail diagonal zero: look for an off-diagonal entry
            int bi = -1, bj = -1;
            double bbest = thr;
            for (int i = k; i < n && bi < 0; ++i)
                for (int j = i + 1; j < n; ++j) {
                    if (!nonzero(d.w.at(i, j))) continue;
                    if (exact || d.w.at(i, j).abs() > bbest) {
                        bi = i;
                        bj = j;
                        bbest = d.w.at(i, j).abs();
                        if (exact) break;
                    }
                }
            if (bi < 0) break;  // tail is zero: done
            add_row_col(d.w, d.e, bi, bj, Scalar::one(f));  // makes w(bi,bi) = 2 w(bi,bj)
            piv = bi;
        }
        swap_row_col(d.w, d.e, k, piv);
        const Scalar p = d.w.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            if (d.w.at(i, k).is_zero()) continue;
            add_row_col(d.w, d.e, i, k, -(d.w.at(i, k) / p));
        }
        // scrub roundoff in the cleared band
        for (int i = k + 1; i < n; ++i) {
            d.w.at(i, k) = Scalar::zero(f);
            d.w.at(k, i) = Scalar::zero(f);
        }
    }
    d.rank = k;
    // zero out anything below threshold in the float tail
    for (int i = d.rank; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            d.w.at(i, j) = Scalar::zero(f);
            d.w.at(j, i) = Scalar::zero(f);
        }
    return d;
}

}  // namespace

std::optional<Scalar> exact_sqrt(const Scalar& s) {
    if (!s.exact()) return std::nullopt;
    auto rat_sqrt = [](const mpq_class& q) -> std::optional<mpq_class> {
        if (q < 0) return std::nullopt;
        mpz_class num = q.get_num(), den = q.get_den();
        if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
        if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
        mpz_class sn, sd;
        mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
        mpq_class r(sn, sd);
        r.canonicalize();
        return r;
    };
    const mpq_class &a = s.rat_re(), &b = s.rat_im();
    if (s.field() == FieldKind::Rational) {
        auto r = rat_sqrt(a);
        if (!r) return std::nullopt;
        return Scalar::rational(*r);
    }
    // Gaussian rationals: solve (x + iy)^2 = a + ib
    if (b == 0) {
        if (auto r = rat_sqrt(a)) return Scalar::gaussian(*r, 0);
        if (auto r = rat_sqrt(mpq_class(-a))) return Scalar::gaussian(0, *r);
        return std::nullopt;
    }
    auto norm = rat_sqrt(a * a + b * b);
    if (!norm) return std::nullopt;
    auto x2 = mpq_class((a + *norm) / 2);
    auto x = rat_sqrt(x2);
    if (!x || *x == 0) return std::nullopt;
    mpq_class y = b / (2 * (*x));
    Scalar cand = Scalar::gaussian(*x, y);
    if (cand * cand == s) return cand;
    return std::nullopt;
}

Congruence symmetric_congruence(const Mat& G, double tol) {
    if (G.rows() != G.cols()) throw ShapeError("symmetric_congruence: not square");
    const int n = G.rows();
    const FieldKind f = G.field();
    {
        Mat diff = G - G.transpose();
        bool sym = is_exact(f) ? diff.is_zero()
                               : diff.is_zero_within(tol * std::max(1.0, G.max_abs()));
        if (!sym) throw NotSymmetricError("symmetric_congruence: G != G^T");
    }
    DiagCongruence d = diagonalize_symmetric(G, tol);
    Congruence out;
    out.rank = d.rank;
    out.weighted = false;
    for (int i = 0; i < d.rank; ++i) {
        Scalar di = d.w.at(i, i);
        if (is_exact(f)) {
            if (auto s = exact_sqrt(di.inv())) {
                scale_row_col(d.w, d.e, i, *s);
                di = Scalar::one(f);
            } else {
                out.weighted = true;
            }
        } else {
            std::complex<double> root = std::sqrt(di.cplx());
            scale_row_col(d.w, d.e, i, Scalar::complex64(1.0 / root));
            di = Scalar::one(f);
        }
        out.weights.push_back(d.w.at(i, i));
    }
    auto g = inverse(d.e, tol);
    if (!g) throw SingularError("symmetric_congruence: accumulated transform not invertible");
    out.g = g->transpose();
    return out;
}

Mat symmetric_factor(const Mat& g, double tol) {
    if (g.field() != FieldKind::Complex64)
        throw FieldError("symmetric_factor: complex-float field required");
    if (g.rows() != g.cols()) throw ShapeError("symmetric_factor: not square");
    {
        Mat diff = g - g.transpose();
        if (!diff.is_zero_within(tol * std::max(1.0, g.max_abs())))
            throw NotSymmetricError("symmetric_factor: g != g^T");
    }
    DiagCongruence d = diagonalize_symmetric(g, tol);
    if (d.rank < g.rows()) throw SingularError("symmetric_factor: g is singular");
    auto einv = inverse(d.e, tol);
    if (!einv) throw SingularError("symmetric_factor: transform not invertible");
    Mat roots(g.rows(), g.rows(), g.field());
    for (int i = 0; i < g.rows(); ++i)
        roots.at(i, i) = Scalar::complex64(std::sqrt(d.w.at(i, i).cplx()));
    return (*einv) * roots;
}

}  // namespace adhm
