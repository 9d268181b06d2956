#include "adhm/deform.hpp"

#include <algorithm>

namespace adhm {

namespace {

// Solutions g of gA = A^T g, as matrices.
std::vector<Mat> transposer_space(const Mat& A, double tol) {
    const int n = A.rows();
    const FieldKind f = A.field();
    Mat id = Mat::identity(n, f);
    Mat op = kron(id, A.transpose()) - kron(A.transpose(), id);
    Subspace ker = kernel_basis(op, tol);
    std::vector<Mat> out;
    for (int j = 0; j < ker.dim(); ++j)
        out.push_back(unvec_rowmajor(ker.basis.block(0, j, n * n, 1), n, n));
    return out;
}

std::optional<Mat> pick_invertible_combo(const std::vector<Mat>& basis, double tol) {
    if (basis.empty()) return std::nullopt;
    for (const auto& m : basis)
        if (inverse(m, tol)) return m;
    Rng rng = make_rng(0x5eedULL);
    const FieldKind f = basis.front().field();
    for (int attempt = 0; attempt < 64; ++attempt) {
        Mat combo(basis.front().rows(), basis.front().cols(), f);
        for (const auto& m : basis) combo = combo + m.scaled(rng.rational(3, 2).to_field(f));
        if (inverse(combo, tol)) return combo;
    }
    return std::nullopt;
}

}  // namespace

SymmetrizedPair symmetrize_pair(const Mat& A, const Mat& B, double tol) {
    if (A.field() != FieldKind::Complex64)
        throw FieldError("symmetrize_pair: complex-float field required");
    double scale = std::max(1.0, A.max_abs()) * std::max(1.0, B.max_abs());
    if (!(A * B - B * A).is_zero_within(tol * scale))
        throw NotCommutingError("symmetrize_pair: [A,B] != 0");
    if (!is_nonderogatory(A, tol))
        throw NotNonderogatoryError("symmetrize_pair: A is derogatory");
    auto basis = transposer_space(A, tol);
    auto g = pick_invertible_combo(basis, tol);
    if (!g) throw SingularError("symmetrize_pair: no invertible symmetric transposer found");
    // every transposer of a nonderogatory matrix is symmetric; scrub roundoff
    Mat gs = (*g + g->transpose()).scaled(Scalar::complex64(0.5));
    Mat s = symmetric_factor(gs, tol);
    auto sinv = inverse(s, tol);
    if (!sinv) throw SingularError("symmetrize_pair: factor not invertible");
    Mat h = s.transpose();
    Mat hinv = sinv->transpose();
    SymmetrizedPair out;
    out.s = s;
    out.A_sym = h * A * hinv;
    out.B_sym = h * B * hinv;
    return out;
}

std::optional<Mat> try_exact_symmetrizer(const Mat& A, const Mat& B, double tol) {
    if (!is_exact(A.field())) return std::nullopt;
    if (!(A * B - B * A).is_zero()) return std::nullopt;
    auto basis = transposer_space(A, tol);
    Rng rng = make_rng(0x7a3fULL);
    std::vector<Mat> candidates = basis;
    for (int attempt = 0; attempt < 16; ++attempt) {
        Mat combo(A.rows(), A.cols(), A.field());
        for (const auto& m : basis)
            combo = combo + m.scaled(rng.rational(3, 2).to_field(A.field()));
        candidates.push_back(combo);
    }
    for (const auto& g : candidates) {
        if (!g.equals(g.transpose())) continue;
        if (!inverse(g, tol)) continue;
        // need g = s s^T within the field: the congruence normal form
        // reaches the identity exactly when the weights have exact square
        // roots, and then c.g^T c.g = g
        std::optional<Congruence> c;
        try {
            c = symmetric_congruence(g, tol);
        } catch (const std::exception&) {
            continue;
        }
        if (c->weighted || c->rank < g.rows()) continue;
        Mat s = c->g.transpose();
        if (!(s * s.transpose() - g).is_zero()) continue;
        Mat h = s.transpose();
        auto hinv = inverse(h, tol);
        if (!hinv) continue;
        Mat As = h * A * (*hinv);
        Mat Bs = h * B * (*hinv);
        if (As.equals(As.transpose()) && Bs.equals(Bs.transpose())) return s;
    }
    return std::nullopt;
}

Mat find_nonderogatory_commuting(const Mat& B, Rng& rng, int budget) {
    const int n = B.rows();
    const FieldKind f = B.field();
    if (n == 0) return Mat(0, 0, f);
    if (is_nonderogatory(B)) return B;
    Subspace comm = commutant(B);
    for (int attempt = 0; attempt < budget; ++attempt) {
        Mat combo(n, n, f);
        for (int j = 0; j < comm.dim(); ++j) {
            Mat basis = unvec_rowmajor(comm.basis.block(0, j, n * n, 1), n, n);
            combo = combo + basis.scaled(rng.rational(4, 3).to_field(f));
        }
        if (is_nonderogatory(combo)) return combo;
    }
    throw SearchExhaustedError("find_nonderogatory_commuting: sampling budget spent");
}

std::optional<ReachabilityWitness> reachability_decompose(const Mat& T, const Subspace& L,
                                                          const Mat& v, double tol) {
    if (T.rows() != T.cols()) throw ShapeError("reachability: T must be square");
    if (L.ambient != T.rows() || v.rows() != T.rows())
        throw ShapeError("reachability: ambient mismatch");
    const int m = T.rows();
    const int ld = L.dim();
    if (ld == 0) {
        if (v.is_zero()) return ReachabilityWitness{};
        return std::nullopt;
    }
    Mat stacked = L.basis;
    Mat power = L.basis;
    for (int i = 1; i < m; ++i) {
        power = T * power;
        stacked = hstack(stacked, power);
    }
    auto x = solve_linear(stacked, v, tol);
    if (!x) return std::nullopt;
    ReachabilityWitness w;
    for (int i = 0; i < m; ++i)
        w.l_parts.push_back(L.basis * x->block(i * ld, 0, ld, 1));
    return w;
}

std::optional<ReachabilityCurve> curve_from_reachability(const Mat& T, const Subspace& L,
                                                         const Mat& v, double tol) {
    auto w = reachability_decompose(T, L, v, tol);
    if (!w) return std::nullopt;
    const int m = T.rows();
    const FieldKind f = T.field();
    ReachabilityCurve out;
    out.witness = *w;
    out.r_t = PolyMat(m, 1, f);
    out.l_t = PolyMat(m, 1, f);
    if (w->l_parts.empty()) return out;  // v = 0 in a zero-dimensional L
    // r(t) = sum_{i>=1} t^i (sum_{j>=i} T^{j-i} l_j), l(t) = -sum t^{i+1} l_i
    for (int i = 1; i <= m - 1; ++i) {
        Mat acc(m, 1, f);
        Mat power = Mat::identity(m, f);
        for (int j = i; j <= m - 1; ++j) {
            acc = acc + power * w->l_parts[j];
            power = T * power;
        }
        out.r_t.set_coeff(i, acc);
    }
    for (int i = 0; i <= m - 1; ++i) out.l_t.set_coeff(i + 1, -w->l_parts[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Deformation pipelines.

namespace {

struct Chart {
    SymplecticDatum work;  // gauged (and for corank one, translated) datum
    std::vector<GaugeElement> gauges;
    Scalar shift_a, shift_b;  // added back onto the emitted curve
    int k = 0;                // rank of G
    CertFlag flag = CertFlag::EXACT_CERTIFIED;
};

Mat block_Ab(const Chart& c) { return c.work.A.block(0, 0, c.k, c.k); }
Mat block_a(const Chart& c) { return c.work.A.block(c.k, 0, c.work.n - c.k, c.k); }
Mat block_alpha(const Chart& c) {
    return c.work.A.block(c.k, c.k, c.work.n - c.k, c.work.n - c.k);
}
Mat block_Bb(const Chart& c) { return c.work.B.block(0, 0, c.k, c.k); }
Mat block_b(const Chart& c) { return c.work.B.block(c.k, 0, c.work.n - c.k, c.k); }
Mat block_beta(const Chart& c) {
    return c.work.B.block(c.k, c.k, c.work.n - c.k, c.work.n - c.k);
}
Mat block_X(const Chart& c) { return c.work.I.block(c.k, 0, c.work.n - c.k, c.work.r); }

void apply_gauge(Chart& c, const Mat& g, double tol) {
    GaugeElement ge{g};
    c.work = act(ge, c.work, tol);
    c.gauges.push_back(ge);
}

bool mat_is_zero(const Mat& m, double tol) {
    return is_exact(m.field()) ? m.is_zero() : m.is_zero_within(tol * std::max(1.0, m.max_abs()));
}

// Bring G to diag(1_k, 0) (gauge logged); zero the residual diagonal
// entries by a plane translation when the residual block is a scalar.
Chart build_chart(const SymplecticDatum& d, bool translate_scalar_tail, double tol) {
    Chart c;
    c.work = d;
    c.shift_a = Scalar::zero(d.field());
    c.shift_b = Scalar::zero(d.field());
    c.k = rank_G(d, tol);

    Mat normal(d.n, d.n, d.field());
    for (int i = 0; i < c.k; ++i) normal.at(i, i) = Scalar::one(d.field());
    if (!c.work.G.equals(normal)) {
        Congruence cong = symmetric_congruence(c.work.G, tol);
        if (cong.weighted)
            throw StageError("normal form",
                             "G needs square roots missing from the exact field");
        apply_gauge(c, cong.g, tol);
        if (!mat_is_zero(c.work.G - normal, tol))
            throw StageError("normal form", "congruence did not reach diag(1_k, 0)");
    }

    const int m = d.n - c.k;
    if (translate_scalar_tail && m == 1) {
        // the affine-plane action: subtract the (2,2) scalars of A and B
        c.shift_a = block_alpha(c).at(0, 0);
        c.shift_b = block_beta(c).at(0, 0);
        Mat id = Mat::identity(d.n, d.field());
        c.work.A = c.work.A - id.scaled(c.shift_a);
        c.work.B = c.work.B - id.scaled(c.shift_b);
    }
    return c;
}

// Gauge [[1,0],[v,1]] moves a -> a + vA - alpha v, b -> b + vB - beta v,
// X -> X + vI and fixes G.
void apply_corner_gauge(Chart& c, const Mat& v, double tol) {
    Mat g = Mat::identity(c.work.n, c.work.field());
    g.set_block(c.k, 0, v);
    apply_gauge(c, g, tol);
}

// Gauge diag(1_k, h) conjugating the residual blocks.
void apply_tail_gauge(Chart& c, const Mat& h, double tol) {
    Mat g = Mat::identity(c.work.n, c.work.field());
    g.set_block(c.k, c.k, h);
    apply_gauge(c, g, tol);
}

enum class Orientation { DEFORM_A, DEFORM_B };

DeformationCurve emit_family(const Chart& c, Orientation o, const Mat& chi, CurveCase kind,
                             double tol) {
    const int n = c.work.n, k = c.k, m = n - k;
    const FieldKind f = c.work.field();
    Mat id = Mat::identity(n, f);

    Mat A0 = c.work.A + id.scaled(c.shift_a);
    Mat B0 = c.work.B + id.scaled(c.shift_b);
    Mat A1(n, n, f), B1(n, n, f);
    if (o == Orientation::DEFORM_A) {
        A1.set_block(0, k, block_a(c).transpose());
        A1.set_block(k, k, chi);
    } else {
        B1.set_block(0, k, block_b(c).transpose());
        B1.set_block(k, k, chi);
    }
    Mat G0(n, n, f), G1(n, n, f);
    for (int i = 0; i < k; ++i) G0.at(i, i) = Scalar::one(f);
    for (int i = k; i < n; ++i) G1.at(i, i) = Scalar::one(f);

    DeformationCurve curve;
    curve.A_t = PolyMat::linear(A0, A1);
    curve.B_t = PolyMat::linear(B0, B1);
    curve.I_t = PolyMat::constant(c.work.I);
    curve.G_t = m == 0 ? PolyMat::constant(c.work.G) : PolyMat::linear(G0, G1);
    curve.gauge_log = c.gauges;
    curve.kind = kind;
    curve.flag = c.flag;
    (void)tol;
    return curve;
}

std::string orientation_name(Orientation o) {
    return o == Orientation::DEFORM_A ? "deform-A" : "deform-B";
}

// One orientation of the block family. DEFORM_A needs b = 0 and beta
// symmetric nonderogatory; DEFORM_B mirrors it with a = 0 and alpha.
// Preparation is by gauges only, so the emitted curve passes through the
// gauged input exactly.
std::optional<DeformationCurve> try_orientation(Chart c, Orientation o, CurveCase kind,
                                                std::vector<std::string>& diagnostics,
                                                double tol) {
    const int m = c.work.n - c.k;
    const FieldKind f = c.work.field();
    auto diag = [&](const std::string& msg) {
        diagnostics.push_back(orientation_name(o) + ": " + msg);
    };

    // 1. kill the corner row that must vanish
    Mat corner = o == Orientation::DEFORM_A ? block_b(c) : block_a(c);
    if (!mat_is_zero(corner, tol)) {
        Mat S = o == Orientation::DEFORM_A ? block_Bb(c) : block_Ab(c);
        Mat sigma = o == Orientation::DEFORM_A ? block_beta(c) : block_alpha(c);
        auto v = sylvester_solve(S, sigma, -corner, tol);
        if (!v) {
            diag("corner row is not in the image of the Sylvester operator");
            return std::nullopt;
        }
        apply_corner_gauge(c, *v, tol);
        corner = o == Orientation::DEFORM_A ? block_b(c) : block_a(c);
        if (!mat_is_zero(corner, tol)) {
            diag("corner kill gauge failed to zero the row");
            return std::nullopt;
        }
    }

    // 2. the residual pair must be symmetric; conjugate if not
    Mat anchor = o == Orientation::DEFORM_A ? block_beta(c) : block_alpha(c);
    Mat other = o == Orientation::DEFORM_A ? block_alpha(c) : block_beta(c);
    bool sym = mat_is_zero(anchor - anchor.transpose(), tol) &&
               mat_is_zero(other - other.transpose(), tol);
    if (!sym) {
        if (is_exact(f)) {
            auto s = try_exact_symmetrizer(anchor, other, tol);
            if (!s) {
                diag("residual pair not symmetric and no exact symmetrizer found");
                return std::nullopt;
            }
            apply_tail_gauge(c, s->transpose(), tol);
        } else {
            try {
                SymmetrizedPair sp = symmetrize_pair(anchor, other, tol);
                apply_tail_gauge(c, sp.s.transpose(), tol);
            } catch (const std::exception& e) {
                diag(std::string("symmetrization failed: ") + e.what());
                return std::nullopt;
            }
        }
        anchor = o == Orientation::DEFORM_A ? block_beta(c) : block_alpha(c);
        other = o == Orientation::DEFORM_A ? block_alpha(c) : block_beta(c);
        if (!mat_is_zero(anchor - anchor.transpose(), tol) ||
            !mat_is_zero(other - other.transpose(), tol)) {
            diag("symmetrizing gauge left a non-symmetric residual block");
            return std::nullopt;
        }
    }

    // 3. the corner correction: [chi, beta] = X Omega^{-1} X^T (DEFORM_A)
    //    or [alpha, chi] = X Omega^{-1} X^T (DEFORM_B)
    Mat X = block_X(c);
    Mat target = X * c.work.omega.inv * X.transpose();
    std::optional<Mat> chi;
    if (m == 0)
        chi = Mat(0, 0, f);
    else if (o == Orientation::DEFORM_A)
        chi = solve_bracket_symmetric(block_beta(c), -target, tol);
    else
        chi = solve_bracket_symmetric(block_alpha(c), target, tol);
    if (!chi) {
        diag("no symmetric bracket solution for the residual correction");
        return std::nullopt;
    }
    return emit_family(c, o, *chi, kind, tol);
}

DeformationCurve run_pipeline(const SymplecticDatum& d, CurveCase kind, bool translate,
                              Orientation first, Rng& rng, double tol) {
    ValidationReport rep = validate(d, tol);
    if (!rep.ok) throw StageError("input", "datum fails validation");
    if (!is_stable(d, tol)) throw StageError("input", "datum is not stable");

    const int k = rank_G(d, tol);
    if (k == d.n) {
        DeformationCurve c;
        c.A_t = PolyMat::constant(d.A);
        c.B_t = PolyMat::constant(d.B);
        c.I_t = PolyMat::constant(d.I);
        c.G_t = PolyMat::constant(d.G);
        c.kind = CurveCase::CONSTANT;
        c.flag = is_exact(d.field()) ? CertFlag::EXACT_CERTIFIED : CertFlag::FLOAT_CERTIFIED;
        return c;
    }

    std::vector<std::string> diagnostics;
    auto attempt = [&](const SymplecticDatum& datum, CertFlag flag) -> std::optional<DeformationCurve> {
        Chart chart;
        try {
            chart = build_chart(datum, translate, tol);
        } catch (const StageError& e) {
            diagnostics.push_back(e.what());
            return std::nullopt;
        }
        chart.flag = flag;
        Orientation lead = first;
        // an already-vanishing corner row means that orientation needs no
        // preparatory gauge at all
        if (mat_is_zero(block_b(chart), tol) && !mat_is_zero(block_a(chart), tol))
            lead = Orientation::DEFORM_A;
        else if (mat_is_zero(block_a(chart), tol) && !mat_is_zero(block_b(chart), tol))
            lead = Orientation::DEFORM_B;
        Orientation second =
            lead == Orientation::DEFORM_A ? Orientation::DEFORM_B : Orientation::DEFORM_A;
        if (auto c = try_orientation(chart, lead, kind, diagnostics, tol)) return c;
        if (auto c = try_orientation(chart, second, kind, diagnostics, tol)) return c;
        return std::nullopt;
    };

    std::optional<DeformationCurve> curve;
    if (is_exact(d.field())) {
        curve = attempt(d, CertFlag::EXACT_CERTIFIED);
        if (!curve) {
            // retry with floating-point gauges (square roots available)
            curve = attempt(d.to_field(FieldKind::Complex64), CertFlag::FLOAT_CERTIFIED);
        }
    } else {
        curve = attempt(d, CertFlag::FLOAT_CERTIFIED);
    }
    if (!curve) {
        std::string all;
        for (const auto& s : diagnostics) all += (all.empty() ? "" : "; ") + s;
        throw StageError("pipeline", all.empty() ? "no orientation applied" : all);
    }

    // never emit an uncertified curve
    double check_tol = curve->flag == CertFlag::FLOAT_CERTIFIED ? 1e-8 : tol;
    SymplecticDatum reference =
        curve->flag == CertFlag::FLOAT_CERTIFIED && is_exact(d.field())
            ? d.to_field(FieldKind::Complex64)
            : d;
    CurveCertificate cert = validate_curve(*curve, reference, rng, check_tol);
    if (!cert.green()) {
        std::string all;
        for (const auto& s : cert.failures) all += (all.empty() ? "" : "; ") + s;
        throw StageError("certificate", all);
    }
    return *curve;
}

}  // namespace

DeformationCurve deform_g_zero(const SymplecticDatum& d, Rng& rng, double tol) {
    if (rank_G(d, tol) != 0) throw StageError("dispatch", "G is not zero");
    return run_pipeline(d, CurveCase::G_ZERO, false, Orientation::DEFORM_B, rng, tol);
}

DeformationCurve deform_corank_one(const SymplecticDatum& d, Rng& rng, double tol) {
    if (rank_G(d, tol) != d.n - 1) throw StageError("dispatch", "rank(G) is not n-1");
    return run_pipeline(d, CurveCase::CORANK_ONE, true, Orientation::DEFORM_A, rng, tol);
}

DeformationCurve deform_general(const SymplecticDatum& d, Rng& rng, double tol) {
    const int k = rank_G(d, tol);
    if (k == d.n) return run_pipeline(d, CurveCase::CONSTANT, false, Orientation::DEFORM_A, rng, tol);
    if (k == 0) return deform_g_zero(d, rng, tol);
    if (k == d.n - 1) return deform_corank_one(d, rng, tol);
    return run_pipeline(d, CurveCase::GENERAL, false, Orientation::DEFORM_A, rng, tol);
}

// ---------------------------------------------------------------------------
// Certification.

Mat eval_curve_G(const DeformationCurve& c, const Scalar& t) { return c.G_t.eval(t); }

SymplecticDatum eval_curve(const DeformationCurve& c, const Scalar& t,
                           const SymplecticForm& omega) {
    Mat A = c.A_t.eval(t), B = c.B_t.eval(t), I = c.I_t.eval(t), G = c.G_t.eval(t);
    return assemble_unchecked(A.rows(), I.cols(), A, B, I, G, omega);
}

namespace {

// determinant of G_t as a polynomial in t, by exact interpolation
std::vector<Scalar> det_poly(const PolyMat& G) {
    const int n = G.rows();
    const FieldKind f = G.field();
    int deg = std::max(0, n * std::max(G.degree(), 0));
    std::vector<Scalar> xs, ys;
    for (int i = 0; i <= deg; ++i) {
        Scalar x = Scalar::integer(i, f);
        xs.push_back(x);
        ys.push_back(determinant(G.eval(x)));
    }
    // Lagrange interpolation
    std::vector<Scalar> coeffs(deg + 1, Scalar::zero(f));
    for (int i = 0; i <= deg; ++i) {
        // basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j)
        std::vector<Scalar> basis{Scalar::one(f)};
        Scalar denom = Scalar::one(f);
        for (int j = 0; j <= deg; ++j) {
            if (j == i) continue;
            std::vector<Scalar> next(basis.size() + 1, Scalar::zero(f));
            for (size_t u = 0; u < basis.size(); ++u) {
                next[u + 1] += basis[u];
                next[u] -= basis[u] * xs[j];
            }
            basis = next;
            denom *= xs[i] - xs[j];
        }
        Scalar w = ys[i] / denom;
        for (size_t u = 0; u < basis.size(); ++u) coeffs[u] += basis[u] * w;
    }
    return coeffs;
}

}  // namespace

CurveCertificate validate_curve(const DeformationCurve& c, const SymplecticDatum& input,
                                Rng& rng, double tol) {
    CurveCertificate cert;
    const FieldKind f = c.A_t.field();
    SymplecticForm omega = input.omega.to_field(f);

    // (i) the four equations as polynomial identities in t
    PolyMat At = c.A_t, Bt = c.B_t, It = c.I_t, Gt = c.G_t;
    PolyMat omega_inv = PolyMat::constant(omega.inv);
    PolyMat r_sym = Gt - Gt.transpose();
    PolyMat r_ga = Gt * At - At.transpose() * Gt;
    PolyMat r_gb = Gt * Bt - Bt.transpose() * Gt;
    PolyMat r_adhm = At * Bt - Bt * At - It * omega_inv * It.transpose() * Gt;
    cert.worst_residual = std::max({r_sym.max_abs(), r_ga.max_abs(), r_gb.max_abs(),
                                    r_adhm.max_abs()});
    cert.residuals_zero = true;
    auto check_res = [&](const PolyMat& r, const char* name) {
        if (!r.residual_is_zero(tol)) {
            cert.residuals_zero = false;
            cert.failures.push_back(std::string("equation residual nonzero in t: ") + name);
        }
    };
    check_res(r_sym, "G-symmetry");
    check_res(r_ga, "GA-symmetry");
    check_res(r_gb, "GB-symmetry");
    check_res(r_adhm, "ADHM");

    // (ii) t = 0 must reproduce the gauged input exactly
    {
        SymplecticDatum ref = input.field() == f ? input : input.to_field(f);
        for (const auto& g : c.gauge_log) ref = act(g, ref, tol);
        SymplecticDatum at0 = eval_curve(c, Scalar::zero(f), omega);
        Mat diffs[4] = {at0.A - ref.A, at0.B - ref.B, at0.I - ref.I, at0.G - ref.G};
        cert.base_matches = true;
        for (const auto& m : diffs)
            if (!(is_exact(f) ? m.is_zero() : m.is_zero_within(tol * std::max(1.0, m.max_abs() + 1)))) {
                cert.base_matches = false;
                cert.failures.push_back("curve at t=0 differs from the gauged input");
                break;
            }
    }

    // (iii) det(G_t): not identically zero, vanishing order n - rank(G_in)
    {
        std::vector<Scalar> det = det_poly(c.G_t);
        double scale = 1.0;
        for (const auto& s : det) scale = std::max(scale, s.abs());
        cert.det_order = -1;
        for (size_t i = 0; i < det.size(); ++i) {
            bool nz = is_exact(f) ? !det[i].is_zero() : det[i].abs() > tol * scale;
            if (nz) {
                cert.det_order = static_cast<int>(i);
                break;
            }
        }
        cert.expected_order = input.n - rank_G(input, tol);
        cert.det_order_ok = (cert.det_order == cert.expected_order);
        if (cert.det_order < 0)
            cert.failures.push_back("det(G_t) is identically zero");
        else if (!cert.det_order_ok)
            cert.failures.push_back("det(G_t) vanishing order " + std::to_string(cert.det_order) +
                                    " != expected " + std::to_string(cert.expected_order));
    }

    // (iv) stability at three sampled rational t with det(G_t) != 0
    {
        std::vector<Scalar> det = det_poly(c.G_t);
        auto det_at = [&](const Scalar& t) {
            Scalar acc = Scalar::zero(f);
            for (int i = static_cast<int>(det.size()) - 1; i >= 0; --i) acc = acc * t + det[i];
            return acc;
        };
        int found = 0;
        bool all_stable = true;
        std::vector<Scalar> pool;
        for (long q = 1; q <= 12; ++q) pool.push_back(Scalar::rational(1, q).to_field(f));
        pool.push_back(Scalar::integer(2, f));
        pool.push_back(Scalar::integer(-1, f));
        size_t start = rng.next() % pool.size();
        for (size_t step = 0; step < pool.size() && found < 3 && all_stable; ++step) {
            Scalar t = pool[(start + step) % pool.size()];
            bool nz = is_exact(f) ? !det_at(t).is_zero() : det_at(t).abs() > tol;
            if (!nz) continue;
            SymplecticDatum sample = eval_curve(c, t, omega);
            if (!is_stable(sample, tol)) {
                all_stable = false;
                cert.failures.push_back("curve unstable at t = " + t.str());
                break;
            }
            cert.sampled_t.push_back(t);
            ++found;
        }
        cert.stable_at_samples = all_stable && found == 3;
        if (found < 3 && all_stable)
            cert.failures.push_back("could not find three sample points with det(G_t) != 0");
    }
    return cert;
}

}  // namespace adhm
