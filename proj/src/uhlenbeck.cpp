#include "adhm/uhlenbeck.hpp"

namespace adhm {

DoubleDualResult extract_double_dual(const SymplecticDatum& d, double tol) {
    ValidationReport rep = validate(d, tol);
    if (!rep.ok) throw ValidationError("extract_double_dual: datum fails validation");
    if (!is_stable(d, tol)) throw ValidationError("extract_double_dual: datum is not stable");

    DoubleDualResult out;
    const int k = rank_G(d, tol);
    SymplecticDatum work = d;

    Mat normal(d.n, d.n, d.field());
    for (int i = 0; i < k; ++i) normal.at(i, i) = Scalar::one(d.field());
    if (!work.G.equals(normal)) {
        Congruence cong = symmetric_congruence(work.G, tol);
        GaugeElement ge{cong.g};
        work = act(ge, work, tol);
        out.gauge_log.push_back(ge);
        out.weighted = cong.weighted;
    }

    Mat Gk = work.G.block(0, 0, k, k);
    out.core = assemble_unchecked(k, d.r, work.A.block(0, 0, k, k), work.B.block(0, 0, k, k),
                                  work.I.block(0, 0, k, d.r), Gk, d.omega);
    ValidationReport crep = validate(out.core, tol);
    if (!crep.ok) throw NormalFormError("extract_double_dual: core fails validation");
    if (!is_stable(out.core, tol)) throw NormalFormError("extract_double_dual: core not stable");
    return out;
}

UhlenbeckPoint project(const SymplecticDatum& d, double tol) {
    DoubleDualResult dd = extract_double_dual(d, tol);
    UhlenbeckPoint p;
    p.regular = dd.core;
    p.gauge_log = dd.gauge_log;
    p.weighted = dd.weighted;

    const int k = dd.core.n;
    SymplecticDatum work = d;
    for (const auto& g : dd.gauge_log) work = act(g, work, tol);
    Mat alpha = work.A.block(k, k, d.n - k, d.n - k);
    Mat beta = work.B.block(k, k, d.n - k, d.n - k);
    p.cycle = joint_spectrum(alpha, beta, tol);
    if (static_cast<int>(p.cycle.size()) + k != d.n)
        throw NormalFormError("project: charge conservation failed");
    return p;
}

std::pair<int, int> stratum(const SymplecticDatum& d, double tol) {
    ValidationReport rep = validate(d, tol);
    if (!rep.ok) throw ValidationError("stratum: datum fails validation");
    int k = rank_G(d, tol);
    return {k, d.n - k};
}

SymplecticDatum embed_tau(const XDatum& x, double tol) {
    if (x.A.rows() != x.n || x.B.rows() != x.n || x.I.rows() != x.n || x.I.cols() != x.r)
        throw ShapeError("embed_tau: shape mismatch");
    // symmetry of A and B supplies the G-symmetries; the displayed
    // equation [A,B] + I Omega I^T = 0 is the ADHM equation at G = Id
    return make_datum(x.n, x.r, x.A, x.B, x.I, Mat::identity(x.n, x.A.field()), x.omega, tol);
}

std::vector<std::array<Scalar, 3>> default_singular_candidates(const SymplecticDatum& d,
                                                               double tol) {
    UhlenbeckPoint p = project(d, tol);
    const FieldKind f = FieldKind::Complex64;
    std::vector<std::array<Scalar, 3>> out;
    for (const auto& [a, b] : p.cycle)
        out.push_back({a.to_field(f), b.to_field(f), Scalar::one(f)});
    return out;
}

}  // namespace adhm
