#pragma once

#include "adhm/datum.hpp"

namespace adhm {

struct NotNonderogatoryError : std::runtime_error {
    explicit NotNonderogatoryError(const std::string& m) : std::runtime_error(m) {}
};
struct SearchExhaustedError : std::runtime_error {
    explicit SearchExhaustedError(const std::string& m) : std::runtime_error(m) {}
};
struct StageError : std::runtime_error {
    std::string stage;
    StageError(std::string st, const std::string& diagnostic)
        : std::runtime_error(st + ": " + diagnostic), stage(std::move(st)) {}
};

enum class CurveCase { G_ZERO, CORANK_ONE, GENERAL, CONSTANT };
enum class CertFlag { EXACT_CERTIFIED, FLOAT_CERTIFIED };

// A polynomial curve of quadruples through (the gauged image of) a datum.
// At t = 0 it evaluates to the gauge-transformed input exactly, the four
// defining equations hold identically in t, and det(G_t) vanishes to order
// n - rank(G) at t = 0.
struct DeformationCurve {
    PolyMat A_t, B_t, I_t, G_t;
    std::vector<GaugeElement> gauge_log;
    CurveCase kind = CurveCase::CONSTANT;
    CertFlag flag = CertFlag::EXACT_CERTIFIED;
};

struct ReachabilityWitness {
    std::vector<Mat> l_parts;  // l_0 .. l_{m-1}, columns in L
};

struct CurveCertificate {
    bool residuals_zero = false;
    double worst_residual = 0.0;
    bool base_matches = false;
    int det_order = -1;       // -1 when det(G_t) is identically zero
    int expected_order = 0;
    bool det_order_ok = false;
    std::vector<Scalar> sampled_t;
    bool stable_at_samples = false;
    std::vector<std::string> failures;

    bool green() const {
        return residuals_zero && base_matches && det_order_ok && stable_at_samples;
    }
};

// Conjugating gauge making both members of a commuting pair symmetric
// (complex-float; a nonderogatory first argument anchors the symmetric
// transposer, which is then split as s s^T).
struct SymmetrizedPair {
    Mat s;
    Mat A_sym, B_sym;
};
SymmetrizedPair symmetrize_pair(const Mat& A, const Mat& B, double tol = kDefaultTol);

// Exact-field variant; succeeds when a rational symmetric transposer with
// an in-field square-root factorization exists.
std::optional<Mat> try_exact_symmetrizer(const Mat& A, const Mat& B, double tol = kDefaultTol);

// Nonderogatory N with [N, B] = 0, by seeded sampling in the commutant.
Mat find_nonderogatory_commuting(const Mat& B, Rng& rng, int budget = 64);

// v = sum T^i l_i with l_i in L, when v lies in L + TL + ... + T^{m-1}L.
std::optional<ReachabilityWitness> reachability_decompose(const Mat& T, const Subspace& L,
                                                          const Mat& v,
                                                          double tol = kDefaultTol);

// Curves r, l with r(0) = l(0) = 0, l(t) in L for every coefficient and
// (T - t Id) r(t) = t v + l(t) as a polynomial identity.
struct ReachabilityCurve {
    PolyMat r_t, l_t;
    ReachabilityWitness witness;
};
std::optional<ReachabilityCurve> curve_from_reachability(const Mat& T, const Subspace& L,
                                                         const Mat& v,
                                                         double tol = kDefaultTol);

DeformationCurve deform_g_zero(const SymplecticDatum& d, Rng& rng, double tol = kDefaultTol);
DeformationCurve deform_corank_one(const SymplecticDatum& d, Rng& rng, double tol = kDefaultTol);
DeformationCurve deform_general(const SymplecticDatum& d, Rng& rng, double tol = kDefaultTol);

CurveCertificate validate_curve(const DeformationCurve& c, const SymplecticDatum& input,
                                Rng& rng, double tol = kDefaultTol);

Mat eval_curve_G(const DeformationCurve& c, const Scalar& t);
SymplecticDatum eval_curve(const DeformationCurve& c, const Scalar& t,
                           const SymplecticForm& omega);

}  // namespace adhm
