#pragma once

#include "adhm/datum.hpp"

namespace adhm {

struct NormalFormError : std::runtime_error {
    explicit NormalFormError(const std::string& m) : std::runtime_error(m) {}
};

// Image of a datum in the ideal-instanton space: the locally free core of
// charge k = rank(G) plus a length-(n-k) cycle in the affine plane.
struct UhlenbeckPoint {
    SymplecticDatum regular;
    std::vector<std::pair<Scalar, Scalar>> cycle;
    std::vector<GaugeElement> gauge_log;
    bool weighted = false;  // exact normal form kept nonunit weights on G

    int charge() const { return regular.n; }
};

// Point of the real-form matrix space: symmetric A, B with
// [A,B] + I Omega I^T = 0, carried into the symplectic data by G = Id.
struct XDatum {
    int n = 0, r = 0;
    Mat A, B, I;
    SymplecticForm omega;
};

struct DoubleDualResult {
    SymplecticDatum core;
    std::vector<GaugeElement> gauge_log;
    bool weighted = false;
};

// Upper-left blocks after congruence normalization of G; the core is
// valid, stable, with invertible G.
DoubleDualResult extract_double_dual(const SymplecticDatum& d, double tol = kDefaultTol);

// Core plus the joint spectrum of the commuting residual blocks.
UhlenbeckPoint project(const SymplecticDatum& d, double tol = kDefaultTol);

std::pair<int, int> stratum(const SymplecticDatum& d, double tol = kDefaultTol);

SymplecticDatum embed_tau(const XDatum& x, double tol = kDefaultTol);

// Candidate singular points for the monad fiber scan: the cycle points in
// the chart z = 1.
std::vector<std::array<Scalar, 3>> default_singular_candidates(const SymplecticDatum& d,
                                                               double tol = kDefaultTol);

}  // namespace adhm
