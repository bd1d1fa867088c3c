#ifndef HOLOCURVE_GEOMETRY_HPP
#define HOLOCURVE_GEOMETRY_HPP

#include "holocurve/model.hpp"
#include "holocurve/plan.hpp"

namespace holocurve {

/// Jet of the metric H(lambda) = G(lambda)^* F(lambda); entries are
/// polynomial in (lambda, conj lambda) and the jet is exact at the
/// retained orders.
WirtingerJet gram(const Frame& F, const Frame& G, const Point& base, int p, int q);

/// Classical connection Theta = H^{-1} sum_i d_i H.
WirtingerJet classical_connection(const WirtingerJet& H);

/// Classical curvature K = -sum_j dbar_j (H^{-1} sum_i d_i H); the displayed
/// double-sum convention, which for n = 1 reduces to -d dbar log h.
WirtingerJet classical_curvature(const WirtingerJet& H);

/// Step functor for the classical side: Hol(i) maps X to
/// d_i X + [H^{-1} d_i H, X]; AntiHol(j) maps X to dbar_j X.
StepApply classical_step(const WirtingerJet& H);

/// Sequential (left-to-right) application of the plan to the curvature.
WirtingerJet classical_covariant_derivative(const WirtingerJet& H, const DerivPlan& plan);

/// Pair-sum and split-recursion evaluations of the same plan, for the
/// decomposition checks.
WirtingerJet classical_cov_pair_sum(const WirtingerJet& H, const DerivPlan& plan);
WirtingerJet classical_cov_recursion(const WirtingerJet& H, const DerivPlan& plan);

struct DecompositionCheck {
    double recursion_vs_pair_sum = 0.0;
    /// Gap between the sequential full-plan evaluation and the pair sum;
    /// nonzero in general for mixed multi-coordinate plans. Reported, not
    /// asserted.
    double sequential_vs_pair_sum = 0.0;
};

DecompositionCheck classical_pair_decomposition_check(const WirtingerJet& H, const DerivPlan& plan);

/// Upper-triangular holomorphic matrix in one variable, entries stored as
/// scalar polynomials.
struct PolynomialMatrix {
    int n = 0;
    std::vector<std::vector<ScalarPoly>> entries;  // row-major

    CMatrix eval(const Point& z) const;
    WirtingerJet eval_jet(const Point& base, int p, int q) const;  // holomorphic
};

/// phi_{i,j} = C(j,i) phi00^{(j-i)} for i <= j, zero below the diagonal
/// (m = 1).
PolynomialMatrix frame_change_matrix(const ScalarPoly& phi00, int n);

/// G_j = sum_k phi_{k,j} F_k.
Frame apply_frame_change(const Frame& F, const PolynomialMatrix& phi);

struct ConjugationCheck {
    double curvature_conjugation = 0.0;  // K(G) - phi^{-1} K(F) phi at base
    double trace_invariance = 0.0;       // trace K_plan(G) - trace K_plan(F)
};

/// Frame-change covariance of the curvature and frame-independence of the
/// covariant-derivative trace, for H_G = phi^* H_F phi.
ConjugationCheck conjugation_trace_check(const WirtingerJet& H_F, const WirtingerJet& H_G,
                                         const PolynomialMatrix& phi, const DerivPlan& plan);

}  // namespace holocurve

#endif
