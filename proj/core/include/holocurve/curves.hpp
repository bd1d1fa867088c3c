#ifndef HOLOCURVE_CURVES_HPP
#define HOLOCURVE_CURVES_HPP

#include "holocurve/geometry.hpp"

namespace holocurve {

/// Extended holomorphic curve I(lambda) = F (G^* F)^{-1} G^*. With G = F
/// this is the projection-valued (self-adjoint) case.
struct ExtendedCurve {
    Frame F, G;

    int n() const { return F.n(); }
    int dim() const { return F.dim(); }
    int m() const { return F.m(); }
};

/// All jets a curve computation needs at one base point, computed once.
/// FHinv keeps the left factor of I = (F H^{-1}) G^* so rank-n curves can
/// run covariant-derivative steps at D*n cost instead of D*D.
struct CurveJets {
    WirtingerJet F, G, Gadj, H, Hinv, FHinv, I;
};

CurveJets make_curve_jets(const ExtendedCurve& c, const Point& base, int p, int q);

/// Jet of I(lambda) alone.
WirtingerJet curve_eval_jet(const ExtendedCurve& c, const Point& base, int p, int q);

/// Value of I(lambda) by direct evaluation (linear solve).
CMatrix curve_eval(const ExtendedCurve& c, const Point& z);

struct HolomorphyReport {
    // per identity: dI.I = dI, I.dI = 0, I.dbI = dbI, dbI.I = 0
    double d_right = 0.0, d_left = 0.0, dbar_left = 0.0, dbar_right = 0.0;
    double idempotency = 0.0;
    double max_residual() const;
};

/// The four Cauchy-Riemann-type range/kernel identities per coordinate plus
/// idempotency, maximum over the given points.
HolomorphyReport holomorphy_check(const ExtendedCurve& c, const std::vector<Point>& points);

/// Same residuals evaluated on an already-built curve jet (caps >= (1,1)).
HolomorphyReport holomorphy_residuals(const WirtingerJet& Ijet);

/// Extended connection Theta = (dF) H^{-1} G^* - dI.
WirtingerJet extended_connection(const CurveJets& jets);

/// Extended curvature K(I) = (dbar I)(d I), sums over coordinates.
WirtingerJet extended_curvature(const WirtingerJet& Ijet);

/// Same value through the rank-n factorization
/// K = F [ (H^{-1} G^*)' dbar-part * dI ]; avoids the D x D product.
WirtingerJet extended_curvature(const CurveJets& jets);

/// Step functor: Hol(l) maps X to I (d_l X); AntiHol(k) maps X to
/// (dbar_k X) I.
StepApply extended_step(const WirtingerJet& Ijet);

/// Rank-factored steps through I = FHinv * Gadj.
StepApply extended_step(const CurveJets& jets);

/// Sequential application of the plan to the extended curvature.
WirtingerJet extended_covariant_derivative(const WirtingerJet& Ijet, const DerivPlan& plan);
WirtingerJet extended_cov_pair_sum(const WirtingerJet& Ijet, const DerivPlan& plan);
WirtingerJet extended_cov_recursion(const WirtingerJet& Ijet, const DerivPlan& plan);

/// Split-recursion evaluation against the flat sum over elementary pairs
/// with induced sub-plans; also reports how far the sequential full-plan
/// evaluation sits from the pair sum.
DecompositionCheck pair_decomposition_check(const WirtingerJet& Ijet, const DerivPlan& plan);

/// Multi-index Leibniz expansions. Items (1)/(3) expand D^I I and
/// Dbar^J I through the factorization F H^{-1} G^*; items (2)/(4) are the
/// mixed identities with the interior correction sum over 0 < I1 < I.
double leibniz_item1(const CurveJets& jets, const MultiIndex& I);
double leibniz_item3(const CurveJets& jets, const MultiIndex& J);
double leibniz_item2(const WirtingerJet& Ijet, const MultiIndex& I, int jbar_coord);
double leibniz_item4(const WirtingerJet& Ijet, int i_coord, const MultiIndex& J);

/// D^I Dbar^J I as a signed sum of products of pure derivatives of I,
/// generated by replaying the product-rule rewrites; |I|+|J| <= 3.
double monomial_expansion_check(const WirtingerJet& Ijet, const MultiIndex& I,
                                const MultiIndex& J);

struct IntertwineResidual {
    double operator_residual = 0.0;  // K_plan(I) F + F K_plan
    double trace_residual = 0.0;     // trace K_plan(I) + trace K_plan
};

/// Central intertwining identity with matched plans on both sides.
IntertwineResidual intertwining_residual(const ExtendedCurve& c, const DerivPlan& plan,
                                 const Point& base);

/// Curve conjugated by a fixed matrix on C^D (F -> UF, G -> UG).
ExtendedCurve conjugated_curve(const ExtendedCurve& c, const CMatrix& U);

/// Deterministic Haar-like unitary from a seeded generator.
CMatrix random_unitary(int dim, unsigned seed);

}  // namespace holocurve

#endif
