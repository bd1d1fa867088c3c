#include "doctest.h"
#include "holocurve/curves.hpp"

using namespace holocurve;

namespace {

ExtendedCurve hardy_curve(int N = 60) {
    Frame f{{section_from_kernel(DiagonalKernelSpec::hardy(1, N))}};
    return {f, f};
}

ExtendedCurve hardy_bergman_curve(int N = 60) {
    Frame f{{section_from_kernel(DiagonalKernelSpec::hardy(1, N))}};
    Frame g{{section_from_kernel(DiagonalKernelSpec::bergman(N))}};
    return {f, g};
}

ExtendedCurve da_curve(int N = 8) {
    Frame f{{section_from_kernel(DiagonalKernelSpec::drury_arveson(2, N))}};
    return {f, f};
}

ExtendedCurve da_rank2_curve(int N = 6) {
    Frame f = jet_frame_partial(section_from_kernel(DiagonalKernelSpec::drury_arveson(2, N)), 0);
    return {f, f};
}

const Point z0{Complex(0.0, 0.0)};
const Point z3{Complex(0.3, 0.0)};
const Point zda{Complex(0.3, 0.1), Complex(-0.2, 0.25)};

}  // namespace

TEST_CASE("curve evaluation: projections onto evaluated spans") {
    // constant orthonormal frame -> constant orthogonal projection
    PolynomialSection e0(1, 3), e1(1, 3);
    CVector v0 = CVector::Zero(3), v1 = CVector::Zero(3);
    v0(0) = 1.0;
    v1(1) = 1.0;
    e0.add_term(MultiIndex({0}), v0);
    e1.add_term(MultiIndex({0}), v1);
    Frame cf{{e0, e1}};
    ExtendedCurve cc{cf, cf};
    WirtingerJet Ij = curve_eval_jet(cc, Point{Complex(0.2, 0.1)}, 1, 1);
    CMatrix want = CMatrix::Zero(3, 3);
    want(0, 0) = want(1, 1) = 1.0;
    CHECK(rel_residual(Ij.value(), want) < 1e-15);
    CHECK(Ij.d(0).max_abs() < 1e-15);

    ExtendedCurve h = hardy_curve();
    CMatrix I0 = curve_eval(h, z0);
    CMatrix e00 = CMatrix::Zero(61, 61);
    e00(0, 0) = 1.0;
    CHECK(rel_residual(I0, e00) < 1e-15);

    ExtendedCurve hb = hardy_bergman_curve();
    CHECK(rel_residual(curve_eval(hb, z0), e00) < 1e-15);
}

TEST_CASE("holomorphy identities and the transposed negative control") {
    std::vector<Point> pts{z0, z3, Point{Complex(-0.25, 0.4)}};
    for (const ExtendedCurve& c : {hardy_curve(40), hardy_bergman_curve(40)}) {
        HolomorphyReport rep = holomorphy_check(c, pts);
        CHECK(rep.max_residual() < 1e-9);
        CHECK(rep.idempotency < 1e-10);
    }
    HolomorphyReport da = holomorphy_check(da_curve(), {zda});
    CHECK(da.max_residual() < 1e-9);

    WirtingerJet bad = curve_eval_jet(hardy_bergman_curve(40), z3, 1, 1).transposed();
    CHECK(holomorphy_residuals(bad).max_residual() > 1e-3);
}

TEST_CASE("extended connection identities") {
    PolynomialSection e0(1, 2);
    CVector v0 = CVector::Zero(2);
    v0(0) = 1.0;
    e0.add_term(MultiIndex({0}), v0);
    Frame cf{{e0}};
    CurveJets cj = make_curve_jets(ExtendedCurve{cf, cf}, z3, 2, 1);
    CHECK(extended_connection(cj).max_abs() < 1e-15);

    ExtendedCurve h = hardy_curve();
    CurveJets jets = make_curve_jets(h, z3, 2, 1);
    WirtingerJet Th = extended_connection(jets);
    CHECK(rel_residual(Th.value() * jets.I.value(), Th.value()) < 1e-9);
    CMatrix tcl = classical_connection(jets.H).value();
    CHECK(rel_residual(Th.value() * jets.F.value(), jets.F.value() * tcl) < 1e-9);
}

TEST_CASE("extended curvature at the origin for hardy rank 1") {
    ExtendedCurve h = hardy_curve();
    CurveJets jets = make_curve_jets(h, z0, 1, 1);
    WirtingerJet K = extended_curvature(jets);
    CHECK(rel_residual(K.value(), extended_curvature(jets.I).value()) < 1e-14);
    CVector f0 = jets.F.value().col(0);
    // K(I)(0) F(0) = -F(0) K(0) = +e0
    CHECK(rel_residual(static_cast<CMatrix>(K.value() * f0), static_cast<CMatrix>(f0)) < 1e-12);
    CHECK(std::abs(K.value().trace() - 1.0) < 1e-12);
}

TEST_CASE("covariant derivative: empty plan, range identity") {
    ExtendedCurve h = hardy_curve(40);
    CurveJets jets = make_curve_jets(h, z0, 2, 1);
    WirtingerJet K = extended_curvature(jets);
    CHECK(rel_residual(extended_covariant_derivative(jets.I, DerivPlan{}).value(), K.value()) <
          1e-14);
    DerivPlan hol;
    hol.steps = {{StepKind::Hol, 0}};
    CMatrix Kh = apply_plan_sequential(K, hol, extended_step(jets)).value();
    CHECK(rel_residual(Kh * jets.I.value(), Kh) < 1e-9);
}

TEST_CASE("order sensitivity: coincide at m=1, separate at m=2 rank 2") {
    MultiIndex e1 = MultiIndex::unit(1, 0);
    ExtendedCurve hb = hardy_bergman_curve(40);
    Point z{Complex(0.4, 0.0)};
    CurveJets jets = make_curve_jets(hb, z, 2, 2);
    WirtingerJet K = extended_curvature(jets);
    StepApply st = extended_step(jets);
    CMatrix a = apply_plan_sequential(K, DerivPlan::canonical(e1, e1), st).value();
    CMatrix b = apply_plan_sequential(K, DerivPlan::hol_first(e1, e1), st).value();
    CHECK(rel_residual(a, b) < 1e-12);

    ExtendedCurve da2 = da_rank2_curve();
    CurveJets j2 = make_curve_jets(da2, zda, 2, 2);
    WirtingerJet K2 = extended_curvature(j2);
    StepApply s2 = extended_step(j2);
    MultiIndex el = MultiIndex::unit(2, 0), ek = MultiIndex::unit(2, 1);
    CMatrix Ka = apply_plan_sequential(K2, DerivPlan::canonical(el, ek), s2).value();
    CMatrix Kh = apply_plan_sequential(K2, DerivPlan::hol_first(el, ek), s2).value();
    CHECK(rel_residual(Ka, Kh) > 1e-6);

    // both orderings match their closed forms
    const WirtingerJet& Ij = j2.I;
    MultiIndex zz = MultiIndex::zero(2);
    auto ext = [&](const MultiIndex& I, const MultiIndex& J) { return Ij.extract(I, J); };
    int D = da2.dim();
    CMatrix dbar = CMatrix::Zero(D, D), d = CMatrix::Zero(D, D), t1 = CMatrix::Zero(D, D);
    for (int k = 0; k < 2; ++k) {
        dbar += ext(zz, MultiIndex::unit(2, k));
        d += ext(MultiIndex::unit(2, k), zz);
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            t1 += ext(zz, ek.plus(MultiIndex::unit(2, j))) *
                  ext(el.plus(MultiIndex::unit(2, i)), zz);
    CMatrix t2 = dbar * ext(el, zz) * ext(zz, ek) * d;
    CHECK(rel_residual(Ka, t1 - t2 - ext(zz, ek) * ext(el, zz) * dbar * d) < 1e-8);
    CHECK(rel_residual(Kh, t1 - t2 - dbar * d * ext(zz, ek) * ext(el, zz)) < 1e-8);
}

TEST_CASE("pair decomposition checks") {
    ExtendedCurve h = hardy_curve(40);
    WirtingerJet Ih = curve_eval_jet(h, z3, 3, 2);
    DecompositionCheck one =
        pair_decomposition_check(Ih, DerivPlan::canonical(MultiIndex({2}), MultiIndex({1})));
    CHECK(one.recursion_vs_pair_sum < 1e-8);
    CHECK(one.sequential_vs_pair_sum < 1e-12);  // single pair: all routes coincide

    ExtendedCurve da = da_curve(6);
    WirtingerJet Ida = curve_eval_jet(da, zda, 3, 2);
    DerivPlan mixed;
    mixed.steps = {{StepKind::Hol, 0}, {StepKind::AntiHol, 0}, {StepKind::Hol, 1}};
    DecompositionCheck dc = pair_decomposition_check(Ida, mixed);
    CHECK(dc.recursion_vs_pair_sum < 1e-8);
    CHECK(dc.sequential_vs_pair_sum > 1e-3);  // the order-sensitivity gap, reported only
}

TEST_CASE("leibniz expansions") {
    ExtendedCurve h = hardy_curve(40);
    CurveJets jets = make_curve_jets(h, z3, 3, 3);
    CHECK(leibniz_item1(jets, MultiIndex({0})) < 1e-15);  // empty expansion = value
    CHECK(leibniz_item1(jets, MultiIndex({2})) < 1e-9);
    CHECK(leibniz_item3(jets, MultiIndex({2})) < 1e-9);
    CHECK(leibniz_item2(jets.I, MultiIndex({3}), 0) < 1e-9);
    CHECK(leibniz_item4(jets.I, 0, MultiIndex({3})) < 1e-9);

    ExtendedCurve dah{Frame{{section_from_kernel(DiagonalKernelSpec::drury_arveson(2, 8))}},
                      Frame{{section_from_kernel(DiagonalKernelSpec::hardy(2, 8))}}};
    CurveJets j2 = make_curve_jets(dah, zda, 3, 3);
    CHECK(leibniz_item3(j2, MultiIndex({1, 1})) < 1e-9);
    CHECK(leibniz_item1(j2, MultiIndex({2, 1})) < 1e-9);
    CHECK(leibniz_item2(j2.I, MultiIndex({1, 1}), 1) < 1e-9);
    CHECK(leibniz_item4(j2.I, 1, MultiIndex({2, 1})) < 1e-9);
}

TEST_CASE("monomial expansions") {
    ExtendedCurve h = hardy_curve(40);
    WirtingerJet Ih = curve_eval_jet(h, z3, 3, 3);
    MultiIndex e = MultiIndex::unit(1, 0), zz = MultiIndex::zero(1);
    // first mixed derivative: D Dbar I = DI DbarI - DbarI DI
    CMatrix lhs = Ih.extract(e, e);
    CMatrix rhs = Ih.extract(e, zz) * Ih.extract(zz, e) - Ih.extract(zz, e) * Ih.extract(e, zz);
    CHECK(rel_residual(lhs, rhs) < 1e-9);
    CHECK(monomial_expansion_check(Ih, e, e) < 1e-9);
    // (0, J): Dbar^J I = I Dbar^J I
    CHECK(rel_residual(Ih.extract(zz, MultiIndex({2})),
                       Ih.value() * Ih.extract(zz, MultiIndex({2}))) < 1e-9);
    CHECK(monomial_expansion_check(Ih, MultiIndex({0}), MultiIndex({2})) < 1e-9);
    CHECK(monomial_expansion_check(Ih, MultiIndex({2}), MultiIndex({1})) < 1e-8);
    CHECK_THROWS_AS(monomial_expansion_check(Ih, MultiIndex({3}), MultiIndex({1})),
                    std::invalid_argument);

    WirtingerJet Ida = curve_eval_jet(da_curve(6), zda, 3, 3);
    CHECK(monomial_expansion_check(Ida, MultiIndex({1, 1}), MultiIndex({1, 0})) < 1e-8);
    CHECK(monomial_expansion_check(Ida, MultiIndex({1, 0}), MultiIndex({0, 2})) < 1e-8);
}

TEST_CASE("curve-classical intertwining identity") {
    ExtendedCurve h = hardy_curve(40);
    IntertwineResidual e0 = intertwining_residual(h, DerivPlan{}, z0);
    CHECK(e0.operator_residual < 1e-10);
    CHECK(e0.trace_residual < 1e-10);

    ExtendedCurve hb = hardy_bergman_curve(40);
    DerivPlan ha;
    ha.steps = {{StepKind::Hol, 0}, {StepKind::AntiHol, 0}};
    IntertwineResidual r = intertwining_residual(hb, ha, z3);
    CHECK(r.operator_residual < 1e-8);
    CHECK(r.trace_residual < 1e-8);

    DerivPlan m2;
    m2.steps = {{StepKind::AntiHol, 1}, {StepKind::Hol, 0}};
    IntertwineResidual r2 = intertwining_residual(da_curve(6), m2, zda);
    CHECK(r2.operator_residual < 1e-8);

    // irregular interleaving across both coordinates
    DerivPlan mixed;
    mixed.steps = {{StepKind::AntiHol, 1},
                   {StepKind::Hol, 0},
                   {StepKind::AntiHol, 0},
                   {StepKind::Hol, 1}};
    IntertwineResidual rm = intertwining_residual(da_rank2_curve(), mixed, zda);
    CHECK(rm.operator_residual < 1e-8);
    CHECK(rm.trace_residual < 1e-8);

    // every plan with |I|+|J| <= 4 on the rank-2 m=1 curve
    Frame jf = jet_frame(section_from_kernel(DiagonalKernelSpec::hardy(1, 40)), 1);
    ExtendedCurve r2c{jf, jf};
    double worst = 0.0;
    for (const auto& I : enumerate_total_degree(1, 4)) {
        for (const auto& J : enumerate_total_degree(1, 4)) {
            if (I.total_degree() + J.total_degree() > 4) continue;
            for (const auto& plan :
                 {DerivPlan::canonical(I, J), DerivPlan::hol_first(I, J)}) {
                IntertwineResidual rr = intertwining_residual(r2c, plan, z3);
                worst = std::max({worst, rr.operator_residual, rr.trace_residual});
            }
        }
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("unitary conjugation of curves") {
    ExtendedCurve h = hardy_curve(30);
    CMatrix U = random_unitary(h.dim(), 51);
    CHECK(rel_residual(U * U.adjoint(), CMatrix::Identity(h.dim(), h.dim())) < 1e-13);
    ExtendedCurve hu = conjugated_curve(h, U);
    CurveJets j1 = make_curve_jets(h, z3, 2, 2);
    CurveJets j2 = make_curve_jets(hu, z3, 2, 2);
    DerivPlan plan = DerivPlan::canonical(MultiIndex({1}), MultiIndex({1}));
    CMatrix K1 = apply_plan_sequential(extended_curvature(j1), plan, extended_step(j1)).value();
    CMatrix K2 = apply_plan_sequential(extended_curvature(j2), plan, extended_step(j2)).value();
    CHECK(rel_residual(U * K1 * U.adjoint(), K2) < 1e-8);
}
