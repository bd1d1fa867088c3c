#include "doctest.h"
#include "holocurve/geometry.hpp"

using namespace holocurve;

TEST_CASE("hardy section entries are the plain monomials") {
    PolynomialSection s = section_from_kernel(DiagonalKernelSpec::hardy(1, 2));
    CHECK(s.dim() == 3);
    for (int j = 0; j <= 2; ++j) {
        CVector v = s.terms().at({j});
        for (int i = 0; i <= 2; ++i)
            CHECK(std::abs(v(i) - (i == j ? 1.0 : 0.0)) == 0.0);
    }
    CVector at0 = s.eval(Point{Complex(0.0, 0.0)});
    CHECK(std::abs(at0(0) - 1.0) == 0.0);
    CHECK(at0.tail(2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("bergman weights") {
    PolynomialSection s = section_from_kernel(DiagonalKernelSpec::bergman(4));
    CVector v = s.terms().at({1});
    CHECK(std::abs(v(1) - std::sqrt(2.0)) < 1e-15);
    CHECK_THROWS_AS(DiagonalKernelSpec::preset("bergman", 2, 4), std::invalid_argument);
}

TEST_CASE("drury-arveson weights are sqrt(|I|!/I!)") {
    DiagonalKernelSpec da = DiagonalKernelSpec::drury_arveson(2, 4);
    CHECK(std::abs(da.weight(MultiIndex({1, 1})) - std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(da.weight(MultiIndex({2, 1})) - std::sqrt(3.0)) < 1e-15);
    CHECK(std::abs(da.weight(MultiIndex({0, 3})) - 1.0) < 1e-15);
}

TEST_CASE("explicit kernel validation") {
    CHECK_THROWS_AS(DiagonalKernelSpec::explicit_weights(1, 3, {1.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(DiagonalKernelSpec::explicit_weights(1, 1, {1.0, 0.0}),
                    std::invalid_argument);
    CHECK_NOTHROW(DiagonalKernelSpec::explicit_weights(1, 1, {1.0, 2.0}));
}

TEST_CASE("gram of a kernel section is the truncated kernel diagonal") {
    // coefficient-wise at the origin: coeff(I, J) = a_I^2 delta_{I,J}
    DiagonalKernelSpec k = DiagonalKernelSpec::bergman(3);
    Frame f{{section_from_kernel(k)}};
    Point z{Complex(0.0, 0.0)};
    WirtingerJet H = gram(f, f, z, 3, 3);
    for (const auto& I : enumerate_total_degree(1, 3))
        for (const auto& J : enumerate_total_degree(1, 3)) {
            Complex want = (I == J) ? k.weight(I) * k.weight(I) : 0.0;
            CHECK(std::abs(H.coeff(I, J)(0, 0) - want) < 1e-15);
        }
}

TEST_CASE("jet frames") {
    PolynomialSection t = section_from_kernel(DiagonalKernelSpec::hardy(1, 2));
    Frame f = jet_frame(t, 1);
    REQUIRE(f.n() == 2);
    CMatrix at0 = f.eval(Point{Complex(0.0, 0.0)});
    CHECK(std::abs(at0(0, 0) - 1.0) == 0.0);
    CHECK(std::abs(at0(1, 1) - 1.0) == 0.0);
    CMatrix atl = f.eval(Point{Complex(0.5, 0.0)});
    CHECK(std::abs(atl(2, 1) - 1.0) == 0.0);  // (l^2)' = 2l = 1

    CHECK(jet_frame(t, 0).n() == 1);

    PolynomialSection t3 = section_from_kernel(DiagonalKernelSpec::hardy(1, 3));
    CMatrix m = jet_frame(t3, 2).eval(Point{Complex(0.0, 0.0)});
    CHECK(std::abs(m(0, 0) - 1.0) == 0.0);
    CHECK(std::abs(m(1, 1) - 1.0) == 0.0);
    CHECK(std::abs(m(2, 2) - 2.0) == 0.0);  // (l^2)'' = 2

    PolynomialSection da = section_from_kernel(DiagonalKernelSpec::drury_arveson(2, 3));
    Frame f2 = jet_frame_partial(da, 0);
    CHECK(f2.n() == 2);
    CHECK(f2.m() == 2);
}

TEST_CASE("frame_eval_jet is holomorphic and exact") {
    PolynomialSection t = section_from_kernel(DiagonalKernelSpec::hardy(1, 4));
    Frame f{{t}};
    Point z{Complex(0.3, -0.2)};
    WirtingerJet j = frame_eval_jet(f, z, 2, 2);
    // antiholomorphic coefficients vanish identically
    for (int a = 0; a < j.itab().size(); ++a)
        for (int b = 1; b < j.jtab().size(); ++b) CHECK(j.coeff(a, b).cwiseAbs().maxCoeff() == 0.0);
    CHECK(rel_residual(j.value(), static_cast<CMatrix>(t.eval(z))) < 1e-15);
    // first derivative column against the polynomial derivative
    CHECK(rel_residual(j.extract(MultiIndex({1}), MultiIndex({0})),
                       static_cast<CMatrix>(t.derivative(0).eval(z))) < 1e-15);
    // constant sections give constant jets
    PolynomialSection c(1, 2);
    c.add_term(MultiIndex({0}), CVector::Ones(2));
    WirtingerJet cj = frame_eval_jet(Frame{{c}}, z, 1, 1);
    CHECK(cj.d(0).max_abs() == 0.0);
}

TEST_CASE("ofb frame per the binomial-weighted formula") {
    // distinct scalings make each t_i's contribution identifiable
    PolynomialSection t0 = section_from_kernel(DiagonalKernelSpec::hardy(1, 4));
    PolynomialSection t1 = t0.scaled(10.0);
    PolynomialSection t2 = t0.scaled(100.0);

    Frame f1 = ofb_frame({t0}, 1);
    Point z{Complex(0.3, 0.1)};
    CHECK(rel_residual(f1.eval(z), static_cast<CMatrix>(t0.eval(z))) == 0.0);

    Frame f2 = ofb_frame({t0, t1}, 2);
    CVector want1 = t0.derivative(0).eval(z) + t1.eval(z);
    CHECK(rel_residual(static_cast<CMatrix>(f2.eval(z).col(1)), static_cast<CMatrix>(want1)) <
          1e-15);

    Frame f3 = ofb_frame({t0, t1, t2}, 3);
    CVector want2 = t0.derivative(0).derivative(0).eval(z) +
                    2.0 * t1.derivative(0).eval(z) + 2.0 * t2.eval(z);
    CHECK(rel_residual(static_cast<CMatrix>(f3.eval(z).col(2)), static_cast<CMatrix>(want2)) <
          1e-15);
}

TEST_CASE("fb2 frame and its Gram at the origin") {
    Fb2Model mdl{DiagonalKernelSpec::hardy(1, 20), DiagonalKernelSpec::hardy(1, 20),
                 Complex(1.0, 0.0)};
    Frame f = fb2_frame(mdl);
    REQUIRE(f.n() == 2);
    Point z{Complex(0.0, 0.0)};
    CMatrix v = f.eval(z);
    int D0 = mdl.dim0();
    // t0 = -s * kernel0 section, so gamma0(0) = -e0 (+) 0 at s = 1
    CHECK(std::abs(v(0, 0) + 1.0) == 0.0);
    CHECK(v.col(0).tail(mdl.dim1()).cwiseAbs().maxCoeff() == 0.0);
    // gamma1 = t0' (+) (-t1): top block -e1, bottom block -e0
    CHECK(std::abs(v(1, 1) + 1.0) == 0.0);
    CHECK(std::abs(v(D0, 1) + 1.0) == 0.0);
    CMatrix h = v.adjoint() * v;
    CHECK(rel_residual(h, (CMatrix(2, 2) << 1, 0, 0, 2).finished()) < 1e-15);
}

TEST_CASE("ofb and fb2 conventions differ by the sign of the t1 component") {
    Fb2Model mdl{DiagonalKernelSpec::hardy(1, 12), DiagonalKernelSpec::hardy(1, 12),
                 Complex(1.0, 0.0)};
    int D = mdl.dim();
    PolynomialSection t0e = mdl.t0().embedded(D, 0);
    PolynomialSection t1e = mdl.t1().embedded(D, mdl.dim0());
    Frame plus = ofb_frame({t0e, t1e}, 2);
    Frame minus = fb2_frame(mdl);
    Point z{Complex(0.25, 0.15)};
    CVector d = plus.eval(z).col(1) - minus.eval(z).col(1);
    CHECK(rel_residual(static_cast<CMatrix>(d),
                       static_cast<CMatrix>(2.0 * t1e.eval(z))) < 1e-15);
    // both conventions give independent frames with well-defined projections;
    // the sign flip genuinely moves the spanned subspace
    CMatrix P1 = plus.eval(z) * (plus.eval(z).adjoint() * plus.eval(z))
                                    .partialPivLu()
                                    .solve(plus.eval(z).adjoint());
    CMatrix P2 = minus.eval(z) * (minus.eval(z).adjoint() * minus.eval(z))
                                     .partialPivLu()
                                     .solve(minus.eval(z).adjoint());
    CHECK(rel_residual(P1, P1 * P1) < 1e-14);
    CHECK(rel_residual(P2, P2 * P2) < 1e-14);
    CHECK(rel_residual(P1, P2) > 1e-3);
}

TEST_CASE("frame independence at scenario-scale points") {
    Frame f = jet_frame(section_from_kernel(DiagonalKernelSpec::hardy(1, 30)), 1);
    std::vector<Point> pts{{Complex(0.0, 0.0)}, {Complex(0.5, 0.0)}, {Complex(0.3, 0.2)}};
    CHECK(frame_min_singular(f, pts) > 1e-10);
}

TEST_CASE("scalar polynomial helpers") {
    ScalarPoly p = ScalarPoly::constant(1, 1.0);
    p.add_term(MultiIndex({2}), Complex(1.0, 0.0));  // 1 + z^2
    CHECK(std::abs(p.eval({Complex(0.5, 0.0)}) - 1.25) < 1e-15);
    ScalarPoly dp = p.derivative(0);
    CHECK(std::abs(dp.eval({Complex(0.5, 0.0)}) - 1.0) < 1e-15);
    ScalarPoly q = p * dp;  // (1+z^2) 2z
    CHECK(std::abs(q.eval({Complex(2.0, 0.0)}) - 20.0) < 1e-12);
}
