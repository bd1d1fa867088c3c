#include "doctest.h"
#include "holocurve/classify.hpp"

using namespace holocurve;

namespace {

std::vector<Point> disk_samples() {
    return {{Complex(0.0, 0.0)}, {Complex(0.4, 0.0)},  {Complex(0.2, 0.3)},
            {Complex(-0.3, 0.1)}, {Complex(0.1, -0.45)}};
}

std::vector<WirtingerJet> gram_jets(const Frame& f, const std::vector<Point>& pts) {
    std::vector<WirtingerJet> out;
    for (const auto& z : pts) out.push_back(gram(f, f, z, 1, 1));
    return out;
}

}  // namespace

TEST_CASE("b1 unitary equivalence by curvature") {
    Frame hardy{{section_from_kernel(DiagonalKernelSpec::hardy(1, 60))}};
    Frame bergman{{section_from_kernel(DiagonalKernelSpec::bergman(60))}};
    auto pts = disk_samples();
    auto h = gram_jets(hardy, pts);

    EquivalenceVerdict same = b1_unitary_equivalence(h, gram_jets(hardy, pts), 1e-8);
    CHECK(same.verdict == Verdict::Equivalent);

    EquivalenceVerdict diff = b1_unitary_equivalence(h, gram_jets(bergman, pts), 1e-8);
    CHECK(diff.verdict == Verdict::NotEquivalent);
    CHECK(diff.residuals.at("curvature_gap") > 0.9);  // -1 vs -2 at the origin

    // holomorphic nonvanishing rescale leaves the curvature unchanged
    ScalarPoly r = ScalarPoly::constant(1, 1.0);
    r.add_term(MultiIndex({1}), 1.0);
    EquivalenceVerdict scaled = b1_unitary_equivalence(h, gram_jets(hardy.scaled_by(r), pts), 1e-8);
    CHECK(scaled.verdict == Verdict::Equivalent);
}

TEST_CASE("fb2 unitary equivalence criterion") {
    DiagonalKernelSpec hardy = DiagonalKernelSpec::hardy(1, 40);
    DiagonalKernelSpec bergman = DiagonalKernelSpec::bergman(40);
    Fb2Model hh1{hardy, hardy, Complex(1, 0)};
    Fb2Model hh2{hardy, hardy, Complex(2, 0)};
    Fb2Model bh{bergman, hardy, Complex(1, 0)};
    auto pts = disk_samples();

    CHECK(fb2_unitary_equivalence(hh1, hh1, pts, 1e-8).verdict == Verdict::Equivalent);

    EquivalenceVerdict s2 = fb2_unitary_equivalence(hh1, hh2, pts, 1e-8);
    CHECK(s2.verdict == Verdict::NotEquivalent);
    CHECK(std::abs(s2.residuals.at("coupling_ratio_gap") - 3.0) < 1e-10);  // 1 vs 4

    EquivalenceVerdict bv = fb2_unitary_equivalence(hh1, bh, pts, 1e-8);
    CHECK(bv.verdict == Verdict::NotEquivalent);
    CHECK(bv.residuals.at("curvature_gap") > 0.9);  // -1 vs -2
}

TEST_CASE("weighted shift similarity with trend diagnostics") {
    int N = 60;
    DiagonalKernelSpec hardy = DiagonalKernelSpec::hardy(1, N);
    DiagonalKernelSpec bergman = DiagonalKernelSpec::bergman(N);
    std::vector<double> w(N + 1);
    for (int j = 0; j <= N; ++j) w[j] = std::sqrt((j + 2.0) / (j + 1.0));
    DiagonalKernelSpec nearhardy = DiagonalKernelSpec::explicit_weights(1, N, w);

    EquivalenceVerdict same = weighted_shift_similarity(hardy, hardy);
    CHECK(same.verdict == Verdict::Equivalent);
    CHECK(same.residuals.at("ratio_min") == 1.0);
    CHECK(same.residuals.at("ratio_max") == 1.0);

    EquivalenceVerdict grow = weighted_shift_similarity(hardy, bergman);
    CHECK(grow.verdict == Verdict::NotEquivalent);

    EquivalenceVerdict close = weighted_shift_similarity(hardy, nearhardy);
    CHECK(close.verdict == Verdict::Equivalent);
    CHECK(close.residuals.at("ratio_min") >= 1.0 - 1e-12);
    CHECK(close.residuals.at("ratio_max") <= std::sqrt(2.0) + 1e-12);

    // symmetry up to inverting the bounds
    EquivalenceVerdict swapped = weighted_shift_similarity(nearhardy, hardy);
    CHECK(swapped.verdict == Verdict::Equivalent);
    CHECK(std::abs(swapped.residuals.at("ratio_min") * close.residuals.at("ratio_max") - 1.0) <
          1e-12);
    CHECK(weighted_shift_similarity(bergman, hardy).verdict == Verdict::NotEquivalent);

    CHECK_THROWS_AS(weighted_shift_similarity(hardy, DiagonalKernelSpec::hardy(1, 10)),
                    std::invalid_argument);
}

TEST_CASE("product intertwining checks") {
    Frame hardy{{section_from_kernel(DiagonalKernelSpec::hardy(1, 30))}};
    Frame bergman{{section_from_kernel(DiagonalKernelSpec::bergman(30))}};
    ExtendedCurve c1{hardy, hardy};
    auto pts = disk_samples();

    CMatrix id = CMatrix::Identity(c1.dim(), c1.dim());
    CHECK(product_intertwine_check(c1, c1, id, 2, 2, pts) < 1e-12);

    CMatrix U = random_unitary(c1.dim(), 17);
    ExtendedCurve c2 = conjugated_curve(c1, U);
    CHECK(product_intertwine_check(c1, c2, U, 2, 2, pts) < 1e-9);

    ExtendedCurve cb{bergman, bergman};
    CHECK(product_intertwine_check(c1, cb, id, 2, 2, pts) > 1e-3);
}

TEST_CASE("classical similarity witness Y") {
    Frame hardy{{section_from_kernel(DiagonalKernelSpec::hardy(1, 30))}};
    ExtendedCurve c1{hardy, hardy};
    Point z{Complex(0.3, 0.1)};

    CMatrix id = CMatrix::Identity(c1.dim(), c1.dim());
    SimilarityWitness triv = classical_similarity_witness(c1, c1, id, DerivPlan{}, z);
    CHECK(triv.intertwine_residual < 1e-13);
    CHECK(triv.inverse_residual < 1e-13);

    CMatrix U = random_unitary(c1.dim(), 23);
    ExtendedCurve c2 = conjugated_curve(c1, U);
    DerivPlan hol;
    hol.steps = {{StepKind::Hol, 0}};
    SimilarityWitness w = classical_similarity_witness(c1, c2, U, hol, z);
    CHECK(w.intertwine_residual < 1e-8);
    CHECK(w.inverse_residual < 1e-9);
}

TEST_CASE("finite rank twist equivalence") {
    auto pts = disk_samples();
    Frame mono{{section_from_kernel(DiagonalKernelSpec::hardy(1, 1))}};  // {1, w}

    CHECK(finite_rank_twist_equivalence(mono, mono, pts, 1e-8).verdict ==
          Verdict::Equivalent);

    // multiply by (1 + w/2): |phi|^2 cancels in d dbar log
    ScalarPoly phi = ScalarPoly::constant(1, 1.0);
    phi.add_term(MultiIndex({1}), 0.5);
    CHECK(finite_rank_twist_equivalence(mono, mono.scaled_by(phi), pts, 1e-8).verdict ==
          Verdict::Equivalent);

    // {1, 2w}: not a unitary coefficient matrix, not pluriharmonic
    Frame twisted{{section_from_kernel(DiagonalKernelSpec::explicit_weights(1, 1, {1.0, 2.0}))}};
    EquivalenceVerdict bad = finite_rank_twist_equivalence(mono, twisted, pts, 1e-8);
    CHECK(bad.verdict == Verdict::NotEquivalent);
    CHECK(bad.residuals.at("pluriharmonic_defect") > 1e-3);
    CHECK(bad.residuals.at("beta_orthonormality") == doctest::Approx(3.0));

    // larger truncation with a full-rank reference
    Frame mono5{{section_from_kernel(DiagonalKernelSpec::hardy(1, 5))}};
    Frame berg5{{section_from_kernel(DiagonalKernelSpec::bergman(5))}};
    CHECK(finite_rank_twist_equivalence(mono5, berg5, pts, 1e-8).verdict ==
          Verdict::NotEquivalent);
}
