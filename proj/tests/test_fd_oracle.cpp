#include "doctest.h"
#include "holocurve/geometry.hpp"
#include "holocurve/samplers.hpp"

using namespace holocurve;

TEST_CASE("constant sampler differentiates to zero") {
    Sampler s = [](const LPoint&) { return LCMatrix::Identity(2, 2) * LComplex(3.0L, 1.0L); };
    Point base{Complex(0.1, 0.2)};
    CHECK(fd_oracle(s, base, MultiIndex({1}), MultiIndex({0})).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(fd_oracle(s, base, MultiIndex({1}), MultiIndex({1})).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(rel_residual(fd_oracle(s, base, MultiIndex({0}), MultiIndex({0})),
                       CMatrix::Identity(2, 2) * Complex(3.0, 1.0)) < 1e-15);
}

TEST_CASE("quadratic |lambda|^2 is exact to stencil accuracy") {
    Sampler s = [](const LPoint& z) {
        LCMatrix m(1, 1);
        m(0, 0) = z[0] * std::conj(z[0]);
        return m;
    };
    Point base{Complex(0.0, 0.0)};
    CMatrix d = fd_oracle(s, base, MultiIndex({1}), MultiIndex({1}), 1e-4);
    CHECK(std::abs(d(0, 0) - 1.0) < 1e-6);
    CHECK(fd_oracle(s, base, MultiIndex({2}), MultiIndex({0}), 1e-4).cwiseAbs().maxCoeff() <
          1e-6);
}

TEST_CASE("Hardy Gram derivatives match the closed form and the jets") {
    Frame f{{section_from_kernel(DiagonalKernelSpec::hardy(1, 60))}};
    Sampler s = gram_sampler(f, f);
    Complex l(0.3, 0.0);
    Point base{l};
    // d dbar of (1-|l|^2)^{-1} = derivative of lbar/(1-x)^2
    double x = std::norm(l), u = 1.0 - x;
    CMatrix d1 = fd_oracle(s, base, MultiIndex({1}), MultiIndex({1}), 1e-4);
    double want = (1.0 + x) / (u * u * u);
    CHECK(std::abs(d1(0, 0) - want) / want < 1e-5);

    Point base2{Complex(0.3, 0.2)};
    WirtingerJet H = gram(f, f, base2, 3, 3);
    double worst = 0.0;
    for (const auto& I : enumerate_total_degree(1, 3))
        for (const auto& J : enumerate_total_degree(1, 3)) {
            int t = I.total_degree() + J.total_degree();
            if (t == 0 || t > 3) continue;
            worst = std::max(worst, rel_residual(fd_oracle(s, base2, I, J), H.extract(I, J)));
        }
    CHECK(worst < 1e-5);
}

TEST_CASE("two-variable Drury-Arveson Gram derivatives match the jets") {
    Frame f{{section_from_kernel(DiagonalKernelSpec::drury_arveson(2, 8))}};
    Sampler s = gram_sampler(f, f);
    Point base{Complex(0.3, 0.1), Complex(-0.2, 0.25)};
    WirtingerJet H = gram(f, f, base, 2, 2);
    double worst = 0.0;
    for (const auto& I : enumerate_total_degree(2, 2))
        for (const auto& J : enumerate_total_degree(2, 2)) {
            int t = I.total_degree() + J.total_degree();
            if (t == 0 || t > 3) continue;
            worst = std::max(worst, rel_residual(fd_oracle(s, base, I, J), H.extract(I, J)));
        }
    CHECK(worst < 1e-5);
}

TEST_CASE("step must be positive") {
    Sampler s = [](const LPoint&) { return LCMatrix::Identity(1, 1); };
    CHECK_THROWS_AS(fd_oracle(s, Point{Complex(0, 0)}, MultiIndex({1}), MultiIndex({0}), 0.0),
                    std::invalid_argument);
}
