#include "holocurve/fd_oracle.hpp"

#include <stdexcept>

namespace holocurve {

namespace {

LCMatrix fd_rec(const Sampler& f, const LPoint& at, MultiIndex I, MultiIndex J, long double h);

// 4th-order central stencil (-f2 + 8 f1 - 8 fm1 + fm2) / 12h along one real axis.
LCMatrix stencil(const Sampler& f, const LPoint& at, const MultiIndex& I, const MultiIndex& J,
                 long double h, int coord, bool imag_axis) {
    auto shift = [&](long double t) {
        LPoint z = at;
        z[coord] += imag_axis ? LComplex(0.0L, t) : LComplex(t, 0.0L);
        return fd_rec(f, z, I, J, h);
    };
    LCMatrix f1 = shift(h), fm1 = shift(-h), f2 = shift(2 * h), fm2 = shift(-2 * h);
    return (-f2 + 8.0L * f1 - 8.0L * fm1 + fm2) / (12.0L * h);
}

LCMatrix fd_rec(const Sampler& f, const LPoint& at, MultiIndex I, MultiIndex J, long double h) {
    for (int k = 0; k < I.dim(); ++k) {
        if (I[k] > 0) {
            MultiIndex Ir = I.minus(MultiIndex::unit(I.dim(), k));
            LCMatrix dx = stencil(f, at, Ir, J, h, k, false);
            LCMatrix dy = stencil(f, at, Ir, J, h, k, true);
            return (dx - LComplex(0.0L, 1.0L) * dy) / 2.0L;
        }
    }
    for (int k = 0; k < J.dim(); ++k) {
        if (J[k] > 0) {
            MultiIndex Jr = J.minus(MultiIndex::unit(J.dim(), k));
            LCMatrix dx = stencil(f, at, I, Jr, h, k, false);
            LCMatrix dy = stencil(f, at, I, Jr, h, k, true);
            return (dx + LComplex(0.0L, 1.0L) * dy) / 2.0L;
        }
    }
    return f(at);
}

}  // namespace

CMatrix fd_oracle(const Sampler& sampler, const Point& base, const MultiIndex& I,
                  const MultiIndex& J, double step) {
    if (step <= 0.0) throw std::invalid_argument("fd_oracle: step must be positive");
    LPoint at(base.size());
    for (size_t k = 0; k < base.size(); ++k) at[k] = LComplex(base[k].real(), base[k].imag());
    LCMatrix r = fd_rec(sampler, at, I, J, static_cast<long double>(step));
    CMatrix out(r.rows(), r.cols());
    for (Eigen::Index i = 0; i < r.rows(); ++i)
        for (Eigen::Index j = 0; j < r.cols(); ++j)
            out(i, j) = Complex(static_cast<double>(r(i, j).real()),
                                static_cast<double>(r(i, j).imag()));
    return out;
}

Sampler sampler_from_double(std::function<CMatrix(const Point&)> f) {
    return [f = std::move(f)](const LPoint& z) {
        Point zd(z.size());
        for (size_t k = 0; k < z.size(); ++k)
            zd[k] = Complex(static_cast<double>(z[k].real()), static_cast<double>(z[k].imag()));
        CMatrix v = f(zd);
        LCMatrix out(v.rows(), v.cols());
        for (Eigen::Index i = 0; i < v.rows(); ++i)
            for (Eigen::Index j = 0; j < v.cols(); ++j)
                out(i, j) = LComplex(v(i, j).real(), v(i, j).imag());
        return out;
    };
}

}  // namespace holocurve
