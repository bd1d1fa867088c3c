#include "holocurve/samplers.hpp"

namespace holocurve {

LCMatrix frame_eval_ld(const Frame& f, const LPoint& z) {
    LCMatrix out = LCMatrix::Zero(f.dim(), f.n());
    for (int k = 0; k < f.n(); ++k) {
        for (const auto& [mono, v] : f.sections[k].terms()) {
            LComplex t(1.0L, 0.0L);
            for (int c = 0; c < f.m(); ++c)
                for (int r = 0; r < mono[c]; ++r) t *= z[c];
            for (int i = 0; i < f.dim(); ++i)
                out(i, k) += t * LComplex(v(i).real(), v(i).imag());
        }
    }
    return out;
}

Sampler gram_sampler(const Frame& F, const Frame& G) {
    return [F, G](const LPoint& z) -> LCMatrix {
        LCMatrix Fv = frame_eval_ld(F, z);
        LCMatrix Gv = frame_eval_ld(G, z);
        return Gv.adjoint() * Fv;
    };
}

Sampler curve_sampler(const ExtendedCurve& c) {
    return [c](const LPoint& z) -> LCMatrix {
        LCMatrix Fv = frame_eval_ld(c.F, z);
        LCMatrix Gv = frame_eval_ld(c.G, z);
        LCMatrix Ga = Gv.adjoint();
        LCMatrix H = Ga * Fv;
        return Fv * H.partialPivLu().solve(Ga);
    };
}

}  // namespace holocurve
