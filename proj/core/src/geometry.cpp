#include "holocurve/geometry.hpp"

#include <stdexcept>

namespace holocurve {

WirtingerJet gram(const Frame& F, const Frame& G, const Point& base, int p, int q) {
    if (F.n() != G.n() || F.dim() != G.dim())
        throw std::invalid_argument("gram: frame shape mismatch");
    return frame_eval_jet(G, base, q, p).adjoint() * frame_eval_jet(F, base, p, q);
}

WirtingerJet classical_connection(const WirtingerJet& H) {
    return jet_invert(H) * H.d_sum();
}

WirtingerJet classical_curvature(const WirtingerJet& H) {
    return -(jet_invert(H) * H.d_sum()).dbar_sum();
}

StepApply classical_step(const WirtingerJet& H) {
    // capture the inverse once; per-coordinate Theta_i cut to the caps of
    // the running jet inside the closure
    auto Hinv = std::make_shared<WirtingerJet>(jet_invert(H));
    auto Hcopy = std::make_shared<WirtingerJet>(H);
    return [Hinv, Hcopy](const WirtingerJet& X, const PlanStep& s) {
        if (s.kind == StepKind::AntiHol) return X.dbar(s.coord);
        WirtingerJet theta = (*Hinv) * Hcopy->d(s.coord);
        WirtingerJet dX = X.d(s.coord);
        int pc = std::min(theta.p(), dX.p()), qc = std::min(theta.q(), dX.q());
        WirtingerJet t = theta.truncated(pc, qc);
        WirtingerJet x = X.truncated(pc, qc);
        return dX.truncated(pc, qc) + (t * x) - (x * t);
    };
}

WirtingerJet classical_covariant_derivative(const WirtingerJet& H, const DerivPlan& plan) {
    return apply_plan_sequential(classical_curvature(H), plan, classical_step(H));
}

WirtingerJet classical_cov_pair_sum(const WirtingerJet& H, const DerivPlan& plan) {
    return apply_plan_pair_sum(classical_curvature(H), plan, classical_step(H));
}

WirtingerJet classical_cov_recursion(const WirtingerJet& H, const DerivPlan& plan) {
    return apply_plan_recursion(classical_curvature(H), plan, classical_step(H));
}

DecompositionCheck classical_pair_decomposition_check(const WirtingerJet& H, const DerivPlan& plan) {
    WirtingerJet K = classical_curvature(H);
    StepApply step = classical_step(H);
    WirtingerJet rec = apply_plan_recursion(K, plan, step);
    WirtingerJet sum = apply_plan_pair_sum(K, plan, step);
    WirtingerJet seq = apply_plan_sequential(K, plan, step);
    DecompositionCheck out;
    out.recursion_vs_pair_sum = rel_residual(rec.value(), sum.value());
    out.sequential_vs_pair_sum = rel_residual(seq.value(), sum.value());
    return out;
}

CMatrix PolynomialMatrix::eval(const Point& z) const {
    CMatrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = entries[i][j].eval(z);
    return out;
}

WirtingerJet PolynomialMatrix::eval_jet(const Point& base, int p, int q) const {
    int m = static_cast<int>(base.size());
    WirtingerJet jet = WirtingerJet::zero(base, p, q, n, n);
    MultiIndex z = MultiIndex::zero(m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (const auto& [mono, c] : entries[i][j].terms()) {
                MultiIndex M(mono);
                for (int a = 0; a < jet.itab().size(); ++a) {
                    const MultiIndex& I = jet.itab().at(a);
                    if (!I.leq(M)) continue;
                    Complex v = c * static_cast<double>(multinomial(M, I));
                    for (int k = 0; k < m; ++k)
                        for (int r = 0; r < M[k] - I[k]; ++r) v *= base[k];
                    jet.coeff(I, z)(i, j) += v;
                }
            }
        }
    }
    return jet;
}

PolynomialMatrix frame_change_matrix(const ScalarPoly& phi00, int n) {
    if (phi00.m() != 1) throw std::invalid_argument("frame_change_matrix: m = 1 required");
    PolynomialMatrix phi;
    phi.n = n;
    std::vector<ScalarPoly> derivs;
    derivs.push_back(phi00);
    for (int k = 1; k < n; ++k) derivs.push_back(derivs.back().derivative(0));
    phi.entries.assign(n, std::vector<ScalarPoly>(n, ScalarPoly(1)));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double binom =
                static_cast<double>(multinomial(MultiIndex({j}), MultiIndex({i})));
            phi.entries[i][j] = derivs[j - i].scaled(binom);
        }
    return phi;
}

Frame apply_frame_change(const Frame& F, const PolynomialMatrix& phi) {
    if (phi.n != F.n()) throw std::invalid_argument("apply_frame_change: rank mismatch");
    Frame G;
    for (int j = 0; j < phi.n; ++j) {
        PolynomialSection gj(F.m(), F.dim());
        for (int k = 0; k < phi.n; ++k) {
            if (phi.entries[k][j].is_zero()) continue;
            gj = gj.plus(F.sections[k].scaled_by(phi.entries[k][j]));
        }
        G.sections.push_back(gj);
    }
    return G;
}

ConjugationCheck conjugation_trace_check(const WirtingerJet& H_F, const WirtingerJet& H_G,
                                         const PolynomialMatrix& phi, const DerivPlan& plan) {
    ConjugationCheck out;
    WirtingerJet K_F = classical_curvature(H_F);
    WirtingerJet K_G = classical_curvature(H_G);
    WirtingerJet phij = phi.eval_jet(H_F.base(), K_F.p(), K_F.q());
    WirtingerJet conj = jet_invert(phij) * K_F * phij;
    out.curvature_conjugation = rel_residual(K_G.value(), conj.value());

    WirtingerJet covF = classical_covariant_derivative(H_F, plan);
    WirtingerJet covG = classical_covariant_derivative(H_G, plan);
    out.trace_invariance =
        std::abs(covF.value().trace() - covG.value().trace()) /
        std::max(1.0, std::abs(covF.value().trace()));
    return out;
}

}  // namespace holocurve
