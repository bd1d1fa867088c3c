#include "holocurve/curves.hpp"

#include <random>
#include <stdexcept>

namespace holocurve {

CurveJets make_curve_jets(const ExtendedCurve& c, const Point& base, int p, int q) {
    if (c.F.n() != c.G.n() || c.F.dim() != c.G.dim())
        throw std::invalid_argument("ExtendedCurve: F and G must share rank and dimension");
    WirtingerJet F = frame_eval_jet(c.F, base, p, q);
    WirtingerJet G = frame_eval_jet(c.G, base, q, p);
    WirtingerJet Gadj = G.adjoint();
    WirtingerJet H = Gadj * F;
    WirtingerJet Hinv = jet_invert(H);
    WirtingerJet FHinv = F * Hinv;
    WirtingerJet I = FHinv * Gadj;
    return CurveJets{std::move(F), std::move(G), std::move(Gadj), std::move(H), std::move(Hinv),
                     std::move(FHinv), std::move(I)};
}

WirtingerJet curve_eval_jet(const ExtendedCurve& c, const Point& base, int p, int q) {
    return make_curve_jets(c, base, p, q).I;
}

CMatrix curve_eval(const ExtendedCurve& c, const Point& z) {
    CMatrix Fv = c.F.eval(z);
    CMatrix Gv = c.G.eval(z);
    CMatrix H = Gv.adjoint() * Fv;
    return Fv * H.partialPivLu().solve(Gv.adjoint());
}

double HolomorphyReport::max_residual() const {
    return std::max({d_right, d_left, dbar_left, dbar_right});
}

HolomorphyReport holomorphy_residuals(const WirtingerJet& Ijet) {
    HolomorphyReport rep;
    const CMatrix& I0 = Ijet.value();
    double scale = std::max(1.0, I0.cwiseAbs().maxCoeff());
    rep.idempotency = (I0 * I0 - I0).cwiseAbs().maxCoeff() / scale;
    for (int k = 0; k < Ijet.m(); ++k) {
        CMatrix dI = Ijet.d(k).value();
        CMatrix dbI = Ijet.dbar(k).value();
        double sd = std::max(1.0, dI.cwiseAbs().maxCoeff());
        double sb = std::max(1.0, dbI.cwiseAbs().maxCoeff());
        rep.d_right = std::max(rep.d_right, (dI * I0 - dI).cwiseAbs().maxCoeff() / sd);
        rep.d_left = std::max(rep.d_left, (I0 * dI).cwiseAbs().maxCoeff() / sd);
        rep.dbar_left = std::max(rep.dbar_left, (I0 * dbI - dbI).cwiseAbs().maxCoeff() / sb);
        rep.dbar_right = std::max(rep.dbar_right, (dbI * I0).cwiseAbs().maxCoeff() / sb);
    }
    return rep;
}

HolomorphyReport holomorphy_check(const ExtendedCurve& c, const std::vector<Point>& points) {
    HolomorphyReport rep;
    for (const auto& z : points) {
        HolomorphyReport one = holomorphy_residuals(curve_eval_jet(c, z, 1, 1));
        rep.d_right = std::max(rep.d_right, one.d_right);
        rep.d_left = std::max(rep.d_left, one.d_left);
        rep.dbar_left = std::max(rep.dbar_left, one.dbar_left);
        rep.dbar_right = std::max(rep.dbar_right, one.dbar_right);
        rep.idempotency = std::max(rep.idempotency, one.idempotency);
    }
    return rep;
}

WirtingerJet extended_connection(const CurveJets& jets) {
    WirtingerJet lead = (jets.F.d_sum() * jets.Hinv) * jets.Gadj;
    WirtingerJet dI = jets.I.d_sum();
    int pc = std::min(lead.p(), dI.p()), qc = std::min(lead.q(), dI.q());
    return lead.truncated(pc, qc) - dI.truncated(pc, qc);
}

WirtingerJet extended_curvature(const WirtingerJet& Ijet) {
    return Ijet.dbar_sum() * Ijet.d_sum();
}

WirtingerJet extended_curvature(const CurveJets& jets) {
    // dbar I = F dbar(H^{-1} G^*) since F is holomorphic
    WirtingerJet W = (jets.Hinv * jets.Gadj).dbar_sum();
    return jets.F * (W * jets.I.d_sum());
}

StepApply extended_step(const WirtingerJet& Ijet) {
    auto I = std::make_shared<WirtingerJet>(Ijet);
    return [I](const WirtingerJet& X, const PlanStep& s) {
        if (s.kind == StepKind::Hol) return (*I) * X.d(s.coord);
        return X.dbar(s.coord) * (*I);
    };
}

StepApply extended_step(const CurveJets& jets) {
    auto A = std::make_shared<WirtingerJet>(jets.FHinv);
    auto B = std::make_shared<WirtingerJet>(jets.Gadj);
    return [A, B](const WirtingerJet& X, const PlanStep& s) {
        if (s.kind == StepKind::Hol) return (*A) * ((*B) * X.d(s.coord));
        return (X.dbar(s.coord) * (*A)) * (*B);
    };
}

WirtingerJet extended_covariant_derivative(const WirtingerJet& Ijet, const DerivPlan& plan) {
    return apply_plan_sequential(extended_curvature(Ijet), plan, extended_step(Ijet));
}

WirtingerJet extended_cov_pair_sum(const WirtingerJet& Ijet, const DerivPlan& plan) {
    return apply_plan_pair_sum(extended_curvature(Ijet), plan, extended_step(Ijet));
}

WirtingerJet extended_cov_recursion(const WirtingerJet& Ijet, const DerivPlan& plan) {
    return apply_plan_recursion(extended_curvature(Ijet), plan, extended_step(Ijet));
}

DecompositionCheck pair_decomposition_check(const WirtingerJet& Ijet, const DerivPlan& plan) {
    WirtingerJet K = extended_curvature(Ijet);
    StepApply step = extended_step(Ijet);
    WirtingerJet rec = apply_plan_recursion(K, plan, step);
    WirtingerJet sum = apply_plan_pair_sum(K, plan, step);
    WirtingerJet seq = apply_plan_sequential(K, plan, step);
    DecompositionCheck out;
    out.recursion_vs_pair_sum = rel_residual(rec.value(), sum.value());
    out.sequential_vs_pair_sum = rel_residual(seq.value(), sum.value());
    return out;
}

double leibniz_item1(const CurveJets& jets, const MultiIndex& I) {
    int m = jets.I.m();
    MultiIndex z = MultiIndex::zero(m);
    CMatrix acc = CMatrix::Zero(jets.I.rows(), jets.I.cols());
    for (const auto& I1 : enumerate_total_degree(m, I.total_degree())) {
        if (!I1.leq(I)) continue;
        double c = static_cast<double>(multinomial(I, I1));
        acc += c * jets.F.extract(I1, z) * jets.Hinv.extract(I.minus(I1), z) *
               jets.Gadj.value();
    }
    return rel_residual(acc, jets.I.extract(I, z));
}

double leibniz_item3(const CurveJets& jets, const MultiIndex& J) {
    int m = jets.I.m();
    MultiIndex z = MultiIndex::zero(m);
    CMatrix acc = CMatrix::Zero(jets.I.rows(), jets.I.cols());
    for (const auto& J1 : enumerate_total_degree(m, J.total_degree())) {
        if (!J1.leq(J)) continue;
        double c = static_cast<double>(multinomial(J, J1));
        acc += c * jets.F.value() * jets.Hinv.extract(z, J1) *
               jets.Gadj.extract(z, J.minus(J1));
    }
    return rel_residual(acc, jets.I.extract(z, J));
}

double leibniz_item2(const WirtingerJet& Ijet, const MultiIndex& I, int jbar_coord) {
    int m = Ijet.m();
    MultiIndex z = MultiIndex::zero(m);
    MultiIndex ej = MultiIndex::unit(m, jbar_coord);
    CMatrix dI = Ijet.extract(I, z);
    CMatrix dbI = Ijet.extract(z, ej);
    CMatrix rhs = dI * dbI - dbI * dI;
    for (const auto& I1 : enumerate_total_degree(m, I.total_degree())) {
        if (I1.total_degree() == 0 || I1 == I || !I1.leq(I)) continue;
        double c = static_cast<double>(multinomial(I, I1));
        rhs -= c * Ijet.extract(I.minus(I1), z) * dbI * Ijet.extract(I1, z);
    }
    return rel_residual(Ijet.extract(I, ej), rhs);
}

double leibniz_item4(const WirtingerJet& Ijet, int i_coord, const MultiIndex& J) {
    int m = Ijet.m();
    MultiIndex z = MultiIndex::zero(m);
    MultiIndex ei = MultiIndex::unit(m, i_coord);
    CMatrix dI = Ijet.extract(ei, z);
    CMatrix dbJ = Ijet.extract(z, J);
    CMatrix rhs = dI * dbJ - dbJ * dI;
    for (const auto& J1 : enumerate_total_degree(m, J.total_degree())) {
        if (J1.total_degree() == 0 || J1 == J || !J1.leq(J)) continue;
        double c = static_cast<double>(multinomial(J, J1));
        rhs -= c * Ijet.extract(z, J.minus(J1)) * dI * Ijet.extract(z, J1);
    }
    return rel_residual(Ijet.extract(ei, J), rhs);
}

namespace {

struct MonoFactor {
    bool bar;       // Dbar^K I when true, D^K I otherwise
    MultiIndex K;   // zero K means the bare curve
};

struct MonoTerm {
    double coeff;
    std::vector<MonoFactor> factors;
};

// Product-rule differentiation of a monomial list by d_coord; mixed factors
// are rewritten into pure ones with the interior correction sum.
std::vector<MonoTerm> apply_d(const std::vector<MonoTerm>& terms, int coord, int m) {
    MultiIndex el = MultiIndex::unit(m, coord);
    std::vector<MonoTerm> out;
    for (const auto& t : terms) {
        for (size_t r = 0; r < t.factors.size(); ++r) {
            const MonoFactor& f = t.factors[r];
            if (!f.bar) {
                MonoTerm nt = t;
                nt.factors[r].K = f.K.plus(el);
                out.push_back(std::move(nt));
                continue;
            }
            if (f.K.total_degree() == 0) {
                MonoTerm nt = t;
                nt.factors[r] = {false, el};
                out.push_back(std::move(nt));
                continue;
            }
            // D^{el} Dbar^K I = D^{el}I Dbar^K I - Dbar^K I D^{el}I
            //   - sum_{0<K1<K} multinomial(K,K1) Dbar^{K-K1}I D^{el}I Dbar^{K1}I
            {
                MonoTerm nt = t;
                nt.factors.erase(nt.factors.begin() + r);
                nt.factors.insert(nt.factors.begin() + r, {f});
                nt.factors.insert(nt.factors.begin() + r, {MonoFactor{false, el}});
                out.push_back(std::move(nt));
            }
            {
                MonoTerm nt = t;
                nt.coeff = -nt.coeff;
                nt.factors.erase(nt.factors.begin() + r);
                nt.factors.insert(nt.factors.begin() + r, {MonoFactor{false, el}});
                nt.factors.insert(nt.factors.begin() + r, {f});
                out.push_back(std::move(nt));
            }
            for (const auto& K1 : enumerate_total_degree(m, f.K.total_degree())) {
                if (K1.total_degree() == 0 || K1 == f.K || !K1.leq(f.K)) continue;
                MonoTerm nt = t;
                nt.coeff = -nt.coeff * static_cast<double>(multinomial(f.K, K1));
                nt.factors.erase(nt.factors.begin() + r);
                nt.factors.insert(nt.factors.begin() + r, {MonoFactor{true, K1}});
                nt.factors.insert(nt.factors.begin() + r, {MonoFactor{false, el}});
                nt.factors.insert(nt.factors.begin() + r,
                                  {MonoFactor{true, f.K.minus(K1)}});
                out.push_back(std::move(nt));
            }
        }
    }
    return out;
}

}  // namespace

double monomial_expansion_check(const WirtingerJet& Ijet, const MultiIndex& I,
                                const MultiIndex& J) {
    int m = Ijet.m();
    if (I.total_degree() + J.total_degree() > 3)
        throw std::invalid_argument("monomial_expansion_check: |I|+|J| <= 3 supported");
    MultiIndex z = MultiIndex::zero(m);
    std::vector<MonoTerm> terms;
    if (J.total_degree() == 0)
        terms.push_back({1.0, {MonoFactor{false, z}}});
    else
        terms.push_back({1.0, {MonoFactor{true, J}}});
    for (int k = 0; k < m; ++k)
        for (int r = 0; r < I[k]; ++r) terms = apply_d(terms, k, m);

    CMatrix acc = CMatrix::Zero(Ijet.rows(), Ijet.cols());
    for (const auto& t : terms) {
        CMatrix M = CMatrix::Identity(Ijet.rows(), Ijet.rows());
        for (const auto& f : t.factors)
            M *= f.bar ? Ijet.extract(z, f.K) : Ijet.extract(f.K, z);
        acc += t.coeff * M;
    }
    return rel_residual(acc, Ijet.extract(I, J));
}

IntertwineResidual intertwining_residual(const ExtendedCurve& c, const DerivPlan& plan,
                                 const Point& base) {
    int a = plan.hol_order(), b = plan.antihol_order();
    CurveJets jets = make_curve_jets(c, base, a + 1, b + 1);
    WirtingerJet Hfull = gram(c.F, c.G, base, a + 2, b + 2);
    CMatrix Ke =
        apply_plan_sequential(extended_curvature(jets), plan, extended_step(jets)).value();
    CMatrix Kc = classical_covariant_derivative(Hfull, plan).value();
    const CMatrix& Fv = jets.F.value();
    IntertwineResidual out;
    CMatrix lhs = Ke * Fv;
    CMatrix rhs = -Fv * Kc;
    out.operator_residual = rel_residual(lhs, rhs);
    Complex te = Ke.trace(), tc = Kc.trace();
    out.trace_residual = std::abs(te + tc) / std::max(1.0, std::abs(tc));
    return out;
}

ExtendedCurve conjugated_curve(const ExtendedCurve& c, const CMatrix& U) {
    return ExtendedCurve{c.F.apply_linear(U), c.G.apply_linear(U)};
}

CMatrix random_unitary(int dim, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix A(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) A(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<CMatrix> qr(A);
    CMatrix Q = qr.householderQ();
    CMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < dim; ++k) {
        Complex d = R(k, k);
        Q.col(k) *= (std::abs(d) > 0) ? d / std::abs(d) : 1.0;
    }
    return Q;
}

}  // namespace holocurve
