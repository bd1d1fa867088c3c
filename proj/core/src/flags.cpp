#include "holocurve/flags.hpp"

#include <stdexcept>

namespace holocurve {

CMatrix Fb2Decomposition::reassembled() const {
    return (1.0 - theta) * diag_part + theta * coupling_part;
}

double Fb2Decomposition::reassembly_residual() const {
    return rel_residual(direct, reassembled());
}

double Fb2Decomposition::idempotency_residual() const {
    return rel_residual(direct * direct, direct);
}

double Fb2Decomposition::self_adjointness_residual() const {
    return rel_residual(direct, direct.adjoint());
}

namespace {

struct Fb2Pieces {
    CVector t0, t0p, t1;          // evaluated sections
    Complex h0, dh0, dbh0, ddbh0; // h0 and its first mixed derivatives
    Complex h1, K0;
};

Fb2Pieces fb2_pieces(const Fb2Model& model, Complex lambda) {
    Point z{lambda};
    Fb2Pieces out;
    PolynomialSection t0 = model.t0();
    PolynomialSection t1 = model.t1();
    out.t0 = t0.eval(z);
    out.t0p = t0.derivative(0).eval(z);
    out.t1 = t1.eval(z);
    Frame f0{{t0}};
    WirtingerJet h0 = gram(f0, f0, z, 1, 1);
    out.h0 = h0.value()(0, 0);
    out.dh0 = h0.extract(MultiIndex({1}), MultiIndex({0}))(0, 0);
    out.dbh0 = h0.extract(MultiIndex({0}), MultiIndex({1}))(0, 0);
    out.ddbh0 = h0.extract(MultiIndex({1}), MultiIndex({1}))(0, 0);
    Frame f1{{t1}};
    out.h1 = gram(f1, f1, z, 0, 0).value()(0, 0);
    out.K0 = classical_curvature(h0).value()(0, 0);
    return out;
}

CMatrix coupling_block(const Fb2Pieces& x, int D0, int D1) {
    int D = D0 + D1;
    Complex denom = x.K0 * x.h0 * x.h0;
    if (std::abs(denom) < 1e-300)
        throw std::domain_error("fb2_projection: K0 h0^2 vanishes");
    CMatrix C = CMatrix::Zero(D, D);
    // F block
    C.topLeftCorner(D0, D0) =
        (-x.ddbh0 * (x.t0 * x.t0.adjoint()) + x.dh0 * (x.t0 * x.t0p.adjoint()) +
         x.dbh0 * (x.t0p * x.t0.adjoint()) - x.h0 * (x.t0p * x.t0p.adjoint())) /
        denom;
    // S block and its adjoint. The corner signs follow the gamma_1 =
    // t0' - t1 frame; the source display carries the opposite (plus-t1)
    // convention in these two blocks.
    C.topRightCorner(D0, D1) =
        (x.h0 * (x.t0p * x.t1.adjoint()) - x.dh0 * (x.t0 * x.t1.adjoint())) / denom;
    C.bottomLeftCorner(D1, D0) =
        (x.h0 * (x.t1 * x.t0p.adjoint()) - x.dbh0 * (x.t1 * x.t0.adjoint())) / denom;
    return C;
}

}  // namespace

Fb2Decomposition fb2_projection(const Fb2Model& model, Complex lambda) {
    Fb2Pieces x = fb2_pieces(model, lambda);
    int D0 = model.dim0(), D1 = model.dim1(), D = D0 + D1;
    Complex det = x.h0 * x.h1 - x.K0 * x.h0 * x.h0;
    if (std::abs(det) < 1e-300)
        throw std::domain_error("fb2_projection: h0 h1 - K0 h0^2 vanishes");

    Fb2Decomposition out;
    out.theta = -x.K0 * x.h0 * x.h0 / det;
    out.diag_part = CMatrix::Zero(D, D);
    out.diag_part.topLeftCorner(D0, D0) = (x.t0 * x.t0.adjoint()) / x.h0;
    out.diag_part.bottomRightCorner(D1, D1) = (x.t1 * x.t1.adjoint()) / x.h1;
    out.coupling_part = coupling_block(x, D0, D1);
    out.direct = projection_curve(fb2_frame(model), Point{lambda});
    return out;
}

ThetaRelation fb2_theta_relation(const Fb2Model& model, Complex lambda) {
    Fb2Pieces x = fb2_pieces(model, lambda);
    Complex det = x.h0 * x.h1 - x.K0 * x.h0 * x.h0;
    if (std::abs(det) < 1e-300)
        throw std::domain_error("fb2_theta_relation: denominator vanishes");
    Complex theta = -x.K0 * x.h0 * x.h0 / det;
    double scale = std::max({1.0, std::abs(theta * x.h1), std::abs(x.K0 * x.h0)});
    ThetaRelation out;
    out.r_minus = std::abs(theta * x.h1 + (1.0 - theta) * x.K0 * x.h0) / scale;
    out.r_plus = std::abs(theta * x.h1 + (1.0 + theta) * x.K0 * x.h0) / scale;
    return out;
}

double JetActionReport::max_residual() const {
    return std::max({fix_t0, map_t0prime, f_block_identity});
}

JetActionReport fb2_jet_action_check(const Fb2Model& model, Complex lambda) {
    Fb2Pieces x = fb2_pieces(model, lambda);
    int D0 = model.dim0(), D1 = model.dim1(), D = D0 + D1;
    CMatrix C = coupling_block(x, D0, D1);

    auto embed0 = [&](const CVector& v) {
        CVector w = CVector::Zero(D);
        w.head(D0) = v;
        return w;
    };
    CVector in0 = embed0(x.t0);
    CVector in1 = embed0(x.t0p);
    // second target carries the frame's bottom component, -t1
    CVector want1 = embed0(x.t0p);
    want1.tail(D1) = -x.t1;

    JetActionReport rep;
    rep.fix_t0 = rel_residual(C * in0, in0);
    rep.map_t0prime = rel_residual(C * in1, want1);
    CMatrix span(D0, 2);
    span.col(0) = x.t0;
    span.col(1) = x.t0p;
    rep.f_block_identity = rel_residual(C.topLeftCorner(D0, D0) * span, span);
    return rep;
}

CMatrix projection_curve(const Frame& frame, const Point& z) {
    CMatrix a = frame.eval(z);
    CMatrix h = a.adjoint() * a;
    return a * h.partialPivLu().solve(a.adjoint());
}

double FlagDiagramReport::max_residual() const {
    double r = 0.0;
    for (double v : commutativity) r = std::max(r, v);
    for (double v : conjugated_commutativity) r = std::max(r, v);
    for (double v : projection_conjugation) r = std::max(r, v);
    return r;
}

namespace {

// J_k as a matrix on the total space: least-squares extension of
// v_r = t0^{(r)} (+) 0 ... |-> w_r = sum_{s<=r} t_s^{(r-s)} per block.
CMatrix flag_map_matrix(const std::vector<std::vector<PolynomialSection>>& derivs, int n,
                        int k, const Point& z) {
    int Dblk = derivs[0][0].dim();
    int D = n * Dblk;
    CMatrix V = CMatrix::Zero(D, k + 1), W = CMatrix::Zero(D, k + 1);
    for (int r = 0; r <= k; ++r) {
        V.block(0, r, Dblk, 1) = derivs[0][r].eval(z);
        for (int s = 0; s <= r; ++s)
            W.block(s * Dblk, r, Dblk, 1) = derivs[s][r - s].eval(z);
    }
    // M = W (V^*V)^{-1} V^*: acts as J_k on span V, kills the complement
    CMatrix G = V.adjoint() * V;
    return W * G.partialPivLu().solve(V.adjoint());
}

std::vector<std::vector<PolynomialSection>> all_derivs(
    const std::vector<PolynomialSection>& t, int n) {
    std::vector<std::vector<PolynomialSection>> out(n);
    for (int s = 0; s < n; ++s) {
        PolynomialSection cur = t[s];
        out[s].push_back(cur);
        for (int r = 1; r < n; ++r) {
            cur = cur.derivative(0);
            out[s].push_back(cur);
        }
    }
    return out;
}

std::vector<double> diagram_residuals(const std::vector<PolynomialSection>& t, int n,
                                      const Point& z) {
    auto derivs = all_derivs(t, n);
    std::vector<double> out;
    int Dblk = t[0].dim();
    for (int k = 0; k + 1 < n; ++k) {
        CMatrix Mk = flag_map_matrix(derivs, n, k, z);
        CMatrix Mk1 = flag_map_matrix(derivs, n, k + 1, z);
        CMatrix V = CMatrix::Zero(n * Dblk, k + 1);
        for (int r = 0; r <= k; ++r) V.block(0, r, Dblk, 1) = derivs[0][r].eval(z);
        out.push_back(rel_residual(Mk1 * V, Mk * V));
    }
    if (n == 1) out.push_back(0.0);  // vacuous diagram
    return out;
}

}  // namespace

FlagDiagramReport flag_diagram_check(const std::vector<PolynomialSection>& t, int n,
                                     Complex lambda, unsigned seed) {
    if (static_cast<int>(t.size()) < n)
        throw std::invalid_argument("flag_diagram_check: need n sections");
    int Dblk = t[0].dim();
    for (const auto& s : t)
        if (s.dim() != Dblk || s.m() != 1)
            throw std::invalid_argument("flag_diagram_check: sections must share dim, m = 1");
    Point z{lambda};

    FlagDiagramReport rep;
    rep.commutativity = diagram_residuals(t, n, z);

    std::vector<CMatrix> U(n);
    std::vector<PolynomialSection> tc;
    for (int s = 0; s < n; ++s) {
        U[s] = random_unitary(Dblk, seed + static_cast<unsigned>(s));
        tc.push_back(t[s].apply_linear(U[s]));
    }
    rep.conjugated_commutativity = diagram_residuals(tc, n, z);

    // leading-block projections of the conjugated model are conjugated
    auto derivs = all_derivs(t, n);
    auto derivs_c = all_derivs(tc, n);
    for (int i = 1; i <= n; ++i) {
        int D = i * Dblk;
        Frame fi, fi_c;
        for (int k = 0; k < i; ++k) {
            PolynomialSection gk(1, D), gk_c(1, D);
            for (int s = 0; s <= k; ++s) {
                gk = gk.plus(derivs[s][k - s].embedded(D, s * Dblk));
                gk_c = gk_c.plus(derivs_c[s][k - s].embedded(D, s * Dblk));
            }
            fi.sections.push_back(gk);
            fi_c.sections.push_back(gk_c);
        }
        CMatrix Ui = CMatrix::Zero(D, D);
        for (int s = 0; s < i; ++s) Ui.block(s * Dblk, s * Dblk, Dblk, Dblk) = U[s];
        CMatrix P = projection_curve(fi, z);
        CMatrix Pc = projection_curve(fi_c, z);
        rep.projection_conjugation.push_back(rel_residual(Pc, Ui * P * Ui.adjoint()));
    }
    return rep;
}

}  // namespace holocurve
