#ifndef HOLOCURVE_FLAGS_HPP
#define HOLOCURVE_FLAGS_HPP

#include "holocurve/curves.hpp"

namespace holocurve {

/// Split of the FB2 kernel projection P_T = (1-theta) diag(P_{T0}, P_{T1})
/// + theta * coupling, with theta from the proof's formula and the direct
/// projection built from the {t0, t0' - t1} frame.
struct Fb2Decomposition {
    Complex theta;
    CMatrix diag_part;      // block-diag(P_{T0}, P_{T1})
    CMatrix coupling_part;  // corner blocks (F_{P_T}, S_{P_T}, S_{P_T}^*)
    CMatrix direct;         // gamma h^{-1} gamma^*

    CMatrix reassembled() const;
    double reassembly_residual() const;
    double idempotency_residual() const;
    double self_adjointness_residual() const;
};

Fb2Decomposition fb2_projection(const Fb2Model& model, Complex lambda);

struct ThetaRelation {
    /// theta h1 + (1 - theta) K0 h0: vanishes identically with the proof's
    /// theta; this is the asserted residual.
    double r_minus;
    /// theta h1 + (1 + theta) K0 h0: the statement's sign, reported as
    /// documentation of the discrepancy, never asserted.
    double r_plus;
};

ThetaRelation fb2_theta_relation(const Fb2Model& model, Complex lambda);

struct JetActionReport {
    double fix_t0;        // coupling (t0, 0) -> (t0, 0)
    double map_t0prime;   // coupling (t0', 0) -> (t0', t1)
    double f_block_identity;  // F block is the identity on span{t0, t0'}
    double max_residual() const;
};

JetActionReport fb2_jet_action_check(const Fb2Model& model, Complex lambda);

/// P(lambda) = alpha h^{-1} alpha^* for a frame with G = F.
CMatrix projection_curve(const Frame& frame, const Point& z);

struct FlagDiagramReport {
    /// i . J_k = J_{k+1} . i on the evaluated jet-flag bases, k = 0..n-2.
    std::vector<double> commutativity;
    /// same residuals after conjugating the flag by diag(U_0,...,U_{n-1})
    std::vector<double> conjugated_commutativity;
    /// leading-block projections of the conjugated model are conjugated:
    /// P_{T~(i)} = U^(i) P_{T(i)} U^(i)*, i = 1..n
    std::vector<double> projection_conjugation;
    double max_residual() const;
};

/// Bundle maps J_i(t0^{(k)}) = t0^{(k)} + t1^{(k-1)} + ... + t_k realized as
/// matrices on the evaluated bases; blockwise unitaries are generated
/// deterministically from the seed.
FlagDiagramReport flag_diagram_check(const std::vector<PolynomialSection>& t, int n,
                                     Complex lambda, unsigned seed = 20240901);

}  // namespace holocurve

#endif
