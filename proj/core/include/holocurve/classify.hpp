#ifndef HOLOCURVE_CLASSIFY_HPP
#define HOLOCURVE_CLASSIFY_HPP

#include <map>
#include <string>

#include "holocurve/curves.hpp"

namespace holocurve {

enum class Verdict { Equivalent, NotEquivalent, Inconclusive };

std::string to_string(Verdict v);

struct EquivalenceVerdict {
    Verdict verdict = Verdict::Inconclusive;
    std::string witness;
    std::map<std::string, double> residuals;
};

/// Rank-1 unitary equivalence from curvature agreement over the sampled
/// Gram jets (caps at least (1,1) each).
EquivalenceVerdict b1_unitary_equivalence(const std::vector<WirtingerJet>& gram1,
                                          const std::vector<WirtingerJet>& gram2,
                                          double tolerance);

/// FB2 criterion: curvature of the leading block and the coupling ratio
/// ||S t1||^2 / ||t1||^2 must both agree on all samples.
EquivalenceVerdict fb2_unitary_equivalence(const Fb2Model& a, const Fb2Model& b,
                                           const std::vector<Point>& samples,
                                           double tolerance);

/// Similarity of commuting weighted-shift tuples from the ratio family
/// b_I / a_I, |I| <= N. Truncation is genuinely asymptotic, so the verdict
/// carries a trend diagnostic and the bounds observed at this N.
EquivalenceVerdict weighted_shift_similarity(const DiagonalKernelSpec& a,
                                             const DiagonalKernelSpec& b);

/// max over points and |I| <= p, |J| <= q of the product intertwining
/// residual X D^I I1 Dbar^J I1 - D^I I2 Dbar^J I2 X.
double product_intertwine_check(const ExtendedCurve& c1, const ExtendedCurve& c2,
                                const CMatrix& X, int p, int q,
                                const std::vector<Point>& points);

struct SimilarityWitness {
    double intertwine_residual = 0.0;  // Y K1_plan - K2_plan Y
    double inverse_residual = 0.0;     // Y Z - identity
};

/// Y_lambda = H2^{-1} G2^* U F1 and Z_lambda = H1^{-1} G1^* U^* F2; valid
/// when U I1 = I2 U.
SimilarityWitness classical_similarity_witness(const ExtendedCurve& c1, const ExtendedCurve& c2,
                                               const CMatrix& U, const DerivPlan& plan,
                                               const Point& base);

/// H_P = |phi|^2 H_Q test through pluriharmonicity of log(det H_P/det H_Q);
/// when the reference frame is the plain monomial one and the candidate has
/// polynomial entries of bounded degree, the constant-phi coefficient
/// orthonormality residual is reported as well.
EquivalenceVerdict finite_rank_twist_equivalence(const Frame& p, const Frame& q,
                                                 const std::vector<Point>& samples,
                                                 double tolerance);

}  // namespace holocurve

#endif
