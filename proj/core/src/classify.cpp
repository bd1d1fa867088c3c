#include "holocurve/classify.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace holocurve {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Equivalent: return "equivalent";
        case Verdict::NotEquivalent: return "not-equivalent";
        default: return "inconclusive";
    }
}

namespace {

Complex scalar_curvature(const WirtingerJet& gram_jet) {
    return classical_curvature(gram_jet).value()(0, 0);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string fmt(Complex v) {
    std::ostringstream os;
    os.precision(6);
    os << v.real();
    if (v.imag() != 0.0) os << (v.imag() > 0 ? "+" : "") << v.imag() << "i";
    return os.str();
}

}  // namespace

EquivalenceVerdict b1_unitary_equivalence(const std::vector<WirtingerJet>& gram1,
                                          const std::vector<WirtingerJet>& gram2,
                                          double tolerance) {
    if (gram1.size() != gram2.size())
        throw std::invalid_argument("b1_unitary_equivalence: sample count mismatch");
    EquivalenceVerdict out;
    double worst = 0.0;
    size_t worst_at = 0;
    Complex k1w = 0, k2w = 0;
    for (size_t s = 0; s < gram1.size(); ++s) {
        if (gram1[s].rows() != 1 || gram2[s].rows() != 1)
            throw std::invalid_argument("b1_unitary_equivalence: rank 1 required");
        Complex k1 = scalar_curvature(gram1[s]);
        Complex k2 = scalar_curvature(gram2[s]);
        double d = std::abs(k1 - k2);
        if (d > worst) {
            worst = d;
            worst_at = s;
            k1w = k1;
            k2w = k2;
        }
    }
    out.residuals["curvature_gap"] = worst;
    if (worst <= tolerance) {
        out.verdict = Verdict::Equivalent;
        out.witness = "curvature agrees at all samples (max gap " + fmt(worst) + ")";
    } else {
        out.verdict = Verdict::NotEquivalent;
        out.witness = "curvature differs at sample " + std::to_string(worst_at) + ": " +
                      fmt(k1w) + " vs " + fmt(k2w);
    }
    return out;
}

EquivalenceVerdict fb2_unitary_equivalence(const Fb2Model& a, const Fb2Model& b,
                                           const std::vector<Point>& samples,
                                           double tolerance) {
    EquivalenceVerdict out;
    double curv_gap = 0.0, ratio_gap = 0.0;
    Complex ka_w = 0, kb_w = 0;
    double ra_w = 0, rb_w = 0;
    Frame fa0{{a.t0()}}, fb0{{b.t0()}};
    Frame fa1{{a.t1()}}, fb1{{b.t1()}};
    for (const auto& z : samples) {
        WirtingerJet ha0 = gram(fa0, fa0, z, 1, 1);
        WirtingerJet hb0 = gram(fb0, fb0, z, 1, 1);
        Complex ka = scalar_curvature(ha0), kb = scalar_curvature(hb0);
        if (std::abs(ka - kb) > curv_gap) {
            curv_gap = std::abs(ka - kb);
            ka_w = ka;
            kb_w = kb;
        }
        WirtingerJet ha1 = gram(fa1, fa1, z, 0, 0);
        WirtingerJet hb1 = gram(fb1, fb1, z, 0, 0);
        double ra = ha0.value()(0, 0).real() / ha1.value()(0, 0).real();
        double rb = hb0.value()(0, 0).real() / hb1.value()(0, 0).real();
        if (std::abs(ra - rb) > ratio_gap) {
            ratio_gap = std::abs(ra - rb);
            ra_w = ra;
            rb_w = rb;
        }
    }
    out.residuals["curvature_gap"] = curv_gap;
    out.residuals["coupling_ratio_gap"] = ratio_gap;
    if (curv_gap <= tolerance && ratio_gap <= tolerance) {
        out.verdict = Verdict::Equivalent;
        out.witness = "curvature and coupling ratio agree at all samples";
    } else if (curv_gap > tolerance) {
        out.verdict = Verdict::NotEquivalent;
        out.witness = "curvature witness: " + fmt(ka_w) + " vs " + fmt(kb_w);
    } else {
        out.verdict = Verdict::NotEquivalent;
        out.witness = "coupling ratio witness: " + fmt(ra_w) + " vs " + fmt(rb_w);
    }
    return out;
}

EquivalenceVerdict weighted_shift_similarity(const DiagonalKernelSpec& a,
                                             const DiagonalKernelSpec& b) {
    if (a.m != b.m || a.truncation != b.truncation)
        throw std::invalid_argument("weighted_shift_similarity: same m and N required");
    a.validate();
    b.validate();
    EquivalenceVerdict out;
    int N = a.truncation;
    auto idx = enumerate_total_degree(a.m, N);
    std::vector<double> deg_max(N + 1, 0.0), deg_min(N + 1, 1e300);
    double lo = 1e300, hi = 0.0;
    for (size_t k = 0; k < idx.size(); ++k) {
        double r = b.weights[k] / a.weights[k];
        int d = idx[k].total_degree();
        deg_max[d] = std::max(deg_max[d], r);
        deg_min[d] = std::min(deg_min[d], r);
        hi = std::max(hi, r);
        lo = std::min(lo, r);
    }
    out.residuals["ratio_min"] = lo;
    out.residuals["ratio_max"] = hi;

    double up_drift = deg_max[N] / deg_max[N / 2];
    double down_drift = deg_min[N] / deg_min[N / 2];
    bool grow_up = up_drift > 1.05, shrink_down = down_drift < 1.0 / 1.05;
    bool monotone_up = true, monotone_down = true;
    for (int d = (3 * N) / 4; d < N; ++d) {
        monotone_up = monotone_up && deg_max[d + 1] >= deg_max[d] * (1.0 - 1e-12);
        monotone_down = monotone_down && deg_min[d + 1] <= deg_min[d] * (1.0 + 1e-12);
    }
    bool stable = std::abs(up_drift - 1.0) <= 0.01 && std::abs(down_drift - 1.0) <= 0.01;

    out.residuals["upper_drift"] = up_drift;
    out.residuals["lower_drift"] = down_drift;
    if ((grow_up && monotone_up) || (shrink_down && monotone_down)) {
        out.verdict = Verdict::NotEquivalent;
        out.witness = grow_up ? "ratio b_I/a_I grows monotonically (trend unbounded), max " +
                                    fmt(hi) + " at degree " + std::to_string(N)
                              : "ratio b_I/a_I shrinks monotonically toward 0, min " + fmt(lo);
    } else if (stable) {
        out.verdict = Verdict::Equivalent;
        out.witness =
            "ratio bounds stabilized in [" + fmt(lo) + ", " + fmt(hi) + "] at N = " +
            std::to_string(N);
    } else {
        out.verdict = Verdict::Inconclusive;
        out.witness = "ratio trend unresolved at truncation N = " + std::to_string(N);
    }
    return out;
}

double product_intertwine_check(const ExtendedCurve& c1, const ExtendedCurve& c2,
                                const CMatrix& X, int p, int q,
                                const std::vector<Point>& points) {
    double worst = 0.0;
    int m = c1.m();
    MultiIndex z = MultiIndex::zero(m);
    for (const auto& pt : points) {
        WirtingerJet I1 = curve_eval_jet(c1, pt, p, q);
        WirtingerJet I2 = curve_eval_jet(c2, pt, p, q);
        for (const auto& I : enumerate_total_degree(m, p)) {
            for (const auto& J : enumerate_total_degree(m, q)) {
                CMatrix d1 = I1.extract(I, z) * I1.extract(z, J);
                CMatrix d2 = I2.extract(I, z) * I2.extract(z, J);
                worst = std::max(worst, rel_residual(X * d1, d2 * X));
            }
        }
    }
    return worst;
}

SimilarityWitness classical_similarity_witness(const ExtendedCurve& c1, const ExtendedCurve& c2,
                                               const CMatrix& U, const DerivPlan& plan,
                                               const Point& base) {
    int a = plan.hol_order(), b = plan.antihol_order();
    CurveJets j1 = make_curve_jets(c1, base, a + 2, b + 2);
    CurveJets j2 = make_curve_jets(c2, base, a + 2, b + 2);
    CMatrix Y = j2.H.value().partialPivLu().solve(j2.Gadj.value() * U * j1.F.value());
    CMatrix Z = j1.H.value().partialPivLu().solve(j1.Gadj.value() * U.adjoint() * j2.F.value());
    CMatrix K1 = classical_covariant_derivative(j1.H, plan).value();
    CMatrix K2 = classical_covariant_derivative(j2.H, plan).value();
    SimilarityWitness out;
    out.intertwine_residual = rel_residual(Y * K1, K2 * Y);
    out.inverse_residual = rel_residual(Y * Z, CMatrix::Identity(Y.rows(), Y.cols()));
    return out;
}

namespace {

WirtingerJet jet_det(const WirtingerJet& H) {
    int n = H.rows();
    if (n == 1) return H;
    // cofactor expansion along the first row; jets of the entries
    auto entry = [&](int i, int j) {
        WirtingerJet e(H.base(), H.p(), H.q(), 1, 1);
        for (int a = 0; a < H.itab().size(); ++a)
            for (int bpos = 0; bpos < H.jtab().size(); ++bpos)
                e.coeff(a, bpos)(0, 0) = H.coeff(a, bpos)(i, j);
        return e;
    };
    std::function<WirtingerJet(std::vector<int>, std::vector<int>)> det =
        [&](std::vector<int> rows, std::vector<int> cols) -> WirtingerJet {
        if (rows.size() == 1) return entry(rows[0], cols[0]);
        WirtingerJet acc = WirtingerJet::zero(H.base(), H.p(), H.q(), 1, 1);
        for (size_t k = 0; k < cols.size(); ++k) {
            std::vector<int> rrows(rows.begin() + 1, rows.end());
            std::vector<int> rcols;
            for (size_t t = 0; t < cols.size(); ++t)
                if (t != k) rcols.push_back(cols[t]);
            WirtingerJet minor = det(rrows, rcols);
            WirtingerJet term = entry(rows[0], cols[k]) * minor;
            acc = acc + (k % 2 == 0 ? term : term.scaled(-1.0));
        }
        return acc;
    };
    std::vector<int> all(n);
    for (int k = 0; k < n; ++k) all[k] = k;
    return det(all, all);
}

// true when the section's entries are exactly the unit-weight monomials w^i
bool is_plain_monomial_section(const PolynomialSection& s) {
    if (s.m() != 1) return false;
    int D = s.dim();
    if (static_cast<int>(s.terms().size()) != D) return false;
    for (const auto& [mono, v] : s.terms()) {
        int j = mono[0];
        if (j >= D) return false;
        for (int i = 0; i < D; ++i) {
            Complex want = (i == j) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
            if (std::abs(v(i) - want) > 1e-14) return false;
        }
    }
    return true;
}

}  // namespace

EquivalenceVerdict finite_rank_twist_equivalence(const Frame& p, const Frame& q,
                                                 const std::vector<Point>& samples,
                                                 double tolerance) {
    if (p.n() != q.n()) throw std::invalid_argument("finite_rank_twist: same rank required");
    EquivalenceVerdict out;
    double pluri = 0.0;
    int m = p.m();
    for (const auto& z : samples) {
        WirtingerJet hp = jet_det(gram(p, p, z, 1, 1));
        WirtingerJet hq = jet_det(gram(q, q, z, 1, 1));
        WirtingerJet lr = jet_log(hp) - jet_log(hq);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                pluri = std::max(pluri, std::abs(lr.extract(MultiIndex::unit(m, i),
                                                            MultiIndex::unit(m, j))(0, 0)));
    }
    out.residuals["pluriharmonic_defect"] = pluri;

    // constant-phi coefficient test, applicable against the plain monomial
    // reference with polynomial entries of degree < D
    if (p.n() == 1 && q.n() == 1 && m == 1 && is_plain_monomial_section(p.sections[0])) {
        int D = q.sections[0].dim();
        if (q.sections[0].degree() < D) {
            CMatrix beta = CMatrix::Zero(D, D);
            for (const auto& [mono, v] : q.sections[0].terms()) beta.col(mono[0]) = v;
            CMatrix C = beta.adjoint() * beta;
            out.residuals["beta_orthonormality"] =
                (C - CMatrix::Identity(D, D)).cwiseAbs().maxCoeff();
        }
    }

    if (pluri <= tolerance) {
        out.verdict = Verdict::Equivalent;
        out.witness = "log det ratio is pluriharmonic at all samples (defect " + fmt(pluri) + ")";
    } else {
        out.verdict = Verdict::NotEquivalent;
        out.witness = "dbar-d of log det ratio nonzero (defect " + fmt(pluri) + ")";
        auto it = out.residuals.find("beta_orthonormality");
        if (it != out.residuals.end() && it->second > tolerance)
            out.witness += "; coefficient columns not orthonormal (defect " +
                           fmt(it->second) + ")";
    }
    return out;
}

}  // namespace holocurve
