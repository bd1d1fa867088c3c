#ifndef HOLOCURVE_MODEL_HPP
#define HOLOCURVE_MODEL_HPP

#include <map>
#include <string>

#include "holocurve/jet.hpp"

namespace holocurve {

/// Scalar polynomial in lambda_1..lambda_m (holomorphic, no conjugates).
class ScalarPoly {
public:
    explicit ScalarPoly(int m) : m_(m) {}
    static ScalarPoly constant(int m, Complex c);
    static ScalarPoly coordinate(int m, int coord);

    int m() const { return m_; }
    void add_term(const MultiIndex& mono, Complex c);
    Complex eval(const Point& z) const;
    ScalarPoly derivative(int coord) const;
    ScalarPoly operator*(const ScalarPoly& o) const;
    ScalarPoly operator+(const ScalarPoly& o) const;
    ScalarPoly scaled(Complex s) const;
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, Complex>& terms() const { return terms_; }

private:
    int m_;
    std::map<std::vector<int>, Complex> terms_;
};

/// Vector-valued holomorphic polynomial map Omega -> C^D in the fixed
/// truncated basis. Purely holomorphic by construction.
class PolynomialSection {
public:
    PolynomialSection(int m, int dim) : m_(m), dim_(dim) {}

    int m() const { return m_; }
    int dim() const { return dim_; }
    int degree() const;

    void add_term(const MultiIndex& mono, const CVector& coeff);
    CVector eval(const Point& z) const;
    PolynomialSection derivative(int coord) const;
    PolynomialSection scaled(Complex s) const;
    PolynomialSection scaled_by(const ScalarPoly& phi) const;
    PolynomialSection plus(const PolynomialSection& o) const;
    /// U * section, entrywise on coefficient vectors.
    PolynomialSection apply_linear(const CMatrix& U) const;
    /// Copy into a larger ambient space at the given basis offset.
    PolynomialSection embedded(int total_dim, int offset) const;

    const std::map<std::vector<int>, CVector>& terms() const { return terms_; }

private:
    int m_, dim_;
    std::map<std::vector<int>, CVector> terms_;
};

/// Ordered tuple of sections sharing one ambient dimension.
struct Frame {
    std::vector<PolynomialSection> sections;

    int n() const { return static_cast<int>(sections.size()); }
    int m() const { return sections.at(0).m(); }
    int dim() const { return sections.at(0).dim(); }

    CMatrix eval(const Point& z) const;  // D x n
    Frame apply_linear(const CMatrix& U) const;
    Frame scaled_by(const ScalarPoly& phi) const;
};

/// Jet of the D x n matrix map lambda -> [sections evaluated]; all
/// antiholomorphic coefficients are exactly zero.
WirtingerJet frame_eval_jet(const Frame& f, const Point& base, int p, int q);
WirtingerJet section_eval_jet(const PolynomialSection& s, const Point& base, int p, int q);

/// Smallest singular value of the evaluated frame over the given points.
double frame_min_singular(const Frame& f, const std::vector<Point>& points);

/// Diagonal reproducing kernel K(w,l) = sum a_I^2 w^I conj(l)^I truncated at
/// total degree N; weights stored in graded-lex order.
struct DiagonalKernelSpec {
    int m = 1;
    int truncation = 0;
    std::vector<double> weights;  // aligned with enumerate_total_degree(m, N)

    static DiagonalKernelSpec hardy(int m, int N);
    static DiagonalKernelSpec bergman(int N);  // m = 1, a_j = sqrt(j+1)
    static DiagonalKernelSpec drury_arveson(int m, int N);  // a_I^2 = |I|!/I!
    static DiagonalKernelSpec explicit_weights(int m, int N, std::vector<double> w);
    static DiagonalKernelSpec preset(const std::string& name, int m, int N);

    double weight(const MultiIndex& I) const;
    int dim() const;  // #{I : |I| <= N}
    void validate() const;
};

/// Eigen-section of the truncated shift model: entries a_I lambda^I in the
/// orthonormal basis, so the Gram is the truncated kernel diagonal.
PolynomialSection section_from_kernel(const DiagonalKernelSpec& spec);

/// {t, t', ..., t^(k)} for m = 1.
Frame jet_frame(const PolynomialSection& t, int k);

/// {t, d_coord t} for any m; rank-2 frames in several variables.
Frame jet_frame_partial(const PolynomialSection& t, int coord);

/// gamma_k = sum_{i<=k} i! C(k,i) t_i^{(k-i)}, m = 1.
Frame ofb_frame(const std::vector<PolynomialSection>& t, int n);

/// Two-block flag model: T0, T1 given by diagonal kernels (m=1), coupling
/// through t0 = -S t1 with S a scalar multiple of the basis-matching map, so
/// t0 = -s * section(kernel0) and h0 = |s|^2 Gram0.
struct Fb2Model {
    DiagonalKernelSpec kernel0, kernel1;
    Complex coupling{1.0, 0.0};

    PolynomialSection t0() const;  // in C^{D0}
    PolynomialSection t1() const;  // in C^{D1}
    int dim0() const { return kernel0.dim(); }
    int dim1() const { return kernel1.dim(); }
    int dim() const { return dim0() + dim1(); }
};

/// {gamma0, gamma1} = {t0 (+) 0, t0' (+) (-t1)} on C^{D0+D1}, the frame used
/// by the projection decomposition.
Frame fb2_frame(const Fb2Model& model);

}  // namespace holocurve

#endif
