#ifndef HOLOCURVE_JET_HPP
#define HOLOCURVE_JET_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "holocurve/multi_index.hpp"

namespace holocurve {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Point = std::vector<Complex>;  // point in C^m

/// Truncated Taylor table of a real-analytic matrix-valued function of
/// (lambda, conj(lambda)) around a base point, with lambda and conj(lambda)
/// treated as independent variables (Wirtinger calculus).
///
/// coeff(I, J) stores D^I Dbar^J f(base) / (I! J!); the holomorphic side is
/// truncated at total order p, the antiholomorphic side at q. All
/// coefficient matrices share one shape; scalar jets are the 1x1 case.
class WirtingerJet {
public:
    WirtingerJet(Point base, int p, int q, int rows, int cols);

    static WirtingerJet constant(const Point& base, int p, int q, const CMatrix& value);
    static WirtingerJet identity(const Point& base, int p, int q, int n);
    static WirtingerJet zero(const Point& base, int p, int q, int rows, int cols);
    /// Jet of the coordinate function lambda_coord (value taken at base).
    static WirtingerJet coordinate(const Point& base, int p, int q, int coord);
    static WirtingerJet coordinate_conj(const Point& base, int p, int q, int coord);

    int m() const { return static_cast<int>(base_.size()); }
    int p() const { return p_; }
    int q() const { return q_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Point& base() const { return base_; }
    const IndexTable& itab() const { return *itab_; }
    const IndexTable& jtab() const { return *jtab_; }

    const CMatrix& coeff(int ipos, int jpos) const { return c_[idx(ipos, jpos)]; }
    CMatrix& coeff(int ipos, int jpos) { return c_[idx(ipos, jpos)]; }
    const CMatrix& coeff(const MultiIndex& I, const MultiIndex& J) const;
    CMatrix& coeff(const MultiIndex& I, const MultiIndex& J);

    /// f(base) = coeff(0, 0).
    const CMatrix& value() const { return c_[0]; }

    /// I! J! coeff(I, J) = D^I Dbar^J f(base). Throws when out of caps.
    CMatrix extract(const MultiIndex& I, const MultiIndex& J) const;

    WirtingerJet operator+(const WirtingerJet& o) const;
    WirtingerJet operator-(const WirtingerJet& o) const;
    WirtingerJet operator*(const WirtingerJet& o) const;  // truncated Cauchy product
    WirtingerJet scaled(Complex s) const;
    WirtingerJet operator-() const { return scaled(-1.0); }

    /// Jet of f(lambda)^*: swaps (I,J) -> (J,I) with conjugate transpose.
    WirtingerJet adjoint() const;
    WirtingerJet transposed() const;

    /// Wirtinger partials; output caps shrink on the differentiated side.
    WirtingerJet d(int coord) const;
    WirtingerJet dbar(int coord) const;
    WirtingerJet d_sum() const;     // sum over coordinates
    WirtingerJet dbar_sum() const;

    /// Copy restricted to smaller caps.
    WirtingerJet truncated(int p, int q) const;

    WirtingerJet trace() const;  // entrywise trace, result 1x1

    double max_abs() const;

    bool same_lattice(const WirtingerJet& o) const;

private:
    int idx(int ipos, int jpos) const { return ipos * jtab_->size() + jpos; }
    Point base_;
    int p_, q_, rows_, cols_;
    std::shared_ptr<const IndexTable> itab_, jtab_;
    std::vector<CMatrix> c_;
};

struct JetInvertOptions {
    double max_condition = 1e6;  // rejection threshold on the constant term
};

/// Jet of h^{-1}: the constant term is inverted directly and higher orders
/// follow by the Neumann/convolution recursion around it. Requires a square
/// shape and a constant term whose condition number stays below the bound.
WirtingerJet jet_invert(const WirtingerJet& h, const JetInvertOptions& opts = {});

/// Jet of log h for a scalar jet with real positive constant term,
/// via log-series composition on the normalized remainder.
WirtingerJet jet_log(const WirtingerJet& h);

/// Max-entry deviation normalized by max(1, largest operand max-entry).
double rel_residual(const CMatrix& a, const CMatrix& b);
double rel_residual(const WirtingerJet& a, const WirtingerJet& b);

}  // namespace holocurve

#endif
