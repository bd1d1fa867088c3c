#ifndef HOLOCURVE_FD_ORACLE_HPP
#define HOLOCURVE_FD_ORACLE_HPP

#include <functional>

#include "holocurve/jet.hpp"

namespace holocurve {

using LComplex = std::complex<long double>;
using LPoint = std::vector<LComplex>;
using LCMatrix = Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic>;

/// Pointwise evaluator f: C^m -> matrices, sampled in extended precision so
/// that nested difference quotients keep headroom below the target
/// tolerances up to total order ~4.
using Sampler = std::function<LCMatrix(const LPoint&)>;

/// Central-difference estimate of D^I Dbar^J f at base using Wirtinger
/// combinations d = (dx - i dy)/2 and dbar = (dx + i dy)/2 applied
/// coordinate-wise; first derivatives use 4th-order stencils, higher orders
/// nest them. Accuracy degrades with |I|+|J|; |I|+|J| <= 4 recommended.
CMatrix fd_oracle(const Sampler& sampler, const Point& base, const MultiIndex& I,
                  const MultiIndex& J, double step = 1e-4);

Sampler sampler_from_double(std::function<CMatrix(const Point&)> f);

}  // namespace holocurve

#endif
