#ifndef HOLOCURVE_SAMPLERS_HPP
#define HOLOCURVE_SAMPLERS_HPP

#include "holocurve/curves.hpp"
#include "holocurve/fd_oracle.hpp"

namespace holocurve {

/// Extended-precision pointwise evaluators feeding fd_oracle; these share
/// no code with the jet pipeline they cross-validate.
LCMatrix frame_eval_ld(const Frame& f, const LPoint& z);
Sampler gram_sampler(const Frame& F, const Frame& G);
Sampler curve_sampler(const ExtendedCurve& c);

}  // namespace holocurve

#endif
