#ifndef HOLOCURVE_PLAN_HPP
#define HOLOCURVE_PLAN_HPP

#include <functional>
#include <string>
#include <vector>

#include "holocurve/jet.hpp"

namespace holocurve {

enum class StepKind { Hol, AntiHol };

struct PlanStep {
    StepKind kind;
    int coord;  // 0-based
    bool operator==(const PlanStep& o) const { return kind == o.kind && coord == o.coord; }
};

/// Ordered sequence of elementary covariant-derivative steps. The multiset
/// of Hol coordinates determines I, the AntiHol multiset determines J;
/// distinct orderings of the same (I, J) are distinct plans.
struct DerivPlan {
    std::vector<PlanStep> steps;

    /// AntiHol steps first (coordinate-ascending, multiplicity-expanded),
    /// then Hol steps; matches the K_{e_l,e_k} = I(d_l(K_{0,e_k})) pattern.
    static DerivPlan canonical(const MultiIndex& I, const MultiIndex& J);
    /// Hol steps first, then AntiHol; the other Remark-style ordering.
    static DerivPlan hol_first(const MultiIndex& I, const MultiIndex& J);

    int size() const { return static_cast<int>(steps.size()); }
    int hol_order() const;
    int antihol_order() const;
    MultiIndex hol_index(int m) const;
    MultiIndex antihol_index(int m) const;

    /// True when the Hol steps involve at most one coordinate and likewise
    /// for the AntiHol steps (an elementary pair).
    bool single_pair() const;

    /// Subsequence of steps matching Hol(p) or AntiHol(q); pass -1 to drop
    /// one side entirely. Relative order is preserved.
    DerivPlan induced(int p_coord, int q_coord) const;

    std::string to_string() const;
};

/// One covariant-derivative step applied to an accumulated jet.
using StepApply = std::function<WirtingerJet(const WirtingerJet&, const PlanStep&)>;

/// Left-to-right application of the steps; the unambiguous operational form.
WirtingerJet apply_plan_sequential(const WirtingerJet& K0, const DerivPlan& plan,
                                   const StepApply& step);

/// Sum over elementary pairs (i_p e_p, j_q e_q), each evaluated sequentially
/// on its induced sub-plan; pure-I and pure-J plans sum over single
/// coordinates.
WirtingerJet apply_plan_pair_sum(const WirtingerJet& K0, const DerivPlan& plan,
                                 const StepApply& step);

/// Literal evaluation of the defining split recursions, peeling the last
/// step: K_{I+e_l,J} = K_{I w/o l,J} + step_l(K_{i_l e_l,J}) and the
/// antiholomorphic mirror. Coincides with the pair sum; kept as an
/// independent code path for the decomposition checks.
WirtingerJet apply_plan_recursion(const WirtingerJet& K0, const DerivPlan& plan,
                                  const StepApply& step);

}  // namespace holocurve

#endif
