#include "holocurve/plan.hpp"

#include <set>
#include <stdexcept>

namespace holocurve {

DerivPlan DerivPlan::canonical(const MultiIndex& I, const MultiIndex& J) {
    DerivPlan p;
    for (int k = 0; k < J.dim(); ++k)
        for (int r = 0; r < J[k]; ++r) p.steps.push_back({StepKind::AntiHol, k});
    for (int k = 0; k < I.dim(); ++k)
        for (int r = 0; r < I[k]; ++r) p.steps.push_back({StepKind::Hol, k});
    return p;
}

DerivPlan DerivPlan::hol_first(const MultiIndex& I, const MultiIndex& J) {
    DerivPlan p;
    for (int k = 0; k < I.dim(); ++k)
        for (int r = 0; r < I[k]; ++r) p.steps.push_back({StepKind::Hol, k});
    for (int k = 0; k < J.dim(); ++k)
        for (int r = 0; r < J[k]; ++r) p.steps.push_back({StepKind::AntiHol, k});
    return p;
}

int DerivPlan::hol_order() const {
    int n = 0;
    for (const auto& s : steps) n += (s.kind == StepKind::Hol);
    return n;
}

int DerivPlan::antihol_order() const { return size() - hol_order(); }

MultiIndex DerivPlan::hol_index(int m) const {
    std::vector<int> e(m, 0);
    for (const auto& s : steps)
        if (s.kind == StepKind::Hol) e.at(s.coord) += 1;
    return MultiIndex(e);
}

MultiIndex DerivPlan::antihol_index(int m) const {
    std::vector<int> e(m, 0);
    for (const auto& s : steps)
        if (s.kind == StepKind::AntiHol) e.at(s.coord) += 1;
    return MultiIndex(e);
}

bool DerivPlan::single_pair() const {
    std::set<int> h, a;
    for (const auto& s : steps) (s.kind == StepKind::Hol ? h : a).insert(s.coord);
    return h.size() <= 1 && a.size() <= 1;
}

DerivPlan DerivPlan::induced(int p_coord, int q_coord) const {
    DerivPlan r;
    for (const auto& s : steps) {
        if (s.kind == StepKind::Hol && s.coord == p_coord) r.steps.push_back(s);
        if (s.kind == StepKind::AntiHol && s.coord == q_coord) r.steps.push_back(s);
    }
    return r;
}

std::string DerivPlan::to_string() const {
    std::string out;
    for (const auto& s : steps) {
        if (!out.empty()) out += ",";
        out += (s.kind == StepKind::Hol ? "H" : "A") + std::to_string(s.coord + 1);
    }
    return out.empty() ? "(empty)" : out;
}

WirtingerJet apply_plan_sequential(const WirtingerJet& K0, const DerivPlan& plan,
                                   const StepApply& step) {
    WirtingerJet X = K0;
    for (const auto& s : plan.steps) X = step(X, s);
    return X;
}

WirtingerJet apply_plan_pair_sum(const WirtingerJet& K0, const DerivPlan& plan,
                                 const StepApply& step) {
    int m = K0.m();
    MultiIndex I = plan.hol_index(m), J = plan.antihol_index(m);
    if (I.total_degree() == 0 && J.total_degree() == 0) return K0;
    std::vector<WirtingerJet> terms;
    if (I.total_degree() == 0) {
        for (int q = 0; q < m; ++q)
            if (J[q] > 0) terms.push_back(apply_plan_sequential(K0, plan.induced(-1, q), step));
    } else if (J.total_degree() == 0) {
        for (int p = 0; p < m; ++p)
            if (I[p] > 0) terms.push_back(apply_plan_sequential(K0, plan.induced(p, -1), step));
    } else {
        for (int p = 0; p < m; ++p) {
            if (I[p] == 0) continue;
            for (int q = 0; q < m; ++q) {
                if (J[q] == 0) continue;
                terms.push_back(apply_plan_sequential(K0, plan.induced(p, q), step));
            }
        }
    }
    // terms carry different caps (shorter sub-plans consume fewer orders)
    int pc = terms[0].p(), qc = terms[0].q();
    for (const auto& t : terms) {
        pc = std::min(pc, t.p());
        qc = std::min(qc, t.q());
    }
    WirtingerJet acc = terms[0].truncated(pc, qc);
    for (size_t k = 1; k < terms.size(); ++k) acc = acc + terms[k].truncated(pc, qc);
    return acc;
}

WirtingerJet apply_plan_recursion(const WirtingerJet& K0, const DerivPlan& plan,
                                  const StepApply& step) {
    if (plan.steps.empty() || plan.single_pair())
        return apply_plan_sequential(K0, plan, step);
    PlanStep last = plan.steps.back();
    // split recursion, peeling the last step: the same-side same-coordinate
    // term advances by one step, the remaining same-side coordinates carry
    // over unchanged; opposite-side steps belong to both sub-plans.
    DerivPlan rest, own;
    for (auto it = plan.steps.begin(); it != plan.steps.end() - 1; ++it) {
        const PlanStep& s = *it;
        bool same_side_coord = (s.kind == last.kind && s.coord == last.coord);
        if (same_side_coord)
            own.steps.push_back(s);
        else if (s.kind == last.kind)
            rest.steps.push_back(s);
        else {
            rest.steps.push_back(s);
            own.steps.push_back(s);
        }
    }

    WirtingerJet b = step(apply_plan_recursion(K0, own, step), last);
    bool rest_has_side = (last.kind == StepKind::Hol) ? rest.hol_order() > 0
                                                      : rest.antihol_order() > 0;
    if (!rest_has_side) return b;
    WirtingerJet a = apply_plan_recursion(K0, rest, step);
    int pc = std::min(a.p(), b.p()), qc = std::min(a.q(), b.q());
    return a.truncated(pc, qc) + b.truncated(pc, qc);
}

}  // namespace holocurve
