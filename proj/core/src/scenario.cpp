#include "holocurve/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "holocurve/samplers.hpp"
#include "json.hpp"

namespace holocurve {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// pinned per-check defaults; a scenario/CLI tolerance overrides all of them
namespace tol {
constexpr double holomorphy = 1e-9;
constexpr double idempotency = 1e-10;
constexpr double curvature_oracle = 1e-8;
constexpr double connection = 1e-9;
constexpr double intertwining = 1e-8;
constexpr double trace = 1e-8;
constexpr double leibniz = 1e-8;
constexpr double monomial = 1e-8;
constexpr double pair_decomp = 1e-8;
constexpr double order_closed = 1e-8;
constexpr double order_separation = 1e-6;  // must be exceeded
constexpr double unitary = 1e-8;
constexpr double y_inverse = 1e-9;
constexpr double frame_change = 1e-8;
constexpr double ofb_change = 1e-9;
constexpr double flag_commute = 1e-10;
constexpr double flag_projection = 1e-9;
constexpr double fb2_reassembly = 1e-9;
constexpr double fb2_theta = 1e-9;
constexpr double fb2_action = 1e-10;
constexpr double fb2_projection = 1e-10;
constexpr double intertwine = 1e-9;
constexpr double classify = 1e-8;
constexpr double fd_rel = 1e-5;
constexpr double independence = 1e-10;  // smallest singular value must exceed
}  // namespace tol

Complex parse_complex(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ScenarioError(std::string("expected [re, im] pair for ") + what);
    return Complex(j[0].get<double>(), j[1].get<double>());
}

Point parse_point(const json& j, int m) {
    if (!j.is_array() || static_cast<int>(j.size()) != m)
        throw ScenarioError("sample point must list exactly m complex pairs");
    Point p;
    for (const auto& c : j) p.push_back(parse_complex(c, "sample point"));
    return p;
}

std::vector<Complex> parse_poly(const json& j, const char* what) {
    std::vector<Complex> out;
    if (!j.is_array()) throw ScenarioError(std::string(what) + " must be a coefficient list");
    for (const auto& c : j) out.push_back(parse_complex(c, what));
    return out;
}

ScalarPoly poly_in_first_coord(int m, const std::vector<Complex>& coeffs) {
    ScalarPoly p(m);
    for (size_t k = 0; k < coeffs.size(); ++k) {
        std::vector<int> e(m, 0);
        e[0] = static_cast<int>(k);
        p.add_term(MultiIndex(e), coeffs[k]);
    }
    return p;
}

std::string fmt_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_point(const Point& z) {
    std::ostringstream os;
    os.precision(4);
    os << "(";
    for (size_t k = 0; k < z.size(); ++k) {
        if (k) os << ", ";
        os << z[k].real() << (z[k].imag() < 0 ? "-" : "+") << std::abs(z[k].imag()) << "i";
    }
    os << ")";
    return os.str();
}

std::string kernel_kind(const DiagonalKernelSpec& k) {
    bool hardy = true;
    for (double w : k.weights) hardy = hardy && std::abs(w - 1.0) < 1e-14;
    if (hardy) return "hardy";
    if (k.m == 1) {
        bool bergman = true;
        for (int j = 0; j <= k.truncation; ++j)
            bergman = bergman && std::abs(k.weights[j] - std::sqrt(j + 1.0)) < 1e-12;
        if (bergman) return "bergman";
    }
    return "";
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("scenario parse error: ") + e.what());
    }
    try {
        Scenario sc;
        sc.name = j.value("name", "scenario");
        sc.m = j.value("m", 1);
        if (sc.m < 1) throw ScenarioError("m must be >= 1");
        sc.truncation = j.value("truncation", sc.m == 1 ? 60 : 8);
        if (j.contains("orders")) {
            sc.order_p = j["orders"].value("p", 2);
            sc.order_q = j["orders"].value("q", 2);
        }
        if (j.contains("tolerance") && !j["tolerance"].is_null())
            sc.tolerance = j["tolerance"].get<double>();

        if (j.contains("kernels")) {
            for (const auto& [name, spec] : j["kernels"].items()) {
                std::string preset = spec.value("preset", "explicit");
                int N = spec.value("truncation", sc.truncation);
                if (preset == "explicit") {
                    if (!spec.contains("weights"))
                        throw ScenarioError("explicit kernel '" + name + "' needs weights");
                    std::vector<double> w = spec["weights"].get<std::vector<double>>();
                    sc.kernels.emplace(name,
                                       DiagonalKernelSpec::explicit_weights(sc.m, N, std::move(w)));
                } else {
                    sc.kernels.emplace(name, DiagonalKernelSpec::preset(preset, sc.m, N));
                }
            }
        }
        if (j.contains("curves")) {
            for (const auto& [name, spec] : j["curves"].items()) {
                CurveSpec c;
                c.f = spec.at("f").get<std::string>();
                c.g = spec.value("g", c.f);
                c.rank = spec.value("rank", 1);
                c.style = spec.value("style", c.rank > 1 ? "jet" : "plain");
                c.corrupt = spec.value("corrupt", "");
                if (spec.contains("g_rescale"))
                    c.g_rescale = parse_poly(spec["g_rescale"], "g_rescale");
                if (!sc.kernels.count(c.f))
                    throw ScenarioError("curve '" + name + "' references unknown kernel " + c.f);
                if (!sc.kernels.count(c.g))
                    throw ScenarioError("curve '" + name + "' references unknown kernel " + c.g);
                if (!c.corrupt.empty() && c.corrupt != "transpose")
                    throw ScenarioError("unknown corrupt mode: " + c.corrupt);
                sc.curves.emplace(name, std::move(c));
            }
        }
        if (j.contains("fb2_models")) {
            if (sc.m != 1) throw ScenarioError("fb2_models require m = 1");
            for (const auto& [name, spec] : j["fb2_models"].items()) {
                Fb2Spec f;
                f.kernel0 = spec.at("kernel0").get<std::string>();
                f.kernel1 = spec.at("kernel1").get<std::string>();
                if (spec.contains("coupling"))
                    f.coupling = parse_complex(spec["coupling"], "coupling");
                if (!sc.kernels.count(f.kernel0) || !sc.kernels.count(f.kernel1))
                    throw ScenarioError("fb2 model '" + name + "' references unknown kernel");
                sc.fb2_models.emplace(name, std::move(f));
            }
        }
        if (j.contains("ofb_models")) {
            if (sc.m != 1) throw ScenarioError("ofb_models require m = 1");
            for (const auto& [name, spec] : j["ofb_models"].items()) {
                OfbSpec f;
                f.kernel = spec.at("kernel").get<std::string>();
                f.n = spec.value("n", 2);
                if (spec.contains("couplings"))
                    f.couplings = parse_poly(spec["couplings"], "couplings");
                while (static_cast<int>(f.couplings.size()) < f.n - 1)
                    f.couplings.push_back(Complex(1.0, 0.0));
                if (!sc.kernels.count(f.kernel))
                    throw ScenarioError("ofb model '" + name + "' references unknown kernel");
                sc.ofb_models.emplace(name, std::move(f));
            }
        }
        if (j.contains("classify")) {
            for (const auto& spec : j["classify"]) {
                ClassifyCase c;
                c.kind = spec.at("kind").get<std::string>();
                c.left = spec.at("left").get<std::string>();
                c.right = spec.at("right").get<std::string>();
                c.expect = spec.at("expect").get<std::string>();
                if (spec.contains("left_rescale"))
                    c.left_rescale = parse_poly(spec["left_rescale"], "left_rescale");
                if (spec.contains("right_rescale"))
                    c.right_rescale = parse_poly(spec["right_rescale"], "right_rescale");
                bool fb2 = c.kind == "fb2";
                for (const std::string& n : {c.left, c.right}) {
                    bool known = fb2 ? sc.fb2_models.count(n) > 0 : sc.kernels.count(n) > 0;
                    if (!known)
                        throw ScenarioError("classify case references unknown name " + n);
                }
                if (c.kind != "b1" && c.kind != "shift" && c.kind != "fb2" &&
                    c.kind != "finite-rank")
                    throw ScenarioError("unknown classify kind: " + c.kind);
                sc.classify_cases.push_back(std::move(c));
            }
        }
        if (j.contains("intertwine")) {
            for (const auto& spec : j["intertwine"]) {
                IntertwineCase c;
                c.left = spec.at("left").get<std::string>();
                c.right = spec.at("right").get<std::string>();
                c.x = spec.value("x", "identity");
                if (!sc.curves.count(c.left) || !sc.curves.count(c.right))
                    throw ScenarioError("intertwine case references unknown curve");
                if (c.x != "identity" && c.x != "conjugating-unitary")
                    throw ScenarioError("unknown intertwine operator kind: " + c.x);
                sc.intertwine_cases.push_back(std::move(c));
            }
        }
        if (j.contains("sample_points"))
            for (const auto& pt : j["sample_points"]) sc.sample_points.push_back(parse_point(pt, sc.m));
        if (sc.sample_points.empty()) sc.sample_points.push_back(Point(sc.m, Complex(0.0, 0.0)));
        if (j.contains("tasks")) sc.tasks = j["tasks"].get<std::vector<std::string>>();
        return sc;
    } catch (const ScenarioError&) {
        throw;
    } catch (const std::exception& e) {
        throw ScenarioError(std::string("scenario schema error: ") + e.what());
    }
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    Scenario sc = parse_scenario(ss.str());
    if (sc.name == "scenario") {
        auto slash = path.find_last_of('/');
        std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
        auto dot = stem.find_last_of('.');
        sc.name = dot == std::string::npos ? stem : stem.substr(0, dot);
    }
    return sc;
}

ExtendedCurve build_curve(const Scenario& sc, const std::string& name) {
    auto it = sc.curves.find(name);
    if (it == sc.curves.end()) throw ScenarioError("unknown curve: " + name);
    const CurveSpec& spec = it->second;
    PolynomialSection sf = section_from_kernel(sc.kernels.at(spec.f));
    PolynomialSection sg = section_from_kernel(sc.kernels.at(spec.g));
    Frame F, G;
    if (spec.style == "plain") {
        if (spec.rank != 1) throw ScenarioError("plain curves are rank 1: " + name);
        F.sections.push_back(sf);
        G.sections.push_back(sg);
    } else if (spec.style == "jet") {
        if (sc.m == 1) {
            F = jet_frame(sf, spec.rank - 1);
            G = jet_frame(sg, spec.rank - 1);
        } else {
            if (spec.rank != 2) throw ScenarioError("m >= 2 jet curves are rank 2: " + name);
            F = jet_frame_partial(sf, 0);
            G = jet_frame_partial(sg, 0);
        }
    } else {
        throw ScenarioError("unknown curve style: " + spec.style);
    }
    if (!spec.g_rescale.empty()) G = G.scaled_by(poly_in_first_coord(sc.m, spec.g_rescale));
    return ExtendedCurve{std::move(F), std::move(G)};
}

Fb2Model build_fb2(const Scenario& sc, const Fb2Spec& spec) {
    Fb2Model mdl;
    mdl.kernel0 = sc.kernels.at(spec.kernel0);
    mdl.kernel1 = sc.kernels.at(spec.kernel1);
    mdl.coupling = spec.coupling;
    return mdl;
}

std::vector<PolynomialSection> build_ofb_sections(const Scenario& sc, const OfbSpec& spec) {
    PolynomialSection base = section_from_kernel(sc.kernels.at(spec.kernel));
    std::vector<PolynomialSection> t(spec.n, base);
    // t_{n-1} is the kernel section; t_{i-1} = -s_i t_i downward
    for (int i = spec.n - 1; i >= 1; --i)
        t[i - 1] = t[i].scaled(-spec.couplings.at(i - 1));
    return t;
}

// ---------- report ----------

int Report::failed() const {
    int f = 0;
    for (const auto& e : entries) f += !e.pass;
    return f;
}

std::string Report::to_json() const {
    ordered_json j;
    j["schema_version"] = schema_version;
    j["scenario"] = scenario_name;
    ordered_json sum;
    sum["total"] = entries.size();
    sum["failed"] = failed();
    sum["passed"] = static_cast<int>(entries.size()) - failed();
    j["summary"] = sum;
    j["entries"] = ordered_json::array();
    for (const auto& e : entries) {
        ordered_json je;
        je["task"] = e.task;
        je["subject"] = e.subject;
        je["check"] = e.check;
        je["value"] = e.value;
        je["tolerance"] = e.tolerance;
        je["comparison"] = e.exceed ? ">" : "<=";
        je["pass"] = e.pass;
        if (!e.note.empty()) je["note"] = e.note;
        j["entries"].push_back(je);
    }
    return j.dump(2) + "\n";
}

namespace {
std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    return out + "\"";
}
}  // namespace

std::string Report::to_csv() const {
    std::string out = "task,subject,check,value,tolerance,comparison,pass,note\n";
    for (const auto& e : entries) {
        out += csv_escape(e.task) + "," + csv_escape(e.subject) + "," + csv_escape(e.check) +
               "," + fmt_value(e.value) + "," + fmt_value(e.tolerance) + "," +
               (e.exceed ? ">" : "<=") + "," + (e.pass ? "true" : "false") + "," +
               csv_escape(e.note) + "\n";
    }
    return out;
}

std::string Report::to_table() const {
    std::ostringstream os;
    os << "scenario: " << scenario_name << "\n";
    for (const auto& e : entries) {
        char line[256];
        std::snprintf(line, sizeof line, "  %-5s %-18s %-26s %-28s %10.3e %s %-9.1e\n",
                      e.pass ? "PASS" : "FAIL", e.task.c_str(), e.subject.c_str(),
                      e.check.c_str(), e.value, e.exceed ? ">" : "<=", e.tolerance);
        os << line;
        if (!e.pass && !e.note.empty()) os << "        " << e.note << "\n";
    }
    os << "summary: " << (entries.size() - failed()) << "/" << entries.size() << " passed";
    if (failed()) os << ", " << failed() << " FAILED";
    os << "\n";
    return os.str();
}

// ---------- task machinery ----------

namespace {

struct Ctx {
    const Scenario& sc;
    const RunOptions& opts;
    Report& rep;
    int order_p, order_q;

    double tol(double pinned) const {
        if (opts.tolerance) return *opts.tolerance;
        if (sc.tolerance) return *sc.tolerance;
        return pinned;
    }
    void check_le(const std::string& task, const std::string& subject, const std::string& check,
                  double value, double pinned, const std::string& note = "") {
        double t = tol(pinned);
        rep.entries.push_back({task, subject, check, value, t, false, value <= t, note});
    }
    void check_gt(const std::string& task, const std::string& subject, const std::string& check,
                  double value, double bound, const std::string& note = "") {
        rep.entries.push_back({task, subject, check, value, bound, true, value > bound, note});
    }
    void check_expect(const std::string& task, const std::string& subject,
                      const std::string& check, bool ok, const std::string& note) {
        rep.entries.push_back({task, subject, check, ok ? 1.0 : 0.0, 1.0, false, ok, note});
    }
    // heavyweight m >= 2 loops run on a reduced point set
    std::vector<Point> heavy_points() const {
        if (sc.m == 1) return sc.sample_points;
        return {sc.sample_points.front()};
    }
};

std::vector<Point> classify_grid() {
    std::vector<Point> pts;
    for (int i = 1; i <= 5; ++i)
        for (int j = 0; j < 5; ++j) {
            double r = 0.12 * i, th = 2.0 * std::numbers::pi * j / 5.0;
            pts.push_back({Complex(r * std::cos(th), r * std::sin(th))});
        }
    return pts;
}

WirtingerJet curve_jet_maybe_corrupt(const Scenario& sc, const std::string& name,
                                     const ExtendedCurve& c, const Point& z, int p, int q) {
    WirtingerJet jet = curve_eval_jet(c, z, p, q);
    if (sc.curves.at(name).corrupt == "transpose") return jet.transposed();
    return jet;
}

void task_load(Ctx& cx) {
    for (const auto& [name, spec] : cx.sc.curves) {
        (void)spec;
        ExtendedCurve c = build_curve(cx.sc, name);
        double sminF = frame_min_singular(c.F, cx.sc.sample_points);
        double sminG = frame_min_singular(c.G, cx.sc.sample_points);
        cx.check_gt("load", name, "frame-independence", std::min(sminF, sminG),
                    tol::independence);
        int bad = 0;
        std::string where;
        for (const auto& z : cx.sc.sample_points) {
            try {
                make_curve_jets(c, z, 1, 1);
            } catch (const std::exception&) {
                ++bad;
                where += (where.empty() ? "" : "; ") + fmt_point(z);
            }
        }
        cx.rep.entries.push_back({"load", name, "gram-invertible", static_cast<double>(bad), 0.0,
                                  false, bad == 0,
                                  bad ? "singular Gram at " + where : ""});
    }
    for (const auto& [name, spec] : cx.sc.fb2_models) {
        Fb2Model mdl = build_fb2(cx.sc, spec);
        int bad = 0;
        std::string where;
        for (const auto& z : cx.sc.sample_points) {
            try {
                fb2_projection(mdl, z[0]);
            } catch (const std::exception&) {
                ++bad;
                where += (where.empty() ? "" : "; ") + fmt_point(z);
            }
        }
        cx.rep.entries.push_back({"load", name, "fb2-denominator", static_cast<double>(bad), 0.0,
                                  false, bad == 0,
                                  bad ? "vanishing denominator at " + where : ""});
    }
}

void task_holomorphy(Ctx& cx) {
    for (const auto& [name, spec] : cx.sc.curves) {
        (void)spec;
        ExtendedCurve c = build_curve(cx.sc, name);
        HolomorphyReport worst;
        for (const auto& z : cx.sc.sample_points) {
            WirtingerJet jet = curve_jet_maybe_corrupt(cx.sc, name, c, z, 1, 1);
            HolomorphyReport r = holomorphy_residuals(jet);
            worst.d_right = std::max(worst.d_right, r.d_right);
            worst.d_left = std::max(worst.d_left, r.d_left);
            worst.dbar_left = std::max(worst.dbar_left, r.dbar_left);
            worst.dbar_right = std::max(worst.dbar_right, r.dbar_right);
        }
        cx.check_le("holomorphy", name, "definition-identities", worst.max_residual(),
                    tol::holomorphy);
    }
}

void task_idempotency(Ctx& cx) {
    for (const auto& [name, spec] : cx.sc.curves) {
        (void)spec;
        ExtendedCurve c = build_curve(cx.sc, name);
        double worst = 0.0;
        for (const auto& z : cx.sc.sample_points) {
            WirtingerJet jet = curve_jet_maybe_corrupt(cx.sc, name, c, z, 0, 0);
            const CMatrix& I0 = jet.value();
            worst = std::max(worst, rel_residual(I0 * I0, I0));
        }
        cx.check_le("idempotency", name, "I^2 = I", worst, tol::idempotency);
    }
}

void task_curvature_oracle(Ctx& cx) {
    if (cx.sc.m != 1) return;
    for (const auto& [name, spec] : cx.sc.curves) {
        if (spec.rank != 1 || spec.f != spec.g || !spec.corrupt.empty() ||
            !spec.g_rescale.empty())
            continue;
        std::string kind = kernel_kind(cx.sc.kernels.at(spec.f));
        if (kind.empty()) continue;
        ExtendedCurve c = build_curve(cx.sc, name);
        double worst = 0.0;
        for (const auto& z : cx.sc.sample_points) {
            WirtingerJet H = gram(c.F, c.G, z, 1, 1);
            Complex K = classical_curvature(H).value()(0, 0);
            double r2 = std::norm(z[0]);
            double expect = (kind == "hardy") ? -1.0 / ((1 - r2) * (1 - r2))
                                              : -2.0 / ((1 - r2) * (1 - r2));
            worst = std::max(worst, std::abs(K - expect));
        }
        cx.check_le("curvature-oracle", name, kind + " closed form", worst,
                    tol::curvature_oracle);
    }
}

void task_connection(Ctx& cx) {
    for (const auto& [name, spec] : cx.sc.curves) {
        if (!spec.corrupt.empty()) continue;
        ExtendedCurve c = build_curve(cx.sc, name);
        double range_res = 0.0, intertwine_res = 0.0;
        for (const auto& z : cx.sc.sample_points) {
            CurveJets jets = make_curve_jets(c, z, 2, 1);
            WirtingerJet Th = extended_connection(jets);
            const CMatrix& Iv = jets.I.value();
            const CMatrix& Tv = Th.value();
            range_res = std::max(range_res, rel_residual(Tv * Iv, Tv));
            WirtingerJet H = gram(c.F, c.G, z, 2, 1);
            CMatrix Tcl = classical_connection(H).value();
            intertwine_res =
                std::max(intertwine_res, rel_residual(Tv * jets.F.value(), jets.F.value() * Tcl));
        }
        cx.check_le("connection", name, "Theta I = Theta", range_res, tol::connection);
        cx.check_le("connection", name, "Theta F = F theta", intertwine_res, tol::connection);
    }
}

void task_intertwining_identity(Ctx& cx) {
    int total = cx.order_p + cx.order_q;
    for (const auto& [name, spec] : cx.sc.curves) {
        if (!spec.corrupt.empty()) continue;
        ExtendedCurve c = build_curve(cx.sc, name);
        double worst_op = 0.0, worst_tr = 0.0;
        std::string worst_plan, worst_tr_plan;
        for (const auto& z : cx.heavy_points()) {
            for (int a = 0; a <= total; ++a) {
                for (int b = 0; a + b <= total; ++b) {
                    CurveJets jets = make_curve_jets(c, z, a + 1, b + 1);
                    WirtingerJet H = gram(c.F, c.G, z, a + 2, b + 2);
                    WirtingerJet Kc0 = classical_curvature(H);
                    StepApply cstep = classical_step(H);
                    WirtingerJet Ke0 = extended_curvature(jets);
                    StepApply estep = extended_step(jets);
                    const CMatrix& Fv = jets.F.value();
                    auto step_less = [](const PlanStep& x, const PlanStep& y) {
                        return std::pair(static_cast<int>(x.kind), x.coord) <
                               std::pair(static_cast<int>(y.kind), y.coord);
                    };
                    for (const auto& I : enumerate_total_degree(cx.sc.m, a)) {
                        if (I.total_degree() != a) continue;
                        for (const auto& J : enumerate_total_degree(cx.sc.m, b)) {
                            if (J.total_degree() != b) continue;
                            std::vector<DerivPlan> plans;
                            if (cx.sc.m == 1) {
                                // every ordering of the step multiset
                                DerivPlan perm = DerivPlan::canonical(I, J);
                                std::sort(perm.steps.begin(), perm.steps.end(), step_less);
                                do {
                                    plans.push_back(perm);
                                } while (std::next_permutation(perm.steps.begin(),
                                                               perm.steps.end(), step_less));
                            } else {
                                plans.push_back(DerivPlan::canonical(I, J));
                                DerivPlan alt = DerivPlan::hol_first(I, J);
                                if (alt.to_string() != plans[0].to_string())
                                    plans.push_back(alt);
                            }
                            for (const auto& plan : plans) {
                                CMatrix Ke = apply_plan_sequential(Ke0, plan, estep).value();
                                CMatrix Kc = apply_plan_sequential(Kc0, plan, cstep).value();
                                double r = rel_residual(Ke * Fv, -(Fv * Kc));
                                if (r > worst_op) {
                                    worst_op = r;
                                    worst_plan = plan.to_string();
                                }
                                double tr = std::abs(Ke.trace() + Kc.trace()) /
                                            std::max(1.0, std::abs(Kc.trace()));
                                if (tr > worst_tr) {
                                    worst_tr = tr;
                                    worst_tr_plan = plan.to_string();
                                }
                            }
                        }
                    }
                }
            }
        }
        cx.check_le("intertwining", name, "operator-intertwine", worst_op, tol::intertwining,
                    "worst plan " + worst_plan);
        cx.check_le("intertwining", name, "trace-identity", worst_tr, tol::trace,
                    "worst plan " + worst_tr_plan);
    }
}

void task_order_witness(Ctx& cx) {
    double best_sep = 0.0;
    std::string best_note;
    int m = cx.sc.m;
    for (const auto& [name, spec] : cx.sc.curves) {
        if (!spec.corrupt.empty()) continue;
        ExtendedCurve c = build_curve(cx.sc, name);
        double worst_closed = 0.0, sep = 0.0;
        for (const auto& z : cx.heavy_points()) {
            CurveJets jets = make_curve_jets(c, z, 2, 2);
            const WirtingerJet& Ij = jets.I;
            WirtingerJet K = extended_curvature(jets);
            StepApply step = extended_step(jets);
            MultiIndex zero = MultiIndex::zero(m);
            auto ext = [&](const MultiIndex& I, const MultiIndex& J) {
                return Ij.extract(I, J);
            };
            CMatrix dbar = CMatrix::Zero(c.dim(), c.dim());
            CMatrix d = dbar;
            for (int k = 0; k < m; ++k) {
                dbar += ext(zero, MultiIndex::unit(m, k));
                d += ext(MultiIndex::unit(m, k), zero);
            }
            for (int l = 0; l < m; ++l) {
                for (int k = 0; k < m; ++k) {
                    MultiIndex el = MultiIndex::unit(m, l), ek = MultiIndex::unit(m, k);
                    DerivPlan anti_first = DerivPlan::canonical(el, ek);
                    DerivPlan hol_first = DerivPlan::hol_first(el, ek);
                    CMatrix Ka = apply_plan_sequential(K, anti_first, step).value();
                    CMatrix Kh = apply_plan_sequential(K, hol_first, step).value();
                    // shared terms of the two displayed closed forms
                    CMatrix t1 = CMatrix::Zero(c.dim(), c.dim());
                    for (int i = 0; i < m; ++i)
                        for (int jj = 0; jj < m; ++jj)
                            t1 += ext(zero, ek.plus(MultiIndex::unit(m, jj))) *
                                  ext(el.plus(MultiIndex::unit(m, i)), zero);
                    CMatrix t2 = dbar * ext(el, zero) * ext(zero, ek) * d;
                    CMatrix t3a = ext(zero, ek) * ext(el, zero) * dbar * d;
                    CMatrix t3b = dbar * d * ext(zero, ek) * ext(el, zero);
                    worst_closed = std::max(worst_closed, rel_residual(Ka, t1 - t2 - t3a));
                    worst_closed = std::max(worst_closed, rel_residual(Kh, t1 - t2 - t3b));
                    sep = std::max(sep, rel_residual(Ka, Kh));
                }
            }
        }
        cx.check_le("order-witness", name, "closed-forms", worst_closed, tol::order_closed);
        if (sep > best_sep) {
            best_sep = sep;
            best_note = "witnessed by curve " + name;
        }
    }
    if (m == 1) {
        // for one variable the two orderings coincide identically (the
        // discrepancy term is a self-commutator); assert the agreement
        cx.check_le("order-witness", "(corpus)", "mixed-order agreement (m=1)", best_sep,
                    tol::order_closed);
    } else {
        cx.check_gt("order-witness", "(corpus)", "mixed-order separation", best_sep,
                    tol::order_separation, best_note);
    }
}

void task_leibniz(Ctx& cx) {
    int m = cx.sc.m;
    for (const auto& [name, spec] : cx.sc.curves) {
        if (!spec.corrupt.empty()) continue;
        ExtendedCurve c = build_curve(cx.sc, name);
        double w1 = 0, w2 = 0, w3 = 0, w4 = 0;
        for (const auto& z : cx.heavy_points()) {
            CurveJets jets = make_curve_jets(c, z, 3, 3);
            for (const auto& I : enumerate_total_degree(m, 3)) {
                if (I.total_degree() == 0) continue;
                w1 = std::max(w1, leibniz_item1(jets, I));
                w3 = std::max(w3, leibniz_item3(jets, I));
                for (int k = 0; k < m; ++k) {
                    w2 = std::max(w2, leibniz_item2(jets.I, I, k));
                    w4 = std::max(w4, leibniz_item4(jets.I, k, I));
                }
            }
        }
        cx.check_le("leibniz", name, "item1 D^I factorization", w1, tol::leibniz);
        cx.check_le("leibniz", name, "item2 mixed Dbar D^I", w2, tol::leibniz);
        cx.check_le("leibniz", name, "item3 Dbar^J factorization", w3, tol::leibniz);
        cx.check_le("leibniz", name, "item4 mixed Dbar^J D", w4, tol::leibniz);
    }
}

void task_monomial(Ctx& cx) {
    int m = cx.sc.m;
    for (const auto& [name, spec] : cx.sc.curves) {
        if (!spec.corrupt.empty()) continue;
        ExtendedCurve c = build_curve(cx.sc, name);
        double worst = 0.0;
        for (const auto& z : cx.heavy_points()) {
            WirtingerJet Ij = curve_eval_jet(c, z, 3, 3);
            for (const auto& I : enumerate_total_degree(m, 3)) {
                for (const auto& J : enumerate_total_degree(m, 3)) {
                    int t = I.total_degree() + J.total_degree();
                    if (t == 0 || t > 3) continue;
                    worst = std::max(worst, monomial_expansion_check(Ij, I, J));
                }
            }
        }
        cx.check_le("monomial", name, "monomial expansion", worst, tol::monomial);
    }
}

void task_pair_decomposition(Ctx& cx) {
    int m = cx.sc.m;
    for (const auto& [name, spec] : cx.sc.curves) {
        if (!spec.corrupt.empty()) continue;
        ExtendedCurve c = build_curve(cx.sc, name);
        double worst = 0.0, worst_cls = 0.0, seq_gap = 0.0;
        for (const auto& z : cx.heavy_points()) {
            for (const auto& I : enumerate_total_degree(m, 2)) {
                if (I.total_degree() == 0) continue;
                for (const auto& J : enumerate_total_degree(m, 2)) {
                    if (J.total_degree() == 0) continue;
                    if (I.total_degree() + J.total_degree() > 3) continue;
                    std::vector<DerivPlan> plans{DerivPlan::canonical(I, J)};
                    if (m == 1) plans.push_back(DerivPlan::hol_first(I, J));
                    int a = I.total_degree(), b = J.total_degree();
                    CurveJets jets = make_curve_jets(c, z, a + 1, b + 1);
                    WirtingerJet H = gram(c.F, c.G, z, a + 2, b + 2);
                    for (const auto& plan : plans) {
                        DecompositionCheck dc = pair_decomposition_check(jets.I, plan);
                        worst = std::max(worst, dc.recursion_vs_pair_sum);
                        seq_gap = std::max(seq_gap, dc.sequential_vs_pair_sum);
                        DecompositionCheck lc = classical_pair_decomposition_check(H, plan);
                        worst_cls = std::max(worst_cls, lc.recursion_vs_pair_sum);
                    }
                }
            }
        }
        char note[160];
        std::snprintf(note, sizeof note,
                      "sequential-vs-pair-sum gap %.3e (order-sensitivity, reported only)",
                      seq_gap);
        cx.check_le("pair-decomposition", name, "recursion = pair-sum (extended)", worst, tol::pair_decomp, note);
        cx.check_le("pair-decomposition", name, "recursion = pair-sum (classical)", worst_cls, tol::pair_decomp);
    }
}

void task_frame_change(Ctx& cx) {
    if (cx.sc.m != 1) return;
    std::vector<std::pair<std::string, ScalarPoly>> phis;
    {
        ScalarPoly c2 = ScalarPoly::constant(1, Complex(2.0, 0.0));
        ScalarPoly onepl = ScalarPoly::constant(1, 1.0);
        onepl.add_term(MultiIndex({1}), 1.0);
        ScalarPoly onepl2 = ScalarPoly::constant(1, 1.0);
        onepl2.add_term(MultiIndex({2}), 1.0);
        phis = {{"2", c2}, {"1+z", onepl}, {"1+z^2", onepl2}};
    }
    for (const auto& [name, spec] : cx.sc.curves) {
        if (!spec.corrupt.empty()) continue;
        ExtendedCurve c = build_curve(cx.sc, name);
        double worst_conj = 0.0, worst_trace = 0.0;
        for (const auto& [pname, phi00] : phis) {
            (void)pname;
            PolynomialMatrix phi = frame_change_matrix(phi00, c.n());
            Frame Gf = apply_frame_change(c.F, phi);
            for (const auto& z : cx.sc.sample_points) {
                WirtingerJet HF = gram(c.F, c.F, z, 4, 4);
                WirtingerJet HG = gram(Gf, Gf, z, 4, 4);
                for (const auto& I : enumerate_total_degree(1, 2)) {
                    for (const auto& J : enumerate_total_degree(1, 2)) {
                        if (I.total_degree() + J.total_degree() > 3) continue;
                        ConjugationCheck cc = conjugation_trace_check(
                            HF, HG, phi, DerivPlan::canonical(I, J));
                        worst_conj = std::max(worst_conj, cc.curvature_conjugation);
                        worst_trace = std::max(worst_trace, cc.trace_invariance);
                    }
                }
            }
        }
        cx.check_le("frame-change", name, "curvature conjugation", worst_conj,
                    tol::frame_change);
        cx.check_le("frame-change", name, "trace invariance", worst_trace, tol::frame_change);
    }
}

void task_unitary_invariance(Ctx& cx) {
    int m = cx.sc.m;
    unsigned seed = 90210;
    for (const auto& [name, spec] : cx.sc.curves) {
        if (!spec.corrupt.empty()) continue;
        ExtendedCurve c = build_curve(cx.sc, name);
        CMatrix U = random_unitary(c.dim(), seed++);
        ExtendedCurve cu = conjugated_curve(c, U);
        std::vector<DerivPlan> plans;
        plans.push_back(DerivPlan::canonical(MultiIndex::unit(m, 0), MultiIndex::unit(m, 0)));
        plans.push_back(DerivPlan::canonical(MultiIndex::unit(m, 0).plus_unit(0),
                                             MultiIndex::unit(m, 0)));
        if (m >= 2)
            plans.push_back(
                DerivPlan::canonical(MultiIndex::unit(m, 0), MultiIndex::unit(m, 1)));
        double worst = 0.0, worst_y = 0.0, worst_yz = 0.0;
        for (const auto& z : cx.heavy_points()) {
            CurveJets j1 = make_curve_jets(c, z, 3, 2);
            CurveJets j2 = make_curve_jets(cu, z, 3, 2);
            WirtingerJet K1 = extended_curvature(j1);
            WirtingerJet K2 = extended_curvature(j2);
            StepApply s1 = extended_step(j1);
            StepApply s2 = extended_step(j2);
            for (const auto& plan : plans) {
                CMatrix a = apply_plan_sequential(K1, plan, s1).value();
                CMatrix b = apply_plan_sequential(K2, plan, s2).value();
                worst = std::max(worst, rel_residual(U * a * U.adjoint(), b));
                SimilarityWitness w = classical_similarity_witness(c, cu, U, plan, z);
                worst_y = std::max(worst_y, w.intertwine_residual);
                worst_yz = std::max(worst_yz, w.inverse_residual);
            }
        }
        cx.check_le("unitary-invariance", name, "K_plan conjugation", worst, tol::unitary);
        cx.check_le("unitary-invariance", name, "Y intertwines K_plan", worst_y, tol::unitary);
        cx.check_le("unitary-invariance", name, "Y Z = identity", worst_yz, tol::y_inverse);
    }
}

void task_intertwine(Ctx& cx) {
    unsigned seed = 4242;
    int idx = 0;
    for (const auto& cse : cx.sc.intertwine_cases) {
        std::string subject =
            cse.left + " vs " + cse.right + " (" + cse.x + ")";
        ExtendedCurve c1 = build_curve(cx.sc, cse.left);
        double resid = 0.0;
        if (cse.x == "identity") {
            ExtendedCurve c2 = build_curve(cx.sc, cse.right);
            CMatrix X = CMatrix::Identity(c1.dim(), c1.dim());
            resid = product_intertwine_check(c1, c2, X, std::min(cx.order_p, 2),
                                             std::min(cx.order_q, 2), cx.heavy_points());
        } else {
            CMatrix U = random_unitary(c1.dim(), seed + idx);
            ExtendedCurve c2 = conjugated_curve(c1, U);
            resid = product_intertwine_check(c1, c2, U, std::min(cx.order_p, 2),
                                             std::min(cx.order_q, 2), cx.heavy_points());
        }
        cx.check_le("intertwine", subject, "product intertwining identity", resid, tol::intertwine);
        ++idx;
    }
}

void task_classify(Ctx& cx) {
    std::vector<Point> grid = classify_grid();
    for (const auto& cse : cx.sc.classify_cases) {
        std::string subject = cse.kind + ": " + cse.left + " vs " + cse.right;
        EquivalenceVerdict v;
        if (cse.kind == "b1") {
            Frame f1{{section_from_kernel(cx.sc.kernels.at(cse.left))}};
            Frame f2{{section_from_kernel(cx.sc.kernels.at(cse.right))}};
            if (!cse.left_rescale.empty())
                f1 = f1.scaled_by(poly_in_first_coord(1, cse.left_rescale));
            if (!cse.right_rescale.empty())
                f2 = f2.scaled_by(poly_in_first_coord(1, cse.right_rescale));
            std::vector<WirtingerJet> g1, g2;
            for (const auto& z : grid) {
                g1.push_back(gram(f1, f1, z, 1, 1));
                g2.push_back(gram(f2, f2, z, 1, 1));
            }
            v = b1_unitary_equivalence(g1, g2, cx.tol(tol::classify));
        } else if (cse.kind == "shift") {
            v = weighted_shift_similarity(cx.sc.kernels.at(cse.left),
                                          cx.sc.kernels.at(cse.right));
        } else if (cse.kind == "fb2") {
            Fb2Model a = build_fb2(cx.sc, cx.sc.fb2_models.at(cse.left));
            Fb2Model b = build_fb2(cx.sc, cx.sc.fb2_models.at(cse.right));
            v = fb2_unitary_equivalence(a, b, grid, cx.tol(tol::classify));
        } else {  // finite-rank
            Frame f1{{section_from_kernel(cx.sc.kernels.at(cse.left))}};
            Frame f2{{section_from_kernel(cx.sc.kernels.at(cse.right))}};
            if (!cse.left_rescale.empty())
                f1 = f1.scaled_by(poly_in_first_coord(1, cse.left_rescale));
            if (!cse.right_rescale.empty())
                f2 = f2.scaled_by(poly_in_first_coord(1, cse.right_rescale));
            v = finite_rank_twist_equivalence(f1, f2, grid, cx.tol(tol::classify));
        }
        std::string note = "verdict " + to_string(v.verdict) + " (expected " + cse.expect +
                           "); " + v.witness;
        cx.check_expect("classify", subject, "verdict", to_string(v.verdict) == cse.expect,
                        note);
    }
}

void task_fb2(Ctx& cx) {
    for (const auto& [name, spec] : cx.sc.fb2_models) {
        Fb2Model mdl = build_fb2(cx.sc, spec);
        double reassembly = 0, idem = 0, selfadj = 0, rminus = 0, rplus = 0, action = 0;
        Complex theta0{};
        bool first = true;
        for (const auto& z : cx.sc.sample_points) {
            Fb2Decomposition dec = fb2_projection(mdl, z[0]);
            if (first) {
                theta0 = dec.theta;
                first = false;
            }
            reassembly = std::max(reassembly, dec.reassembly_residual());
            idem = std::max(idem, dec.idempotency_residual());
            selfadj = std::max(selfadj, dec.self_adjointness_residual());
            ThetaRelation tr = fb2_theta_relation(mdl, z[0]);
            rminus = std::max(rminus, tr.r_minus);
            rplus = std::max(rplus, tr.r_plus);
            action = std::max(action, fb2_jet_action_check(mdl, z[0]).max_residual());
        }
        char tnote[160];
        std::snprintf(tnote, sizeof tnote, "theta at first sample = %.12g%+.12gi",
                      theta0.real(), theta0.imag());
        cx.check_le("fb2", name, "reassembly", reassembly, tol::fb2_reassembly, tnote);
        cx.check_le("fb2", name, "P idempotent", idem, tol::fb2_projection);
        cx.check_le("fb2", name, "P self-adjoint", selfadj, tol::fb2_projection);
        char rnote[160];
        std::snprintf(rnote, sizeof rnote,
                      "statement-sign residual R+ = %.3e (reported, not asserted)", rplus);
        cx.check_le("fb2", name, "(1-theta) relation", rminus, tol::fb2_theta, rnote);
        cx.check_le("fb2", name, "jet actions", action, tol::fb2_action);
    }
}

void task_flag_diagram(Ctx& cx) {
    for (const auto& [name, spec] : cx.sc.ofb_models) {
        auto t = build_ofb_sections(cx.sc, spec);
        Complex z0 = cx.sc.sample_points.front()[0];
        FlagDiagramReport rep = flag_diagram_check(t, spec.n, z0);
        double commute = 0.0;
        for (double v : rep.commutativity) commute = std::max(commute, v);
        for (double v : rep.conjugated_commutativity) commute = std::max(commute, v);
        double proj = 0.0;
        for (double v : rep.projection_conjugation) proj = std::max(proj, v);
        cx.check_le("flag-diagram", name, "i J_k = J_{k+1} i", commute, tol::flag_commute);
        cx.check_le("flag-diagram", name, "leading-block conjugation", proj,
                    tol::flag_projection);
    }
}

void task_ofb_framechange(Ctx& cx) {
    std::vector<std::pair<std::string, ScalarPoly>> phis;
    {
        ScalarPoly c2 = ScalarPoly::constant(1, Complex(2.0, 0.0));
        ScalarPoly onepl = ScalarPoly::constant(1, 1.0);
        onepl.add_term(MultiIndex({1}), 1.0);
        ScalarPoly onepl2 = ScalarPoly::constant(1, 1.0);
        onepl2.add_term(MultiIndex({2}), 1.0);
        phis = {{"2", c2}, {"1+z", onepl}, {"1+z^2", onepl2}};
    }
    for (const auto& [name, spec] : cx.sc.ofb_models) {
        auto t = build_ofb_sections(cx.sc, spec);
        Frame gamma = ofb_frame(t, spec.n);
        double worst = 0.0;
        std::string worst_phi;
        for (const auto& [pname, phi00] : phis) {
            std::vector<PolynomialSection> tt;
            for (const auto& s : t) tt.push_back(s.scaled_by(phi00));
            Frame gamma_t = ofb_frame(tt, spec.n);
            PolynomialMatrix phi = frame_change_matrix(phi00, spec.n);
            for (const auto& z : cx.sc.sample_points) {
                CMatrix lhs = gamma_t.eval(z);
                CMatrix rhs = gamma.eval(z) * phi.eval(z);
                double r = rel_residual(lhs, rhs);
                if (r > worst) {
                    worst = r;
                    worst_phi = pname;
                }
            }
        }
        cx.check_le("ofb-framechange", name, "gamma~ = gamma phi", worst, tol::ofb_change,
                    "worst phi00 = " + worst_phi);
    }
}

void task_fd_check(Ctx& cx) {
    int m = cx.sc.m;
    std::vector<Point> pts = cx.heavy_points();
    if (m == 1 && pts.size() > 2) pts.resize(2);
    for (const auto& [name, spec] : cx.sc.curves) {
        if (!spec.corrupt.empty()) continue;
        ExtendedCurve c = build_curve(cx.sc, name);
        Sampler sH = gram_sampler(c.F, c.G);
        Sampler sI = curve_sampler(c);
        double worstH = 0.0, worstI = 0.0;
        for (const auto& z : pts) {
            CurveJets jets = make_curve_jets(c, z, 3, 3);
            for (const auto& I : enumerate_total_degree(m, 3)) {
                for (const auto& J : enumerate_total_degree(m, 3)) {
                    int t = I.total_degree() + J.total_degree();
                    if (t == 0 || t > 3) continue;
                    worstH = std::max(
                        worstH, rel_residual(fd_oracle(sH, z, I, J), jets.H.extract(I, J)));
                    worstI = std::max(
                        worstI, rel_residual(fd_oracle(sI, z, I, J), jets.I.extract(I, J)));
                }
            }
        }
        cx.check_le("fd-check", name, "gram derivatives", worstH, tol::fd_rel);
        cx.check_le("fd-check", name, "curve derivatives", worstI, tol::fd_rel);
    }
    for (const auto& [name, spec] : cx.sc.fb2_models) {
        Fb2Model mdl = build_fb2(cx.sc, spec);
        Frame f0{{mdl.t0()}};
        Sampler s0 = gram_sampler(f0, f0);
        double worst = 0.0;
        for (const auto& z : pts) {
            WirtingerJet h0 = gram(f0, f0, z, 3, 3);
            for (const auto& I : enumerate_total_degree(1, 3)) {
                for (const auto& J : enumerate_total_degree(1, 3)) {
                    int t = I.total_degree() + J.total_degree();
                    if (t == 0 || t > 3) continue;
                    worst = std::max(worst,
                                     rel_residual(fd_oracle(s0, z, I, J), h0.extract(I, J)));
                }
            }
        }
        cx.check_le("fd-check", name, "fb2 h0 derivatives", worst, tol::fd_rel);
    }
}

}  // namespace

Report run_scenario(const Scenario& sc, const RunOptions& opts) {
    Report rep;
    rep.scenario_name = sc.name;
    if (sc.tasks.empty()) return rep;

    Ctx cx{sc, opts, rep, sc.order_p, sc.order_q};
    if (opts.max_order) {
        cx.order_p = opts.max_order->first;
        cx.order_q = opts.max_order->second;
    }

    std::vector<std::string> tasks = sc.tasks;
    if (opts.fd_check &&
        std::find(tasks.begin(), tasks.end(), "fd-check") == tasks.end())
        tasks.push_back("fd-check");
    if (opts.task_filter) {
        std::vector<std::string> kept;
        for (const auto& t : tasks)
            if (t == *opts.task_filter) kept.push_back(t);
        if (kept.empty())
            throw ScenarioError("task filter matches no scenario task: " + *opts.task_filter);
        tasks = kept;
    }

    task_load(cx);
    for (const auto& t : tasks) {
        if (t == "holomorphy") task_holomorphy(cx);
        else if (t == "idempotency") task_idempotency(cx);
        else if (t == "curvature-oracle") task_curvature_oracle(cx);
        else if (t == "connection") task_connection(cx);
        else if (t == "intertwining") task_intertwining_identity(cx);
        else if (t == "order-witness") task_order_witness(cx);
        else if (t == "leibniz") task_leibniz(cx);
        else if (t == "monomial") task_monomial(cx);
        else if (t == "pair-decomposition") task_pair_decomposition(cx);
        else if (t == "frame-change") task_frame_change(cx);
        else if (t == "unitary-invariance") task_unitary_invariance(cx);
        else if (t == "intertwine") task_intertwine(cx);
        else if (t == "classify") task_classify(cx);
        else if (t == "fb2") task_fb2(cx);
        else if (t == "flag-diagram") task_flag_diagram(cx);
        else if (t == "ofb-framechange") task_ofb_framechange(cx);
        else if (t == "fd-check") task_fd_check(cx);
        else throw ScenarioError("unknown task: " + t);
    }
    return rep;
}

std::vector<GridRow> curvature_grid(const Scenario& sc, const GridOptions& opts) {
    if (sc.m != 1) throw ScenarioError("curvature grid requires an m = 1 scenario");
    ExtendedCurve c;
    if (sc.curves.count(opts.curve)) {
        c = build_curve(sc, opts.curve);
    } else if (sc.kernels.count(opts.curve)) {
        Frame f{{section_from_kernel(sc.kernels.at(opts.curve))}};
        c = ExtendedCurve{f, f};
    } else {
        throw ScenarioError("grid: unknown curve or kernel " + opts.curve);
    }
    if (c.n() > 1 && !opts.trace)
        throw ScenarioError("grid: rank > 1 requires the trace reduction (--trace)");
    if (opts.nx < 1 || opts.ny < 1 || opts.radius <= 0.0)
        throw ScenarioError("grid: invalid grid spec");

    std::vector<GridRow> rows;
    for (int iy = 0; iy < opts.ny; ++iy) {
        for (int ix = 0; ix < opts.nx; ++ix) {
            double x = opts.nx == 1 ? 0.0 : -opts.radius + 2.0 * opts.radius * ix / (opts.nx - 1);
            double y = opts.ny == 1 ? 0.0 : -opts.radius + 2.0 * opts.radius * iy / (opts.ny - 1);
            GridRow row;
            row.re = x;
            row.im = y;
            Complex z(x, y);
            if (std::norm(z) >= 1.0) row.flag = "outside-domain";
            try {
                WirtingerJet H = gram(c.F, c.G, Point{z}, 1, 1);
                CMatrix K = classical_curvature(H).value();
                row.value = opts.trace ? K.trace().real() : K(0, 0).real();
                row.ok = row.flag.empty();
            } catch (const std::exception&) {
                row.flag = row.flag.empty() ? "singular-gram" : row.flag;
                row.value = 0.0;
                row.ok = false;
            }
            if (!row.flag.empty()) row.ok = false;
            rows.push_back(row);
        }
    }
    return rows;
}

std::string grid_to_csv(const std::vector<GridRow>& rows) {
    std::string out = "re,im,value,flag\n";
    for (const auto& r : rows) {
        char line[160];
        std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%s\n", r.re, r.im, r.value,
                      r.flag.c_str());
        out += line;
    }
    return out;
}

std::string grid_to_json(const std::vector<GridRow>& rows) {
    ordered_json j = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json row;
        row["re"] = r.re;
        row["im"] = r.im;
        row["value"] = r.value;
        row["flag"] = r.flag;
        j.push_back(row);
    }
    return j.dump(2) + "\n";
}

}  // namespace holocurve
