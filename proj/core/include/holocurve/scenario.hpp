#ifndef HOLOCURVE_SCENARIO_HPP
#define HOLOCURVE_SCENARIO_HPP

#include <optional>
#include <stdexcept>

#include "holocurve/classify.hpp"
#include "holocurve/flags.hpp"

namespace holocurve {

/// Input errors (unreadable file, schema violation, unresolved name);
/// mapped to exit code 2 by the CLI.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CurveSpec {
    std::string f, g;
    int rank = 1;
    std::string style = "plain";  // "plain" | "jet" (rank-2 jet frame)
    std::string corrupt;          // "" | "transpose"
    std::vector<Complex> g_rescale;  // optional polynomial in lambda_1 applied to G
};

struct Fb2Spec {
    std::string kernel0, kernel1;
    Complex coupling{1.0, 0.0};
};

struct OfbSpec {
    std::string kernel;
    int n = 2;
    std::vector<Complex> couplings;  // s_1..s_{n-1}, t_{i-1} = -s_i t_i
};

struct ClassifyCase {
    std::string kind;  // "b1" | "shift" | "fb2" | "finite-rank"
    std::string left, right;
    std::vector<Complex> left_rescale, right_rescale;
    std::string expect;  // "equivalent" | "not-equivalent" | "inconclusive"
};

struct IntertwineCase {
    std::string left, right;
    std::string x = "identity";  // "identity" | "random-unitary"
};

struct Scenario {
    std::string name;
    int m = 1;
    int truncation = 60;
    int order_p = 2, order_q = 2;
    std::optional<double> tolerance;  // global override; absent = per-check defaults
    std::map<std::string, DiagonalKernelSpec> kernels;
    std::map<std::string, CurveSpec> curves;
    std::map<std::string, Fb2Spec> fb2_models;
    std::map<std::string, OfbSpec> ofb_models;
    std::vector<ClassifyCase> classify_cases;
    std::vector<IntertwineCase> intertwine_cases;
    std::vector<Point> sample_points;
    std::vector<std::string> tasks;
};

Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& json_text);

struct ReportEntry {
    std::string task, subject, check;
    double value = 0.0;
    double tolerance = 0.0;
    bool exceed = false;  // when set, the check passes by exceeding the bound
    bool pass = false;
    std::string note;
};

struct Report {
    int schema_version = 1;
    std::string scenario_name;
    std::vector<ReportEntry> entries;

    int failed() const;
    std::string to_json() const;  // deterministic field and entry order
    std::string to_csv() const;
    std::string to_table() const;  // human summary for the verify verb
};

struct RunOptions {
    std::optional<double> tolerance;           // overrides scenario + defaults
    std::optional<std::pair<int, int>> max_order;
    bool fd_check = false;
    std::optional<std::string> task_filter;
};

Report run_scenario(const Scenario& sc, const RunOptions& opts = {});

struct GridOptions {
    std::string curve;  // curve name, or kernel name for the implied rank-1 curve
    double radius = 0.5;
    int nx = 5, ny = 5;
    bool trace = false;  // required for rank > 1
};

struct GridRow {
    double re = 0.0, im = 0.0;
    double value = 0.0;
    bool ok = true;
    std::string flag;  // "outside-domain" | "singular-gram" | ""
};

/// Classical curvature over a square grid; singular points are flagged in
/// place, never dropped. m = 1 scenarios only.
std::vector<GridRow> curvature_grid(const Scenario& sc, const GridOptions& opts);
std::string grid_to_csv(const std::vector<GridRow>& rows);
std::string grid_to_json(const std::vector<GridRow>& rows);

/// Resolved model builders shared by tasks, tests and the acceptance suite.
ExtendedCurve build_curve(const Scenario& sc, const std::string& name);
Fb2Model build_fb2(const Scenario& sc, const Fb2Spec& spec);
std::vector<PolynomialSection> build_ofb_sections(const Scenario& sc, const OfbSpec& spec);

}  // namespace holocurve

#endif
