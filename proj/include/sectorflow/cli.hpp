#pragma once

// Command-line front end.  All command bodies live here so tests can invoke
// them in-process; tools/main.cpp only forwards argv.
//
// Exit codes are frozen: 0 success, 1 usage error, 2 domain error (invalid
// query values, nonexistent solutions, oversized grids), 3 unsupported
// region (queries beyond the surplus support threshold).  JSON output is
// versioned by a top-level "schema" field; numeric JSON fields are always
// finite.  CSV uses LF endings, '.' decimals, 17 significant digits.
// Identical invocations produce byte-identical stdout and files.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cubic.hpp"
#include "errors.hpp"
#include "profile.hpp"
#include "solve.hpp"
#include "verify.hpp"

namespace sectorflow::cli {

struct PhaseCell {
    bool exists = false;
    int count = 0;
    bool boundary = false;
};

// Existence grid over (half-angle, flux) for each queried flow type;
// cells[t][i][j] pairs alpha_grid[i] with phi_grid[j] and reproduces an
// independent classify call.
struct PhaseDiagram {
    std::vector<double> alpha_grid;
    std::vector<double> phi_grid;
    std::vector<FlowType> types;
    std::vector<std::vector<std::vector<PhaseCell>>> cells;
};

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* schema_tag = "sector-jh/1";

// Value-syntax failure inside an option argument (exit 1, like flag errors).
struct UsageError {
    std::string message;
};

inline std::string fmt17(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.17g", v);
    return std::string(b);
}

inline std::string type_string(const FlowType& t) {
    return std::to_string(t.m_plus) + "," + std::to_string(t.m_minus);
}

inline FlowType parse_type(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw UsageError{"flow type must be \"m+,m-\", e.g. 1,0 or 1,2 (got \"" + s + "\")"};
    try {
        std::size_t p1 = 0, p2 = 0;
        const int mp = std::stoi(s.substr(0, comma), &p1);
        const int mm = std::stoi(s.substr(comma + 1), &p2);
        if (p1 != comma || p2 != s.size() - comma - 1)
            throw UsageError{"flow type must be \"m+,m-\" (got \"" + s + "\")"};
        return {mp, mm};
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError{"flow type must be \"m+,m-\" (got \"" + s + "\")"};
    }
}

inline std::pair<int, int> parse_grid(const std::string& s) {
    const auto x = s.find('x');
    if (x == std::string::npos) throw UsageError{"--grid expects NxM, e.g. 120x160"};
    try {
        std::size_t p1 = 0, p2 = 0;
        const int n = std::stoi(s.substr(0, x), &p1);
        const int m = std::stoi(s.substr(x + 1), &p2);
        if (p1 != x || p2 != s.size() - x - 1 || n < 1 || m < 1)
            throw UsageError{"--grid expects NxM with N, M >= 1 (got \"" + s + "\")"};
        return {n, m};
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError{"--grid expects NxM, e.g. 120x160 (got \"" + s + "\")"};
    }
}

inline double to_radians(double v, bool degrees) {
    return degrees ? v * std::numbers::pi / 180.0 : v;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

inline ordered_json solution_json(const Solution& s) {
    ordered_json j;
    j["type"] = type_string(s.flow_type);
    if (s.roots.is_real()) {
        const RealRoots& r = s.roots.real();
        j["roots"] = {{"e1", r.e1}, {"e2", r.e2}, {"e3", r.e3}};
    } else {
        const ComplexPairRoots& r = s.roots.pair();
        j["roots"] = {{"e1", r.e1}, {"c", r.c}};
    }
    j["gamma"] = s.gamma ? ordered_json(s.gamma->value()) : ordered_json(nullptr);
    j["b"] = s.coeffs.b;
    j["residuals"] = {{"angle", s.residual_angle}, {"flux", s.residual_flux}};
    return j;
}

inline int cmd_classify(double alpha, double phi, const FlowType& t, bool compact,
                        std::ostream& out) {
    const Existence ex = classify({alpha, phi, t});
    ordered_json j;
    j["schema"] = schema_tag;
    j["alpha"] = alpha;
    j["flux"] = phi;
    j["type"] = type_string(t);
    j["exists"] = ex.exists;
    j["count_lower_bound"] = ex.count_lower_bound;
    j["boundary_case"] = ex.boundary_case;
    ordered_json sols = ordered_json::array();
    for (const Solution& s : ex.solutions) sols.push_back(solution_json(s));
    j["solutions"] = std::move(sols);
    out << (compact ? j.dump() : j.dump(2)) << '\n';
    return 0;
}

inline int cmd_maxflux(const FlowType& t, double alpha_min, double alpha_max, int n,
                       std::ostream& out) {
    if (n < 1) throw std::domain_error("maxflux: --n must be >= 1");
    if (!(alpha_min > 0.0 && alpha_min <= alpha_max && alpha_max < std::numbers::pi))
        throw std::domain_error("maxflux: need 0 < alpha-min <= alpha-max < pi");
    std::ostringstream rows;  // buffered so a late throw emits nothing
    rows << "alpha,phi_max,e1,e2,e3,attained\n";
    for (int i = 0; i < n; ++i) {
        const double a =
            n == 1 ? alpha_min : alpha_min + (alpha_max - alpha_min) * i / (n - 1);
        const PhiMaxResult r = phi_max(t, a);
        double e1 = std::numeric_limits<double>::quiet_NaN(), e2 = e1, e3 = e1;
        if (r.argmax && r.argmax->is_real()) {
            const RealRoots& rr = r.argmax->real();
            e1 = rr.e1;
            e2 = rr.e2;
            e3 = rr.e3;
        }
        rows << fmt17(a) << ',' << fmt17(r.value) << ',' << fmt17(e1) << ',' << fmt17(e2)
             << ',' << fmt17(e3) << ',' << (r.attained ? "true" : "false") << '\n';
    }
    out << rows.str();
    return 0;
}

inline std::string profile_csv(const Profile& p) {
    std::string s = "theta,f,fprime\n";
    for (const ProfileSample& q : p.samples)
        s += fmt17(q.theta) + "," + fmt17(q.f) + "," + fmt17(q.fprime) + "\n";
    return s;
}

// Dependency-free line plot of f(theta): frame, zero axes, sample polyline.
inline std::string profile_svg(const Profile& p, const std::string& caption) {
    constexpr double left = 60.0, right = 620.0, top = 30.0, bottom = 380.0;
    double fmin = 0.0, fmax = 0.0;
    for (const ProfileSample& q : p.samples) {
        fmin = std::min(fmin, q.f);
        fmax = std::max(fmax, q.f);
    }
    double pad = 0.05 * (fmax - fmin);
    if (pad == 0.0) pad = 1.0;
    fmin -= pad;
    fmax += pad;
    const double tmin = p.samples.front().theta, tmax = p.samples.back().theta;
    const auto X = [&](double th) { return left + (th - tmin) / (tmax - tmin) * (right - left); };
    const auto Y = [&](double f) { return bottom - (f - fmin) / (fmax - fmin) * (bottom - top); };
    const auto num = [](double v) {
        char b[32];
        std::snprintf(b, sizeof b, "%.3f", v);
        return std::string(b);
    };
    const auto lbl = [](double v) {
        char b[32];
        std::snprintf(b, sizeof b, "%.6g", v);
        return std::string(b);
    };
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" "
         "viewBox=\"0 0 640 420\">\n";
    s += "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
    const auto line = [&](double x1, double y1, double x2, double y2, const char* color) {
        s += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
             "\" y2=\"" + num(y2) + "\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n";
    };
    if (fmin < 0.0 && fmax > 0.0) line(left, Y(0.0), right, Y(0.0), "#999999");
    if (tmin < 0.0 && tmax > 0.0) line(X(0.0), top, X(0.0), bottom, "#999999");
    line(left, bottom, right, bottom, "#000000");
    line(left, top, left, bottom, "#000000");
    s += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < p.samples.size(); ++i) {
        if (i) s += ' ';
        s += num(X(p.samples[i].theta)) + ',' + num(Y(p.samples[i].f));
    }
    s += "\"/>\n";
    const auto text = [&](double x, double y, const std::string& body, const char* anchor) {
        s += "<text x=\"" + num(x) + "\" y=\"" + num(y) +
             "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"" + anchor + "\">" +
             body + "</text>\n";
    };
    text(left, top - 10.0, caption, "start");
    text(left, bottom + 16.0, lbl(tmin), "middle");
    text(right, bottom + 16.0, lbl(tmax), "middle");
    text(left - 8.0, Y(fmax) + 4.0, lbl(fmax), "end");
    text(left - 8.0, Y(fmin) + 4.0, lbl(fmin), "end");
    return s + "</svg>\n";
}

inline int cmd_profile(double alpha, double phi, const FlowType& t, int samples,
                       const std::string& branch, bool mirror, const std::string& out_path,
                       const std::string& svg_path, std::ostream& out, std::ostream& err) {
    const Existence ex = classify({alpha, phi, t});
    if (!ex.exists)
        throw std::domain_error("profile: no solution of type " + type_string(t) +
                                " at this half-angle and flux");
    std::vector<Solution> sols = ex.solutions;
    std::sort(sols.begin(), sols.end(),
              [](const Solution& a, const Solution& b) { return a.roots.e1() < b.roots.e1(); });
    const Solution* picked = &sols.front();
    if (sols.size() == 1) {
        if (!branch.empty()) err << "note: solution is unique; --branch ignored\n";
    } else {
        picked = branch == "high" ? &sols.back() : &sols.front();
        if (branch.empty())
            err << "note: " << sols.size()
                << " solutions at this flux; emitting the low branch (see --branch)\n";
    }
    const Profile p = reconstruct(*picked, picked->flow_type, samples, mirror);
    const std::string csv = profile_csv(p);
    if (out_path.empty())
        out << csv;
    else
        write_file(out_path, csv);
    if (!svg_path.empty()) {
        const std::string caption = "f(theta)  type " + type_string(picked->flow_type) +
                                    "  alpha " + fmt17(alpha) + "  flux " + fmt17(phi);
        write_file(svg_path, profile_svg(p, caption));
    }
    return 0;
}

inline PhaseDiagram compute_phase(const std::vector<FlowType>& types, double alpha_lo,
                                  double alpha_hi, double phi_lo, double phi_hi, int n_alpha,
                                  int n_phi) {
    if (!(alpha_lo > 0.0 && alpha_lo <= alpha_hi && alpha_hi < std::numbers::pi))
        throw std::domain_error("phase: need 0 < alpha range < pi");
    if (!(phi_lo <= phi_hi)) throw std::domain_error("phase: flux range is reversed");
    if (static_cast<long long>(n_alpha) * n_phi > 1000000)
        throw std::domain_error("phase: grid exceeds 1e6 cells");
    if (types.empty()) throw std::domain_error("phase: no flow types given");
    for (const FlowType& t : types) {
        require_valid(t);
        if (t.m_plus == 2 && t.m_minus == 1 && alpha_hi > alpha_star_21())
            throw unsupported_region_error(
                "phase: type 2,1 is undecidable past the support threshold alpha* = " +
                fmt17(alpha_star_21()));
    }
    PhaseDiagram d;
    d.types = types;
    d.alpha_grid.resize(n_alpha);
    d.phi_grid.resize(n_phi);
    for (int i = 0; i < n_alpha; ++i)
        d.alpha_grid[i] =
            n_alpha == 1 ? alpha_lo : alpha_lo + (alpha_hi - alpha_lo) * i / (n_alpha - 1);
    for (int j = 0; j < n_phi; ++j)
        d.phi_grid[j] = n_phi == 1 ? phi_lo : phi_lo + (phi_hi - phi_lo) * j / (n_phi - 1);
    d.cells.assign(types.size(),
                   std::vector<std::vector<PhaseCell>>(n_alpha, std::vector<PhaseCell>(n_phi)));

    // Cells are independent classify calls; a worker pool strides over the
    // flattened (type, alpha, phi) index space.  Each index is written by
    // exactly one worker, so the result cannot depend on scheduling order.
    const int cells_per_type = n_alpha * n_phi;
    const int total = static_cast<int>(types.size()) * cells_per_type;
    std::atomic<int> next{0};
    std::atomic<int> bad{0};  // sticky worst exit code seen by any worker
    auto worker = [&]() {
        for (;;) {
            const int k = next.fetch_add(1);
            if (k >= total) return;
            const int ti = k / cells_per_type;
            const int i = (k % cells_per_type) / n_phi;
            const int j = k % n_phi;
            try {
                const Existence e = classify({d.alpha_grid[i], d.phi_grid[j], types[ti]});
                d.cells[ti][i][j] = {e.exists, e.count_lower_bound, e.boundary_case};
            } catch (const unsupported_region_error&) {
                bad.store(3);
            } catch (const std::exception&) {
                bad.store(2);
            }
        }
    };
    const unsigned hw = std::thread::hardware_concurrency();
    const int n_workers = static_cast<int>(std::clamp(hw, 1u, 8u));
    std::vector<std::thread> pool;
    for (int w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
    for (std::thread& th : pool) th.join();
    if (bad.load() == 3) throw unsupported_region_error("phase: a cell query was unsupported");
    if (bad.load() != 0) throw std::domain_error("phase: a cell query failed");
    return d;
}

inline int cmd_phase(const PhaseDiagram& d, const std::string& out_path) {
    ordered_json j;
    j["schema"] = schema_tag;
    j["alpha_grid"] = d.alpha_grid;
    j["phi_grid"] = d.phi_grid;
    ordered_json tnames = ordered_json::array();
    for (const FlowType& t : d.types) tnames.push_back(type_string(t));
    j["types"] = std::move(tnames);
    j["cell_format"] = {"exists", "count_lower_bound", "boundary_case"};
    ordered_json grids = ordered_json::object();
    for (std::size_t ti = 0; ti < d.types.size(); ++ti) {
        ordered_json rows = ordered_json::array();
        for (const auto& row_cells : d.cells[ti]) {
            ordered_json row = ordered_json::array();
            for (const PhaseCell& c : row_cells)
                row.push_back({c.exists ? 1 : 0, c.count, c.boundary ? 1 : 0});
            rows.push_back(std::move(row));
        }
        grids[type_string(d.types[ti])] = std::move(rows);
    }
    j["cells"] = std::move(grids);  // cells[type][i][j] pairs alpha_grid[i] with phi_grid[j]
    ordered_json curves = ordered_json::object();
    for (const FlowType& t : d.types) {
        ordered_json pts = ordered_json::array();
        for (double a : d.alpha_grid) {
            ordered_json pt;
            pt["alpha"] = a;
            try {
                const PhiMaxResult r = phi_max(t, a);
                pt["phi_max"] = r.value;
                pt["attained"] = r.attained;
            } catch (const std::domain_error&) {
                pt["status"] = "undefined";  // half-angle outside the type's supremum domain
            }
            pts.push_back(std::move(pt));
        }
        curves[type_string(t)] = std::move(pts);
    }
    j["max_flux"] = std::move(curves);
    write_file(out_path, j.dump(2) + "\n");
    return 0;
}

inline int cmd_verify(const std::string& filter, std::ostream& out, std::ostream& err) {
    const std::vector<CriterionResult> results = run_acceptance(filter);
    if (results.empty()) {
        err << "verify: no criterion name contains \"" << filter << "\"\n";
        return 1;
    }
    int passed = 0;
    for (const CriterionResult& r : results) {
        char line[640];
        std::snprintf(line, sizeof line, "%s  %2d %-28s %s\n", r.pass ? "PASS" : "FAIL", r.id,
                      r.name.c_str(), r.detail.c_str());
        out << line;
        if (r.pass) ++passed;
    }
    ordered_json j;
    j["schema"] = schema_tag;
    ordered_json arr = ordered_json::array();
    for (const CriterionResult& r : results)
        arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    j["criteria"] = std::move(arr);
    j["passed"] = passed;
    j["total"] = static_cast<int>(results.size());
    j["all_pass"] = passed == static_cast<int>(results.size());
    out << j.dump(2) << '\n';
    return j["all_pass"].get<bool>() ? 0 : 1;
}

}  // namespace detail

// Parses argv (without the program name) and runs one subcommand.
inline int run(std::vector<std::string> args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    using detail::parse_type;
    using detail::to_radians;

    CLI::App app{"Self-similar sector flows: existence, maximum flux, profiles, phase grids"};
    app.name("sectorflow");
    app.require_subcommand(1);

    struct {
        double alpha = 0.0, flux = 0.0;
        std::string type;
        bool degrees = false, compact = false;
    } cl;
    CLI::App* classify_cmd = app.add_subcommand("classify", "Existence and branches at one query point");
    classify_cmd->add_option("--alpha", cl.alpha, "sector half-angle")->required();
    classify_cmd->add_option("--flux", cl.flux, "prescribed flux")->required();
    classify_cmd->add_option("--type", cl.type, "flow type m+,m-")->required();
    classify_cmd->add_flag("--degrees", cl.degrees, "interpret angles in degrees");
    classify_cmd->add_flag("--json", cl.compact, "compact single-line JSON (default pretty)");

    struct {
        std::string type;
        double alpha_min = 0.0, alpha_max = 0.0;
        int n = 1;
        bool degrees = false;
    } mf;
    CLI::App* maxflux_cmd = app.add_subcommand("maxflux", "CSV table of the flux supremum");
    maxflux_cmd->add_option("--type", mf.type, "flow type m+,m-")->required();
    maxflux_cmd->add_option("--alpha-min", mf.alpha_min, "first half-angle")->required();
    maxflux_cmd->add_option("--alpha-max", mf.alpha_max, "last half-angle")->required();
    maxflux_cmd->add_option("--n", mf.n, "number of rows")->required();
    maxflux_cmd->add_flag("--degrees", mf.degrees, "interpret angles in degrees");

    struct {
        double alpha = 0.0, flux = 0.0;
        std::string type, branch, out_path, svg_path;
        int samples = 64;
        bool mirror = false, degrees = false;
    } pr;
    CLI::App* profile_cmd = app.add_subcommand("profile", "CSV (and optional SVG) of f(theta)");
    profile_cmd->add_option("--alpha", pr.alpha, "sector half-angle")->required();
    profile_cmd->add_option("--flux", pr.flux, "prescribed flux")->required();
    profile_cmd->add_option("--type", pr.type, "flow type m+,m-")->required();
    profile_cmd->add_option("--samples", pr.samples, "samples per arc (>= 8)");
    profile_cmd->add_option("--branch", pr.branch, "non-uniqueness branch")
        ->check(CLI::IsMember({"low", "high"}));
    profile_cmd->add_flag("--mirror", pr.mirror, "emit the reflected profile");
    profile_cmd->add_option("--out", pr.out_path, "CSV path (default stdout)");
    profile_cmd->add_option("--svg", pr.svg_path, "also write an SVG plot");
    profile_cmd->add_flag("--degrees", pr.degrees, "interpret angles in degrees");

    struct {
        std::vector<std::string> types;
        std::vector<double> alpha_range, phi_range;
        std::string grid, out_path;
        bool degrees = false;
    } ph;
    CLI::App* phase_cmd = app.add_subcommand("phase", "JSON existence grid over (alpha, flux)");
    phase_cmd->add_option("--types", ph.types, "flow types, semicolon-separated (e.g. \"1,0;0,1\")")
        ->required()
        ->delimiter(';');
    phase_cmd->add_option("--alpha-range", ph.alpha_range, "half-angle range LO HI")
        ->required()
        ->expected(2);
    phase_cmd->add_option("--phi-range", ph.phi_range, "flux range LO HI")->required()->expected(2);
    phase_cmd->add_option("--grid", ph.grid, "resolution NxM (alpha x flux)")->required();
    phase_cmd->add_option("--out", ph.out_path, "output JSON path")->required();
    phase_cmd->add_flag("--degrees", ph.degrees, "interpret angles in degrees");

    struct {
        std::string filter;
    } vf;
    CLI::App* verify_cmd = app.add_subcommand("verify", "Run the acceptance criteria");
    verify_cmd->add_option("--filter", vf.filter, "only criteria whose name contains this");

    try {
        std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*classify_cmd)
            return detail::cmd_classify(to_radians(cl.alpha, cl.degrees), cl.flux,
                                        parse_type(cl.type), cl.compact, out);
        if (*maxflux_cmd)
            return detail::cmd_maxflux(parse_type(mf.type), to_radians(mf.alpha_min, mf.degrees),
                                       to_radians(mf.alpha_max, mf.degrees), mf.n, out);
        if (*profile_cmd)
            return detail::cmd_profile(to_radians(pr.alpha, pr.degrees), pr.flux,
                                       parse_type(pr.type), pr.samples, pr.branch, pr.mirror,
                                       pr.out_path, pr.svg_path, out, err);
        if (*phase_cmd) {
            std::vector<FlowType> types;
            for (const std::string& s : ph.types) types.push_back(parse_type(s));
            const auto [n_alpha, n_phi] = detail::parse_grid(ph.grid);
            const PhaseDiagram d = detail::compute_phase(
                types, to_radians(ph.alpha_range[0], ph.degrees),
                to_radians(ph.alpha_range[1], ph.degrees), ph.phi_range[0], ph.phi_range[1],
                n_alpha, n_phi);
            return detail::cmd_phase(d, ph.out_path);
        }
        if (*verify_cmd) return detail::cmd_verify(vf.filter, out, err);
        err << "error: no subcommand\n";
        return 1;
    } catch (const detail::UsageError& e) {
        err << "usage error: " << e.message << "\nRun with --help for usage.\n";
        return 1;
    } catch (const unsupported_region_error& e) {
        err << "unsupported region: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "domain error: " << e.what() << '\n';
        return 2;
    }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace sectorflow::cli
