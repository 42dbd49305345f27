#include "shehu/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "shehu/inverse.hpp"
#include "shehu/solvers.hpp"

namespace shehu::cli {

using nlohmann::json;

std::string_view to_string(CommandStatus s) {
    switch (s) {
        case CommandStatus::Ok: return "ok";
        case CommandStatus::Error: return "error";
        case CommandStatus::Errata: return "errata";
    }
    return "?";
}

int CommandResult::exit_code() const {
    switch (status) {
        case CommandStatus::Ok: return 0;
        case CommandStatus::Error: return 1;
        case CommandStatus::Errata: return 2;
    }
    return 1;
}

json CommandResult::envelope() const {
    return {{"status", to_string(status)}, {"command", command}, {"payload", payload}, {"diagnostics", diagnostics}};
}

namespace {

json number(long double v) {
    if (!std::isfinite(v)) return nullptr;
    return static_cast<double>(v);
}

std::string show(long double v) {
    std::ostringstream o;
    o.precision(17);
    o << static_cast<double>(v);
    return o.str();
}

CommandResult error_result(const std::string& command, const std::string& kind, const std::string& message) {
    CommandResult r;
    r.status = CommandStatus::Error;
    r.command = command;
    r.payload = {{"error", kind}, {"message", message}};
    r.diagnostics.push_back(message);
    return r;
}

template <class F>
CommandResult guarded(const std::string& command, F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        return error_result(command, std::string(shehu::to_string(e.kind())), e.what());
    }
}

/// Drops the ", valid for ..." clause that transform appends to its text output.
std::string strip_roc(const std::string& text) {
    auto pos = text.find(", valid for");
    return pos == std::string::npos ? text : text.substr(0, pos);
}

TransformImage image_of_text(const std::string& text, bool from_time, const ConstantBindings& constants) {
    if (from_time) return transform(canonicalize(parse(text, constants)));
    HomogeneousForm h = homogeneous_form(parse_image(strip_roc(text), constants));
    if (h.u_power != 0)
        throw Error(ErrorKind::UPowerMismatch, "image is u^" + std::to_string(h.u_power) +
                                                   " times a function of s/u; Shehu images are homogeneous of degree 0");
    return TransformImage{h.f, {}, std::nullopt};
}

json terms_json(const InverseResult& inv) {
    json out = json::array();
    for (const auto& t : inv.terms) {
        json j = {{"term", t.str()}, {"multiplicity", t.multiplicity}, {"time", format(invert_term(t))}};
        if (t.kind == PartialFractionTerm::Kind::LinearPole) {
            j["kind"] = "linear";
            j["root"] = t.root.str();
        } else {
            j["kind"] = "quadratic";
            j["center"] = t.root.str();
            j["frequency"] = t.freq.str();
        }
        out.push_back(std::move(j));
    }
    return out;
}

json derivation_json(const Solution& sol) {
    json out = json::array();
    for (const auto& step : sol.derivation) out.push_back({{"label", step.label}, {"value", step.value}});
    return out;
}

CommandResult solution_result(const std::string& command, const Solution& sol, const ResidualReport& res) {
    CommandResult r;
    r.command = command;
    r.payload = {{"solution", format(sol.expr)},
                 {"residual_max", number(res.max())},
                 {"residual", {{"equation", number(res.equation)}, {"initial", number(res.initial)}, {"boundary", number(res.boundary)}}},
                 {"derivation", derivation_json(sol)}};
    r.text = "v = " + format(sol.expr) + "\nresidual_max = " + show(res.max()) + "\n";
    return r;
}

json point_json(const PointCheck& p) {
    json j = {{"s", number(p.at.s)},
              {"u", number(p.at.u)},
              {"verdict", to_string(p.verdict)},
              {"printed", number(p.symbolic)},
              {"reference", number(p.numeric)},
              {"rel_err", number(p.rel_err)}};
    if (!p.note.empty()) j["note"] = p.note;
    return j;
}

}  // namespace

CommandResult cmd_transform(const std::string& expr, View view, const ConstantBindings& constants) {
    return guarded("transform", [&] {
        AtomSum a;
        try {
            a = canonicalize(parse(expr, constants));
        } catch (const Error& e) {
            // A non-affine argument parses as nothing in the atom class, so it has no image.
            if (e.kind() != ErrorKind::NonAffineArgument) throw;
            throw Error(ErrorKind::NonTransformable, std::string("outside the atom class: ") + e.what());
        }
        TransformImage V = transform(a);
        CommandResult r;
        r.command = "transform";
        std::string image = format_image(V, view);
        r.payload = {{"input", expr},
                     {"canonical", format(a)},
                     {"view", to_string(view)},
                     {"image", image},
                     {"homogenized", format_homogenized(V)},
                     {"roc", V.roc ? json(format_roc(V.roc)) : json(nullptr)}};
        r.text = image;
        if (view == View::Shehu && V.roc) r.text += ", valid for " + format_roc(V.roc);
        r.text += "\n";
        return r;
    });
}

CommandResult cmd_invert(const std::string& image, const ConstantBindings& constants) {
    return guarded("invert", [&] {
        RationalR f = normalize_image(strip_roc(image), constants);
        InverseResult inv = invert_with_trace(f);
        CommandResult r;
        r.command = "invert";
        r.payload = {{"image", image},
                     {"homogenized", f.f.str() + ", r = s/u"},
                     {"time", format(inv.expr)},
                     {"terms", terms_json(inv)}};
        r.text = format(inv.expr) + "\n";
        return r;
    });
}

CommandResult cmd_convert(const std::string& text, bool from_time, const std::vector<View>& targets,
                          const ConstantBindings& constants) {
    return guarded("convert", [&] {
        TransformImage V = image_of_text(text, from_time, constants);
        CommandResult r;
        r.command = "convert";
        json images = json::object();
        for (View v : targets) {
            std::string img = format_image(V, v);
            images[std::string(to_string(v))] = img;
            r.text += targets.size() == 1 ? img + "\n" : std::string(to_string(v)) + ": " + img + "\n";
        }
        r.payload = {{"input", text}, {"shehu", format_image(V)}, {"images", images}};
        return r;
    });
}

CommandResult cmd_solve_ode(const std::string& equation, const std::string& inits) {
    return guarded("solve-ode", [&] {
        IVProblem p = parse_ivp(equation, inits);
        Solution sol = solve_ivp(p);
        return solution_result("solve-ode", sol, residual(p, sol.expr));
    });
}

CommandResult cmd_solve_pde(const ModalPDEProblem& problem) {
    return guarded("solve-pde", [&] {
        Solution sol = solve_pde(problem);
        return solution_result("solve-pde", sol, residual(problem, sol.expr));
    });
}

CommandResult cmd_sample(const Expr& solution, const SampleSpec& spec) {
    return guarded("sample", [&] {
        if (spec.nx < 1 || spec.nt < 1) throw Error(ErrorKind::InvalidArgument, "grid counts must be positive");
        auto at = [](long double lo, long double hi, int n, int i) {
            return n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
        };
        CommandResult r;
        r.command = "sample";
        json rows = json::array();
        std::ostringstream csv;
        csv.precision(17);
        csv << "x,t,v\n";
        for (int j = 0; j < spec.nt; ++j) {
            const long double t = at(spec.t0, spec.t1, spec.nt, j);
            for (int i = 0; i < spec.nx; ++i) {
                const long double x = at(spec.x0, spec.x1, spec.nx, i);
                const long double v = evaluate_ld(solution, Bindings{t, x});
                if (!std::isfinite(v))
                    throw Error(ErrorKind::InvalidArgument, "solution is not finite at x = " + show(x) + ", t = " + show(t));
                csv << static_cast<double>(x) << ',' << static_cast<double>(t) << ',' << static_cast<double>(v) << '\n';
                rows.push_back({number(x), number(t), number(v)});
            }
        }
        r.payload = {{"expression", format(solution)}, {"columns", {"x", "t", "v"}}, {"rows", rows}};
        r.text = csv.str();
        return r;
    });
}

json report_json(const TableReport& report) {
    json rows = json::array();
    for (const auto& row : report.rows) {
        json instances = json::array();
        for (const auto& ic : row.instances) {
            json columns = json::array();
            for (const auto& cc : ic.columns) {
                json points = json::array();
                for (const auto& p : cc.points) points.push_back(point_json(p));
                columns.push_back({{"column", to_string(cc.column)},
                                   {"status", to_string(cc.status)},
                                   {"printed", cc.printed},
                                   {"derived", cc.derived},
                                   {"exact_match", cc.exact_match ? json(*cc.exact_match) : json(nullptr)},
                                   {"detail", cc.detail},
                                   {"points", points}});
            }
            instances.push_back({{"label", ic.label},
                                 {"derived_image", ic.derived_image},
                                 {"rule", {{"status", to_string(ic.rule_status)}, {"detail", ic.rule_detail}}},
                                 {"cross_column_consistent", ic.cross_column_consistent},
                                 {"columns", columns}});
        }
        rows.push_back({{"row", row.row},
                        {"status", to_string(row.status)},
                        {"details", {{"symbolic_only", row.symbolic_only}, {"instances", instances}}}});
    }
    json claims = json::array();
    for (const auto& c : report.claims)
        claims.push_back({{"id", c.id},
                          {"status", to_string(c.status)},
                          {"printed", c.printed},
                          {"derived", c.derived},
                          {"adjudication", c.adjudication}});
    json errata = json::array();
    for (const auto& e : report.errata) {
        json j = {{"location", e.location},
                  {"printed", e.printed},
                  {"derived", e.derived},
                  {"instances", e.instances},
                  {"adjudication", e.adjudication}};
        if (e.row) j["row"] = *e.row;
        if (e.column) j["column"] = to_string(*e.column);
        errata.push_back(std::move(j));
    }
    return {{"summary",
             {{"rows", report.rows.size()},
              {"rows_rule_verified", report.rows_rule_verified()},
              {"errata", report.errata.size()},
              {"failures", report.failures()}}},
            {"rows", rows},
            {"claims", claims},
            {"errata", errata}};
}

CommandResult cmd_verify_table(const std::string& fixture, const std::vector<GridPoint>& grid, long double tol) {
    return guarded("verify-table", [&] {
        TableReport rep = verify_table(load_table(fixture), grid, tol);
        CommandResult r;
        r.command = "verify-table";
        r.payload = report_json(rep);
        r.payload["fixture"] = fixture;
        json g = json::array();
        for (const auto& p : grid) g.push_back({number(p.s), number(p.u)});
        r.payload["grid"] = g;

        std::ostringstream o;
        for (const auto& row : rep.rows) o << "row " << row.row << ": " << to_string(row.status) << '\n';
        for (const auto& c : rep.claims) o << c.id << ": " << to_string(c.status) << '\n';
        for (const auto& e : rep.errata) {
            o << "erratum " << e.location;
            if (e.column) o << " [" << to_string(*e.column) << "]";
            o << ": printed " << e.printed << "; derived " << e.derived << '\n';
        }
        o << "rows rule-verified: " << rep.rows_rule_verified() << "/" << rep.rows.size()
          << ", errata: " << rep.errata.size() << ", failures: " << rep.failures() << '\n';
        r.text = o.str();

        if (rep.failures() > 0) {
            r.status = CommandStatus::Error;
            r.diagnostics.push_back(std::to_string(rep.failures()) + " unconfirmed discrepancies");
        } else if (rep.has_errata()) {
            r.status = CommandStatus::Errata;
            r.diagnostics.push_back(std::to_string(rep.errata.size()) + " oracle-confirmed errata");
        }
        return r;
    });
}

std::vector<GridPoint> parse_grid(const std::string& text) {
    if (text == "default") return default_grid();
    if (text == "extended") return extended_grid();
    std::vector<GridPoint> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw Error(ErrorKind::InvalidArgument, "grid point '" + item + "' is not of the form s:u");
        long double s = 0, u = 0;
        try {
            s = std::stold(item.substr(0, colon));
            u = std::stold(item.substr(colon + 1));
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidArgument, "grid point '" + item + "' is not numeric");
        }
        if (!(s > 0) || !(u > 0)) throw Error(ErrorKind::InvalidArgument, "grid points need s > 0 and u > 0");
        out.push_back({s, u});
    }
    if (out.empty()) throw Error(ErrorKind::InvalidArgument, "empty grid");
    return out;
}

// ---------------------------------------------------------------- argument handling

namespace {

ConstantBindings parse_lets(const std::vector<std::string>& lets) {
    ConstantBindings out;
    for (const auto& l : lets) {
        auto eq = l.find('=');
        if (eq == std::string::npos || eq == 0)
            throw Error(ErrorKind::InvalidArgument, "--let expects name=value, got '" + l + "'");
        out[l.substr(0, eq)] = parse_constant(l.substr(eq + 1));
    }
    return out;
}

AtomSum data_atoms(const std::string& text) {
    return text.empty() ? AtomSum() : canonicalize(parse(text));
}

std::pair<long double, long double> parse_range(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::InvalidArgument, "range '" + text + "' is not lo,hi");
    try {
        return {std::stold(text.substr(0, comma)), std::stold(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "range '" + text + "' is not numeric");
    }
}

void emit(const CommandResult& r, bool as_json, std::ostream& out, std::ostream& err) {
    if (as_json) {
        out << r.envelope().dump(2) << '\n';
    } else {
        out << r.text;
    }
    if (r.status == CommandStatus::Error)
        for (const auto& d : r.diagnostics) err << "error: " << d << '\n';
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Shehu transform engine: symbolic transforms, inversion, ODE/PDE solving and table verification"};
    app.require_subcommand(1);
    bool as_json = false;
    std::vector<std::string> lets;

    auto* transform_cmd = app.add_subcommand("transform", "Shehu image of a time function");
    std::string expr, view_name = "shehu";
    transform_cmd->add_option("expr", expr, "time function of t")->required();
    transform_cmd->add_option("--as", view_name, "shehu, laplace, sumudu, natural or yang")
        ->check(CLI::IsMember({"shehu", "laplace", "sumudu", "natural", "yang"}));

    auto* invert_cmd = app.add_subcommand("invert", "time function of a rational image in s and u");
    std::string image;
    invert_cmd->add_option("image", image, "image in s and u")->required();

    auto* convert_cmd = app.add_subcommand("convert", "rewrite a Shehu image in another transform's variables");
    std::string convert_input;
    bool convert_time = false;
    std::vector<std::string> targets{"laplace", "sumudu", "natural", "yang"};
    convert_cmd->add_option("image", convert_input, "Shehu image in s and u (or a time function with --time)")->required();
    convert_cmd->add_flag("--time", convert_time, "the input is a time function");
    convert_cmd->add_option("--to", targets, "target views")
        ->check(CLI::IsMember({"shehu", "laplace", "sumudu", "natural", "yang"}));

    auto* ode_cmd = app.add_subcommand("solve-ode", "linear constant-coefficient initial value problem");
    std::string equation, inits;
    ode_cmd->add_option("--eq", equation, "e.g. \"v'' - 3*v' + 2*v = exp(3*t)\"")->required();
    ode_cmd->add_option("--init", inits, "e.g. \"v(0)=1, v'(0)=0\"");

    auto* pde_cmd = app.add_subcommand("solve-pde", "heat or wave equation on [0, L] with zero boundary values");
    std::string kind = "heat", kappa = "1", speed = "1", length = "1", initial, velocity, forcing;
    pde_cmd->add_option("--kind", kind, "heat or wave")->check(CLI::IsMember({"heat", "wave"}));
    pde_cmd->add_option("--kappa", kappa, "diffusivity (heat)");
    pde_cmd->add_option("--speed", speed, "wave speed (wave)");
    pde_cmd->add_option("--length", length, "interval length L");
    pde_cmd->add_option("--initial", initial, "v(x,0) as a sine series in x");
    pde_cmd->add_option("--velocity", velocity, "v_t(x,0) (wave)");
    pde_cmd->add_option("--forcing", forcing, "source term f(x)");

    auto* table_cmd = app.add_subcommand("verify-table", "check every table row and stated claim against the oracle");
    std::string fixture, grid_text = "default", out_path;
    table_cmd->add_option("--fixture", fixture, "fixture path (default: SHEHU_TABLE_PATH or the bundled table)");
    table_cmd->add_option("--grid", grid_text, "default, extended or s:u,s:u,...");
    table_cmd->add_option("--out", out_path, "write the JSON report here");
    double tol = 1e-6;
    table_cmd->add_option("--tol", tol, "relative agreement required at each grid point")->capture_default_str();

    auto* sample_cmd = app.add_subcommand("sample", "CSV samples x,t,v of a solution");
    std::string sample_expr, sample_eq, sample_inits, grid_counts = "21,21", x_range = "-1,1", t_range = "-1,1";
    std::string sample_kind, sample_initial, sample_velocity, sample_forcing, sample_coeff = "1", sample_length = "1";
    sample_cmd->add_option("--expr", sample_expr, "closed form in x and t");
    sample_cmd->add_option("--eq", sample_eq, "solve this ODE first");
    sample_cmd->add_option("--init", sample_inits, "initial values for --eq");
    sample_cmd->add_option("--kind", sample_kind, "solve a heat or wave problem first")
        ->check(CLI::IsMember({"heat", "wave"}));
    sample_cmd->add_option("--initial", sample_initial, "initial data for --kind");
    sample_cmd->add_option("--velocity", sample_velocity, "initial velocity for --kind wave");
    sample_cmd->add_option("--forcing", sample_forcing, "source term for --kind");
    sample_cmd->add_option("--coefficient", sample_coeff, "diffusivity or wave speed for --kind");
    sample_cmd->add_option("--length", sample_length, "interval length for --kind");
    sample_cmd->add_option("--grid", grid_counts, "nx,nt");
    sample_cmd->add_option("--x-range", x_range, "lo,hi");
    sample_cmd->add_option("--t-range", t_range, "lo,hi");

    for (auto* sub : {transform_cmd, invert_cmd, convert_cmd, ode_cmd, pde_cmd, table_cmd, sample_cmd})
        sub->add_flag("--json", as_json, "print the JSON envelope");
    for (auto* sub : {transform_cmd, invert_cmd, convert_cmd})
        sub->add_option("--let", lets, "bind a constant, e.g. a=2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 1;
    }

    CommandResult r;
    const std::string name = app.get_subcommands().front()->get_name();
    try {
        if (*transform_cmd) {
            r = cmd_transform(expr, parse_view(view_name), parse_lets(lets));
        } else if (*invert_cmd) {
            r = cmd_invert(image, parse_lets(lets));
        } else if (*convert_cmd) {
            std::vector<View> views;
            for (const auto& t : targets) views.push_back(parse_view(t));
            r = cmd_convert(convert_input, convert_time, views, parse_lets(lets));
        } else if (*ode_cmd) {
            r = cmd_solve_ode(equation, inits);
        } else if (*pde_cmd) {
            ModalPDEProblem p;
            p.kind = kind == "wave" ? PDEKind::Wave : PDEKind::Heat;
            p.speed = parse_constant(p.kind == PDEKind::Wave ? speed : kappa);
            p.length = parse_constant(length);
            p.initial = data_atoms(initial);
            p.velocity = data_atoms(velocity);
            p.forcing = data_atoms(forcing);
            r = cmd_solve_pde(p);
        } else if (*table_cmd) {
            r = cmd_verify_table(fixture.empty() ? default_table_path() : fixture, parse_grid(grid_text), tol);
            if (!out_path.empty()) {
                std::ofstream f(out_path);
                if (!f) throw Error(ErrorKind::Io, "cannot write '" + out_path + "'");
                f << r.envelope().dump(2) << '\n';
            }
        } else if (*sample_cmd) {
            Expr solution;
            if (!sample_expr.empty()) {
                solution = parse(sample_expr);
            } else if (!sample_eq.empty()) {
                solution = solve_ivp(parse_ivp(sample_eq, sample_inits)).expr;
            } else if (!sample_kind.empty()) {
                ModalPDEProblem p;
                p.kind = sample_kind == "wave" ? PDEKind::Wave : PDEKind::Heat;
                p.speed = parse_constant(sample_coeff);
                p.length = parse_constant(sample_length);
                p.initial = data_atoms(sample_initial);
                p.velocity = data_atoms(sample_velocity);
                p.forcing = data_atoms(sample_forcing);
                solution = solve_pde(p).expr;
            } else {
                throw Error(ErrorKind::InvalidArgument, "sample needs --expr, --eq or --kind");
            }
            SampleSpec spec;
            auto [nx, nt] = parse_range(grid_counts);
            spec.nx = static_cast<int>(nx);
            spec.nt = static_cast<int>(nt);
            std::tie(spec.x0, spec.x1) = parse_range(x_range);
            std::tie(spec.t0, spec.t1) = parse_range(t_range);
            r = cmd_sample(solution, spec);
        }
    } catch (const Error& e) {
        r = error_result(name, std::string(shehu::to_string(e.kind())), e.what());
    }
    emit(r, as_json, out, err);
    return r.exit_code();
}

}  // namespace shehu::cli
