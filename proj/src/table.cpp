#include "shehu/table.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "shehu/inverse.hpp"

namespace shehu {

using nlohmann::json;

std::string_view to_string(Column c) {
    switch (c) {
        case Column::Shehu: return "shehu";
        case Column::Natural: return "natural";
        case Column::Sumudu: return "sumudu";
        case Column::Laplace: return "laplace";
    }
    return "?";
}

std::string_view to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skipped: return "skipped";
        case Status::ErrataConfirmed: return "errata-confirmed";
    }
    return "?";
}

const std::string& TableEntry::printed(Column c) const {
    switch (c) {
        case Column::Shehu: return shehu;
        case Column::Natural: return natural;
        case Column::Sumudu: return sumudu;
        case Column::Laplace: return laplace;
    }
    return shehu;
}

// ---------------------------------------------------------------- loading

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& msg) {
    throw Error(ErrorKind::Schema, where + ": " + msg);
}

std::string str_field(const json& obj, const char* key, const std::string& where, bool required = true) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        if (required) schema(where, std::string("missing field '") + key + "'");
        return {};
    }
    if (!it->is_string()) schema(where, std::string("field '") + key + "' must be a string");
    return it->get<std::string>();
}

struct Instantiations {
    std::vector<Instance> alpha_beta;
    std::vector<Instance> n;
};

Coeff constant_value(const std::string& text, const std::string& where) {
    try {
        return Coeff(parse_rational(text));
    } catch (const Error&) {
        schema(where, "placeholder value '" + text + "' is not a rational number");
    }
}

Instantiations read_instantiations(const json& root) {
    Instantiations out;
    auto it = root.find("instantiations");
    if (it == root.end()) {
        out.alpha_beta.push_back({"a=1,b=2", {{"a", Coeff(1)}, {"b", Coeff(2)}}});
        for (int n = 0; n <= 3; ++n) out.n.push_back({"n=" + std::to_string(n), {{"n", Coeff(n)}}});
        return out;
    }
    const std::string where = "instantiations";
    if (!it->is_object()) schema(where, "must be an object");
    const json& ab = it->value("alpha_beta", json::array());
    if (!ab.is_array() || ab.empty()) schema(where, "'alpha_beta' must be a non-empty array");
    for (const auto& e : ab) {
        if (!e.is_object()) schema(where, "'alpha_beta' entries must be objects");
        std::string a = str_field(e, "a", where), b = str_field(e, "b", where);
        std::string label = str_field(e, "label", where, false);
        if (label.empty()) label = "a=" + a + ",b=" + b;
        Coeff ca = constant_value(a, where), cb = constant_value(b, where);
        if (ca.sign() <= 0) schema(where, "a must be positive");
        if (ca == cb) schema(where, "a and b must differ");
        out.alpha_beta.push_back({label, {{"a", ca}, {"b", cb}}});
    }
    const json& ns = it->value("n", json::array());
    if (!ns.is_array() || ns.empty()) schema(where, "'n' must be a non-empty array");
    for (const auto& e : ns) {
        if (!e.is_string()) schema(where, "'n' entries must be strings");
        Coeff n = constant_value(e.get<std::string>(), where);
        if (!n.is_integer() || n.sign() < 0) schema(where, "n must be a non-negative integer");
        out.n.push_back({"n=" + e.get<std::string>(), {{"n", n}}});
    }
    return out;
}

std::vector<Instance> instances_for(const std::vector<std::string>& texts, const Instantiations& inst) {
    static const std::regex uses_n(R"(\bn\b)"), uses_ab(R"(\b[ab]\b)");
    bool n = false, ab = false;
    for (const auto& t : texts) {
        n = n || std::regex_search(t, uses_n);
        ab = ab || std::regex_search(t, uses_ab);
    }
    if (n) return inst.n;
    if (ab) return inst.alpha_beta;
    return {Instance{}};
}

void check_parses(const std::string& where, const char* what, const std::string& text,
                  const std::vector<Instance>& instances, bool time_domain) {
    for (const auto& in : instances) {
        try {
            if (time_domain) {
                canonicalize(parse(text, in.constants));
            } else {
                parse_image(text, in.constants);
            }
        } catch (const Error& e) {
            schema(where, std::string(what) + " '" + text + "' does not parse" +
                              (in.label.empty() ? "" : " at " + in.label) + ": " + e.what());
        }
    }
}

}  // namespace

Table parse_table(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Schema, std::string("fixture is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) schema("fixture", "top level must be an object");
    if (root.contains("schema_version") && root["schema_version"] != 1)
        schema("fixture", "unsupported schema_version");
    Instantiations inst = read_instantiations(root);

    Table table;
    auto rows = root.find("rows");
    if (rows == root.end() || !rows->is_array()) schema("fixture", "missing 'rows' array");
    std::set<int> seen;
    std::size_t index = 0;
    for (const auto& r : *rows) {
        ++index;
        std::string where = "rows[" + std::to_string(index - 1) + "]";
        if (!r.is_object()) schema(where, "must be an object");
        if (!r.contains("row") || !r["row"].is_number_integer()) schema(where, "missing integer field 'row'");
        TableEntry e;
        e.row = r["row"].get<int>();
        where = "row " + std::to_string(e.row);
        if (e.row < 1) schema(where, "row id must be positive");
        if (!seen.insert(e.row).second) schema(where, "duplicate row id");
        e.time = str_field(r, "time", where);
        e.shehu = str_field(r, "shehu", where);
        e.natural = str_field(r, "natural", where);
        e.sumudu = str_field(r, "sumudu", where);
        e.laplace = str_field(r, "laplace", where);
        std::string mode = str_field(r, "mode", where);
        if (mode != "numeric" && mode != "symbolic-only")
            schema(where, "mode must be 'numeric' or 'symbolic-only', got '" + mode + "'");
        e.symbolic_only = mode == "symbolic-only";
        if (r.contains("suspect")) {
            if (!r["suspect"].is_boolean()) schema(where, "field 'suspect' must be a boolean");
            e.suspect = r["suspect"].get<bool>();
        }
        e.instances = instances_for({e.time, e.shehu, e.natural, e.sumudu, e.laplace}, inst);
        check_parses(where, "time function", e.time, e.instances, true);
        for (Column c : kColumns) check_parses(where, std::string(to_string(c)).c_str(), e.printed(c), e.instances, false);
        table.entries.push_back(std::move(e));
    }

    if (auto claims = root.find("claims"); claims != root.end()) {
        if (!claims->is_array()) schema("claims", "must be an array");
        for (const auto& c : *claims) {
            if (!c.is_object()) schema("claims", "entries must be objects");
            Claim cl;
            cl.id = str_field(c, "id", "claims");
            const std::string where = "claim " + cl.id;
            std::string kind = str_field(c, "kind", where);
            if (kind != "forward" && kind != "inverse") schema(where, "kind must be 'forward' or 'inverse'");
            cl.inverse = kind == "inverse";
            cl.printed = str_field(c, "printed", where);
            cl.note = str_field(c, "note", where, false);
            if (cl.inverse) {
                cl.image = str_field(c, "image", where);
            } else {
                cl.time = str_field(c, "time", where);
            }
            cl.instances = instances_for({cl.time, cl.image, cl.printed}, inst);
            if (cl.inverse) {
                check_parses(where, "image", cl.image, cl.instances, false);
                check_parses(where, "printed time function", cl.printed, cl.instances, true);
            } else {
                check_parses(where, "time function", cl.time, cl.instances, true);
                check_parses(where, "printed image", cl.printed, cl.instances, false);
            }
            table.claims.push_back(std::move(cl));
        }
    }
    return table;
}

Table load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open fixture '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_table(buf.str());
}

std::string default_table_path() {
    if (const char* env = std::getenv("SHEHU_TABLE_PATH"); env && *env) return env;
    return SHEHU_DEFAULT_TABLE;
}

// ---------------------------------------------------------------- verification

namespace {

/// The value every column is adjudicated against at one grid point.
struct Target {
    GridPoint at;
    bool ok = false;
    long double value = 0;  // integral of exp(-s t/u) v(t), or the derived closed form
    std::string note;
};

/// Printed column, evaluated so that it is comparable with the transform integral I(s,u):
///   shehu P(s,u) ~ I;  natural u N(s,u) ~ I;  laplace L(s/u) with u kept ~ I;  sumudu (u/s) S(u/s) ~ I.
Complex normalized(const ImageExpr& P, Column c, long double s, long double u) {
    switch (c) {
        case Column::Shehu: return evaluate(P, s, u);
        case Column::Natural: return evaluate(P, s, u) * Complex(u);
        case Column::Laplace: return evaluate(P, s / u, u);
        case Column::Sumudu: return evaluate(P, s, u / s) * Complex(u / s);
    }
    return {};
}

PointCheck compare_point(const Target& tg, const std::function<Complex()>& value, long double tol, bool talbot = false) {
    PointCheck pc;
    pc.at = tg.at;
    if (!tg.ok) {
        pc.note = tg.note;
        return pc;
    }
    pc.numeric = tg.value;
    Complex z;
    try {
        z = value();
    } catch (const Error& e) {
        pc.verdict = Verdict::Fail;
        pc.note = std::string("cannot evaluate: ") + e.what();
        return pc;
    }
    pc.symbolic = z.real();
    pc.rel_err = talbot ? talbot_error(tg.value, z.real()) : relative_error(z.real(), tg.value);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        pc.verdict = Verdict::Fail;
        pc.note = "not finite";
    } else if (std::fabs(z.imag()) > tol * std::max(1.0L, std::fabs(z.real()))) {
        pc.verdict = Verdict::Fail;
        pc.note = "not real on the region of convergence";
    } else {
        pc.verdict = pc.rel_err <= tol ? Verdict::Pass : Verdict::Fail;
    }
    return pc;
}

std::optional<bool> exact_column_match(const ImageExpr& P, Column c, const TransformImage& V) {
    if (!V.is_rational() || P.has_functions()) return std::nullopt;
    const RationalFunction& f = V.rational;
    try {
        switch (c) {
            case Column::Shehu: {
                auto h = homogeneous_form(P);
                return h.u_power == 0 && h.f == f;
            }
            case Column::Natural: {
                auto h = homogeneous_form(P);
                return h.u_power == -1 && h.f == f;
            }
            case Column::Laplace: return univariate_form(P, ImageSym::S) == f;
            case Column::Sumudu:
                return univariate_form(P, ImageSym::U) ==
                       f.reciprocal_argument() / RationalFunction::variable();
        }
    } catch (const Error&) {
        return false;
    }
    return false;
}

View view_of(Column c) {
    switch (c) {
        case Column::Shehu: return View::Shehu;
        case Column::Natural: return View::Natural;
        case Column::Sumudu: return View::Sumudu;
        case Column::Laplace: return View::Laplace;
    }
    return View::Shehu;
}

int count(const std::vector<PointCheck>& pts, Verdict v) {
    int n = 0;
    for (const auto& p : pts) n += p.verdict == v;
    return n;
}

std::string describe_failure(const std::vector<PointCheck>& pts, const char* reference) {
    for (const auto& p : pts) {
        if (p.verdict != Verdict::Fail) continue;
        std::ostringstream o;
        o.precision(10);
        o << "at (s,u) = (" << static_cast<double>(p.at.s) << "," << static_cast<double>(p.at.u) << "): printed "
          << static_cast<double>(p.symbolic) << ", " << reference << " " << static_cast<double>(p.numeric);
        if (!p.note.empty()) o << " (" << p.note << ")";
        return o.str();
    }
    return {};
}

/// Decides a printed form from its exact comparison and its grid comparison.
Status decide(std::optional<bool> exact, const std::vector<PointCheck>& pts, bool rule_ok, std::string& detail) {
    const int fails = count(pts, Verdict::Fail), passes = count(pts, Verdict::Pass);
    if (exact) {
        if (*exact && fails == 0) return Status::Pass;
        if (*exact) {
            detail = "exact match but the grid disagrees";
            return Status::Fail;
        }
        if (fails == 0) {
            detail = "differs from the derived image but no grid point separates them";
            return Status::Fail;
        }
    } else if (fails == 0) {
        return passes > 0 ? Status::Pass : Status::Skipped;
    }
    if (!rule_ok) {
        detail = "printed form fails, but the derived image is not confirmed either";
        return Status::Fail;
    }
    return Status::ErrataConfirmed;
}

struct Derived {
    AtomSum atoms;
    TransformImage V;
    std::vector<Target> targets;
    Status rule = Status::Skipped;
    std::string rule_detail;
};

Derived derive(const std::string& time, const Instance& in, bool symbolic_only, const std::vector<GridPoint>& grid,
               long double tol) {
    Derived d;
    d.atoms = canonicalize(parse(time, in.constants));
    d.V = transform(d.atoms);
    GrowthBound g = exponential_order(d.atoms);
    long double margin = 0;
    for (const auto& st : d.atoms.specials())
        if (st.special.kind == SpecialKind::I0) margin = 1;

    std::vector<PointCheck> rule_points;
    for (const auto& p : grid) {
        Target tg;
        tg.at = p;
        const long double gap = g.order ? p.s / p.u - g.order->value() : 1.0L;
        if (gap <= 0 || gap < margin) {
            tg.note = gap <= 0 ? "outside the region of convergence" : "too close to the abscissa for I0";
            d.targets.push_back(tg);
            continue;
        }
        if (symbolic_only) {
            Complex z = d.V.eval(p.s, p.u);
            Complex z2 = d.V.eval(2 * p.s, 2 * p.u);
            tg.ok = std::isfinite(z.real()) && std::fabs(z.imag()) <= tol * std::max(1.0L, std::fabs(z.real())) &&
                    std::abs(z - z2) <= tol * std::max(1.0L, std::abs(z));
            tg.value = z.real();
            if (!tg.ok) {
                tg.note = "derived closed form is not real and homogeneous here";
                d.rule = Status::Fail;
                d.rule_detail = tg.note;
            }
        } else {
            try {
                tg.value = numeric_forward(d.atoms, p.s, p.u);
                tg.ok = true;
            } catch (const Error& e) {
                tg.note = e.what();
            }
        }
        d.targets.push_back(tg);
        if (!symbolic_only) rule_points.push_back(compare_point(tg, [&] { return d.V.eval(p.s, p.u); }, tol));
    }
    if (symbolic_only) {
        if (d.rule != Status::Fail) d.rule = Status::Pass;
        if (d.rule_detail.empty()) d.rule_detail = "closed form is real and homogeneous on the region of convergence";
    } else {
        std::string detail;
        d.rule = decide(std::nullopt, rule_points, true, detail);
        if (d.rule == Status::ErrataConfirmed) d.rule = Status::Fail;
        d.rule_detail = d.rule == Status::Fail ? describe_failure(rule_points, "quadrature")
                                               : "agrees with quadrature at " +
                                                     std::to_string(count(rule_points, Verdict::Pass)) + " points";
    }
    return d;
}

bool cross_consistent(const TableEntry& e, const Instance& in, const std::vector<Target>& targets) {
    std::vector<ImageExpr> cols;
    for (Column c : kColumns) cols.push_back(parse_image(e.printed(c), in.constants));
    for (const auto& tg : targets) {
        if (!tg.ok) continue;
        std::vector<Complex> vals;
        try {
            for (std::size_t i = 0; i < cols.size(); ++i) vals.push_back(normalized(cols[i], kColumns[i], tg.at.s, tg.at.u));
        } catch (const Error&) {
            return false;
        }
        for (const auto& z : vals)
            if (std::abs(z - vals.front()) > 1e-9L * std::max(1.0L, std::abs(vals.front()))) return false;
    }
    return true;
}

void add_erratum(std::vector<Erratum>& errata, Erratum e) {
    for (auto& x : errata) {
        if (x.location == e.location && x.column == e.column) {
            x.instances.insert(x.instances.end(), e.instances.begin(), e.instances.end());
            if (!e.derived.empty()) x.derived += "; " + e.derived;
            return;
        }
    }
    errata.push_back(std::move(e));
}

std::string with_label(const std::string& label, const std::string& text) {
    return label.empty() ? text : label + ": " + text;
}

Status combine(Status a, Status b) {
    auto rank = [](Status s) {
        switch (s) {
            case Status::Fail: return 3;
            case Status::ErrataConfirmed: return 2;
            case Status::Pass: return 1;
            case Status::Skipped: return 0;
        }
        return 0;
    };
    return rank(a) >= rank(b) ? a : b;
}

RowCheck check_row(const TableEntry& e, const std::vector<GridPoint>& grid, long double tol, std::vector<Erratum>& errata) {
    RowCheck rc;
    rc.row = e.row;
    rc.symbolic_only = e.symbolic_only;
    const char* reference = e.symbolic_only ? "derived closed form" : "quadrature";
    for (const auto& in : e.instances) {
        InstanceCheck ic;
        ic.label = in.label;
        Derived d;
        try {
            d = derive(e.time, in, e.symbolic_only, grid, tol);
        } catch (const Error& err) {
            ic.rule_status = Status::Fail;
            ic.rule_detail = err.what();
            rc.instances.push_back(ic);
            continue;
        }
        ic.derived_image = format_homogenized(d.V);
        ic.rule_status = d.rule;
        ic.rule_detail = d.rule_detail;
        ic.cross_column_consistent = cross_consistent(e, in, d.targets);
        for (Column c : kColumns) {
            ColumnCheck cc;
            cc.column = c;
            cc.printed = e.printed(c);
            cc.derived = format_image(d.V, view_of(c));
            ImageExpr P = parse_image(cc.printed, in.constants);
            cc.exact_match = exact_column_match(P, c, d.V);
            for (const auto& tg : d.targets)
                cc.points.push_back(compare_point(tg, [&] { return normalized(P, c, tg.at.s, tg.at.u); }, tol));
            cc.status = decide(cc.exact_match, cc.points, d.rule == Status::Pass, cc.detail);
            if (cc.status == Status::ErrataConfirmed) cc.detail = describe_failure(cc.points, reference);
            ic.columns.push_back(std::move(cc));
        }
        rc.instances.push_back(std::move(ic));
    }

    // An exact mismatch that this grid cannot separate at one instance is settled
    // by another instance of the same column where the oracle does separate it.
    for (std::size_t j = 0; j < std::size(kColumns); ++j) {
        const InstanceCheck* confirmed = nullptr;
        for (const auto& ic : rc.instances)
            if (!confirmed && j < ic.columns.size() && ic.columns[j].status == Status::ErrataConfirmed) confirmed = &ic;
        if (!confirmed) continue;
        const std::string confirmed_at = confirmed->label;
        for (auto& ic : rc.instances) {
            if (j >= ic.columns.size()) continue;
            auto& cc = ic.columns[j];
            if (cc.status == Status::Fail && cc.exact_match == false && count(cc.points, Verdict::Fail) == 0 &&
                ic.rule_status == Status::Pass) {
                cc.status = Status::ErrataConfirmed;
                cc.detail = "differs exactly; no grid point separates the forms here, confirmed numerically at " +
                            confirmed_at;
            }
        }
        Erratum er;
        er.location = "row " + std::to_string(e.row);
        er.row = e.row;
        er.column = kColumns[j];
        er.printed = e.printed(kColumns[j]);
        for (const auto& ic : rc.instances) {
            if (j >= ic.columns.size() || ic.columns[j].status != Status::ErrataConfirmed) continue;
            const auto& cc = ic.columns[j];
            if (!ic.label.empty()) er.instances.push_back(ic.label);
            auto append = [](std::string& to, const std::string& what) { to += (to.empty() ? "" : "; ") + what; };
            append(er.derived, with_label(ic.label, cc.derived));
            append(er.adjudication, with_label(ic.label, cc.detail));
        }
        errata.push_back(std::move(er));
    }

    for (const auto& ic : rc.instances) {
        rc.status = combine(rc.status, ic.rule_status == Status::Fail ? Status::Fail : Status::Skipped);
        for (const auto& cc : ic.columns) rc.status = combine(rc.status, cc.status);
        if (!ic.cross_column_consistent && rc.status == Status::Pass) rc.status = Status::Fail;
    }
    return rc;
}

ClaimCheck check_forward_claim(const Claim& cl, const std::vector<GridPoint>& grid, long double tol,
                               std::vector<Erratum>& errata) {
    ClaimCheck cc;
    cc.id = cl.id;
    cc.printed = cl.printed;
    for (const auto& in : cl.instances) {
        Derived d;
        try {
            d = derive(cl.time, in, false, grid, tol);
        } catch (const Error& err) {
            cc.status = Status::Fail;
            cc.adjudication = err.what();
            continue;
        }
        ImageExpr P = parse_image(cl.printed, in.constants);
        std::vector<PointCheck> pts;
        for (const auto& tg : d.targets) pts.push_back(compare_point(tg, [&] { return evaluate(P, tg.at.s, tg.at.u); }, tol));
        std::string detail;
        Status st = decide(exact_column_match(P, Column::Shehu, d.V), pts, d.rule == Status::Pass, detail);
        std::string derived = with_label(in.label, format_image(d.V));
        cc.derived = cc.derived.empty() ? derived : cc.derived + "; " + derived;
        if (st == Status::ErrataConfirmed) {
            detail = describe_failure(pts, "quadrature");
            add_erratum(errata, Erratum{cl.id, std::nullopt, std::nullopt, cl.printed, derived,
                                        in.label.empty() ? std::vector<std::string>{} : std::vector<std::string>{in.label},
                                        with_label(in.label, detail)});
        }
        if (!detail.empty() && cc.adjudication.empty()) cc.adjudication = with_label(in.label, detail);
        cc.status = combine(cc.status, st);
    }
    if (cc.status == Status::Pass) cc.adjudication = "printed image agrees with the derived image and with quadrature";
    return cc;
}

ClaimCheck check_inverse_claim(const Claim& cl, long double tol, std::vector<Erratum>& errata) {
    ClaimCheck cc;
    cc.id = cl.id;
    cc.printed = cl.printed;
    for (const auto& in : cl.instances) {
        ImageExpr P = parse_image(cl.image, in.constants);
        InverseResult inv;
        try {
            inv = invert_with_trace(normalize_image(P));
        } catch (const Error& err) {
            cc.status = Status::Fail;
            cc.adjudication = err.what();
            continue;
        }
        AtomSum printed = canonicalize(parse(cl.printed, in.constants));
        const bool exact = printed == inv.atoms;
        GrowthBound g = exponential_order(inv.atoms);
        const long double shift = std::max(0.0L, g.order ? g.order->value() : 0.0L);
        AtomEvaluator ev_printed(printed), ev_derived(inv.atoms);
        std::vector<PointCheck> printed_pts, derived_pts;
        for (long double t : {0.5L, 1.0L, 2.0L}) {
            Target tg;
            tg.at = {t, 1};
            try {
                tg.value = numeric_invert(P, t, 1, shift);
                tg.ok = true;
            } catch (const Error& e) {
                tg.note = e.what();
            }
            printed_pts.push_back(compare_point(tg, [&] { return Complex(ev_printed(t)); }, tol, true));
            derived_pts.push_back(compare_point(tg, [&] { return Complex(ev_derived(t)); }, tol, true));
        }
        std::string rule_detail;
        const bool rule_ok = decide(std::nullopt, derived_pts, true, rule_detail) == Status::Pass;
        std::string detail;
        Status st = decide(exact, printed_pts, rule_ok, detail);
        std::string derived = with_label(in.label, format(inv.expr));
        cc.derived = cc.derived.empty() ? derived : cc.derived + "; " + derived;
        if (st == Status::ErrataConfirmed) {
            for (const auto& p : printed_pts) {
                if (p.verdict != Verdict::Fail) continue;
                std::ostringstream o;
                o.precision(10);
                o << "at t = " << static_cast<double>(p.at.s) << ": printed " << static_cast<double>(p.symbolic)
                  << ", Talbot inversion " << static_cast<double>(p.numeric);
                detail = o.str();
                break;
            }
            add_erratum(errata, Erratum{cl.id, std::nullopt, std::nullopt, cl.printed, derived,
                                        in.label.empty() ? std::vector<std::string>{} : std::vector<std::string>{in.label},
                                        with_label(in.label, detail)});
        }
        if (!detail.empty() && cc.adjudication.empty()) cc.adjudication = with_label(in.label, detail);
        cc.status = combine(cc.status, st);
    }
    if (cc.status == Status::Pass) cc.adjudication = "printed inverse equals the partial-fraction inverse and the Talbot values";
    return cc;
}

}  // namespace

int TableReport::rows_rule_verified() const {
    int n = 0;
    for (const auto& r : rows) {
        if (r.symbolic_only || r.instances.empty()) continue;
        bool ok = true;
        for (const auto& i : r.instances) ok = ok && i.rule_status == Status::Pass;
        n += ok;
    }
    return n;
}

int TableReport::failures() const {
    int n = 0;
    for (const auto& r : rows) n += r.status == Status::Fail;
    for (const auto& c : claims) n += c.status == Status::Fail;
    return n;
}

TableReport verify_table(const Table& table, const std::vector<GridPoint>& grid, long double tol) {
    TableReport rep;
    for (const auto& e : table.entries) rep.rows.push_back(check_row(e, grid, tol, rep.errata));
    for (const auto& c : table.claims)
        rep.claims.push_back(c.inverse ? check_inverse_claim(c, tol, rep.errata) : check_forward_claim(c, grid, tol, rep.errata));
    return rep;
}

}  // namespace shehu
