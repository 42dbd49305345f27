// One line per acceptance criterion: "PASS <n> ..." or "FAIL <n> ...".

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "shehu/oracle.hpp"
#include "shehu/solvers.hpp"
#include "shehu/table.hpp"
#include "support/generators.hpp"

using namespace shehu;

namespace {

int failed = 0;

/// Runs a check; a thrown Error counts as a failure and its message becomes the detail.
void criterion(int n, const std::string& title, const std::function<bool(std::ostringstream&)>& check) {
    std::ostringstream detail;
    bool ok = false;
    try {
        ok = check(detail);
    } catch (const std::exception& e) {
        detail << "raised " << e.what();
    }
    if (!ok) ++failed;
    std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", n, title.c_str(), detail.str().c_str());
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

AtomSum canon(const std::string& s) { return canonicalize(parse(s)); }

Coeff initial_value(const AtomSum& v, int k) {
    AtomSum d = v;
    for (int i = 0; i < k; ++i) d = differentiate(d, Var::T);
    AtomSum at0 = at_zero(d, Var::T);
    return at0.is_zero() ? Coeff() : at0.atoms().front().coeff;
}

bool worked_odes(std::ostringstream& out) {
    const struct {
        const char *eq, *init, *want;
    } cases[] = {
        {"v' + v = 0", "v(0)=1", "exp(-t)"},
        {"v'' + v' = 1", "v(0)=0, v'(0)=0", "-1 + t + exp(-t)"},
        {"v'' - 3*v' + 2*v = exp(3*t)", "v(0)=1, v'(0)=0", "(5/2)*exp(t) - 2*exp(2*t) + (1/2)*exp(3*t)"},
    };
    bool ok = true;
    for (const auto& c : cases) {
        auto t0 = std::chrono::steady_clock::now();
        Solution s = solve_ivp(parse_ivp(c.eq, c.init));
        const double dt = seconds_since(t0);
        const bool match = s.atoms == canon(c.want);
        ok = ok && match && dt < 1.0;
        out << format(s.atoms) << (match ? "" : " (mismatch)") << " in " << dt << " s; ";
    }
    return ok;
}

bool example4(std::ostringstream& out) {
    IVProblem p = parse_ivp("v'' + 2*v' + 5*v = exp(-t)*sin(t)", "v(0)=0, v'(0)=1");
    Solution s = solve_ivp(p);
    const bool match = s.atoms == canon("(1/3)*exp(-t)*sin(t) + (1/3)*exp(-t)*sin(2*t)");
    const long double res = residual(p, s.expr).max();
    const bool inits = initial_value(s.atoms, 0) == Coeff() && initial_value(s.atoms, 1) == Coeff(1);
    AtomSum printed = canon("(1/3)*exp(-t)*sin(t) + (2/3)*exp(-t)*sin(2*t)");
    const Coeff printed_v1 = initial_value(printed, 1);
    const long double printed_res = residual(p, embed(printed)).max();

    bool in_errata = false;
    for (const auto& e : verify_table(load_table(SHEHU_FIXTURE)).errata)
        in_errata = in_errata || e.location == "example-4-solution";

    out << "solver " << format(s.atoms) << ", residual " << (double)res << ", exact initial data "
        << (inits ? "yes" : "no") << "; printed form v'(0) = " << printed_v1.str() << ", residual "
        << (double)printed_res << ", in errata report: " << (in_errata ? "yes" : "no");
    return match && res <= 1e-9L && inits && printed_v1 == gen::frac(5, 3) && printed_res >= 0.1L && in_errata;
}

bool pde_examples(std::ostringstream& out) {
    ModalPDEProblem heat;
    heat.initial = canon("3*sin(2*pi*x)");
    ModalPDEProblem wave;
    wave.kind = PDEKind::Wave;
    wave.forcing = canon("sin(pi*x)");

    bool ok = true;
    for (auto [p, want] : {std::pair{&heat, "3*exp(-4*pi^2*t)*sin(2*pi*x)"},
                           std::pair{&wave, "(1/pi^2)*(1 - cos(pi*t))*sin(pi*x)"}}) {
        Solution s = solve_pde(*p);
        const bool match = s.atoms == canon(want);
        const bool boundary = at_zero(s.atoms, Var::X).is_zero() && at_point(s.atoms, Var::X, p->length).is_zero();
        bool initial = at_zero(s.atoms, Var::T) == p->initial;
        if (p->kind == PDEKind::Wave) initial = initial && at_zero(differentiate(s.atoms, Var::T), Var::T) == p->velocity;
        const long double res = residual(*p, s.expr).max();
        ok = ok && match && boundary && initial && res <= 1e-9L;
        out << format(s.atoms) << (match ? "" : " (mismatch)") << ", boundary " << (boundary ? "exact" : "violated")
            << ", initial " << (initial ? "exact" : "violated") << ", residual " << (double)res << "; ";
    }
    return ok;
}

using Pair = std::pair<int, Column>;

const std::set<Pair> kFrozenRowErrata = {
    {6, Column::Shehu},    {6, Column::Natural},  {6, Column::Sumudu},   {6, Column::Laplace},  {9, Column::Laplace},
    {11, Column::Natural}, {11, Column::Sumudu},  {11, Column::Laplace}, {13, Column::Sumudu},  {13, Column::Laplace},
    {15, Column::Sumudu},  {16, Column::Shehu},   {16, Column::Natural}, {16, Column::Sumudu},  {16, Column::Laplace},
    {20, Column::Sumudu},  {23, Column::Shehu},   {24, Column::Shehu},   {24, Column::Natural}, {24, Column::Sumudu},
    {24, Column::Laplace}, {28, Column::Natural}, {28, Column::Sumudu},  {30, Column::Shehu},   {30, Column::Natural},
    {30, Column::Sumudu},  {30, Column::Laplace}, {34, Column::Shehu},
};
const std::set<std::string> kFrozenClaimErrata = {"property-2", "property-16", "property-17",
                                                  "example-4-derivative-rule", "example-4-solution"};

struct TableRun {
    TableReport report;
    double seconds = 0;
};

const TableRun& table_run() {
    static const TableRun run = [] {
        auto t0 = std::chrono::steady_clock::now();
        TableRun r{verify_table(load_table(SHEHU_FIXTURE), default_grid()), 0};
        r.seconds = seconds_since(t0);
        return r;
    }();
    return run;
}

bool errata_pair(const TableReport& rep, int row, Column c) {
    for (const auto& e : rep.errata)
        if (e.row == row && e.column == c) return true;
    return false;
}

bool golden_table(std::ostringstream& out) {
    const TableRun& run = table_run();
    const TableReport& rep = run.report;

    std::set<Pair> rows;
    std::set<std::string> claims;
    bool confirmed = true;
    for (const auto& e : rep.errata) {
        if (e.row) rows.insert({*e.row, *e.column});
        else claims.insert(e.location);
        confirmed = confirmed && !e.adjudication.empty();
    }
    for (const auto& r : rep.rows)
        for (const auto& i : r.instances)
            for (const auto& c : i.columns)
                if (c.status == Status::Fail) confirmed = false;

    // printed columns that are not errata must match the derived forms exactly
    int identities = 0, broken = 0;
    for (const auto& r : rep.rows)
        for (const auto& i : r.instances)
            for (const auto& c : i.columns) {
                if (!c.exact_match || errata_pair(rep, r.row, c.column)) continue;
                ++identities;
                broken += !*c.exact_match;
            }

    const bool named = errata_pair(rep, 16, Column::Shehu) && errata_pair(rep, 34, Column::Shehu) &&
                       errata_pair(rep, 6, Column::Shehu) && errata_pair(rep, 13, Column::Sumudu) &&
                       claims.count("property-16") && claims.count("property-2");
    out << rep.rows_rule_verified() << "/35 rows verified by quadrature, " << identities
        << " exact column identities (" << broken << " broken), " << rows.size() << " row errata + " << claims.size()
        << " claim errata, failures " << rep.failures() << ", " << run.seconds << " s";
    return rep.rows_rule_verified() >= 28 && broken == 0 && rows == kFrozenRowErrata && claims == kFrozenClaimErrata &&
           named && confirmed && rep.failures() == 0 && run.seconds < 60;
}

bool round_trips(std::ostringstream& out) {
    gen::Engine g(5);
    int a = 0, b = 0;
    for (int i = 0; i < 200; ++i) {
        RationalFunction f = gen::proper_image(g);
        a += transform(invert_with_trace({f, 0}).atoms).rational == f;
    }
    for (int i = 0; i < 200; ++i) {
        AtomSum v = gen::atom_sum(g);
        b += invert_with_trace({transform(v).rational, 0}).atoms == v;
    }
    out << "transform(invert) " << a << "/200, invert(transform) " << b << "/200";
    return a == 200 && b == 200;
}

bool derivative_theorem(std::ostringstream& out) {
    gen::Engine g(6);
    int ok = 0;
    for (int i = 0; i < 100; ++i) {
        AtomSum v = AtomSum::single(gen::atom(g));
        for (int n = 1; n <= 3; ++n) {
            std::vector<Coeff> inits;
            for (int k = 0; k < n; ++k) inits.push_back(initial_value(v, k));
            AtomSum d = v;
            for (int k = 0; k < n; ++k) d = differentiate(d, Var::T);
            ok += derivative_image(n, transform(v), inits).rational == transform(d).rational;
        }
    }
    out << ok << "/300 exact (100 atoms, n = 1, 2, 3)";
    return ok == 300;
}

bool talbot(std::ostringstream& out) {
    const long double e = numeric_invert(parse_image("u/(s - u)"), 1);
    const long double err = std::fabs(e - std::exp(1.0L));
    gen::Engine g(7);
    gen::AtomLimits lim;
    lim.max_rate = 2;
    long double worst = 0;
    for (int i = 0; i < 50; ++i) {
        AtomSum v = AtomSum::single(gen::atom(g, lim));
        TransformImage V = transform(v);
        AtomEvaluator ev(v);
        for (long double t : {0.5L, 1.0L, 2.0L}) worst = std::max(worst, talbot_error(numeric_invert(V, t), ev(t)));
    }
    out << "u/(s - u) at t = 1 off by " << (double)err << ", worst round trip over 50 atoms " << (double)worst;
    return err <= 1e-6L && worst <= 1e-6L;
}

bool conversions(std::ostringstream& out) {
    // u = 1 gives the Laplace column, (1, u)/u gives the Sumudu column
    const TableReport& rep = table_run().report;
    int exact = 0, numeric = 0, errata = 0, bad = 0;
    for (const auto& r : rep.rows)
        for (const auto& i : r.instances)
            for (const auto& c : i.columns) {
                if (c.column != Column::Laplace && c.column != Column::Sumudu) continue;
                if (errata_pair(rep, r.row, c.column)) {
                    ++errata;
                } else if (c.exact_match) {
                    *c.exact_match ? ++exact : ++bad;
                } else {
                    c.status == Status::Pass ? ++numeric : ++bad;
                }
            }
    out << exact << " exact, " << numeric << " closed forms beyond rational agree on the grid, " << errata
        << " listed errata, " << bad << " unexplained";
    return bad == 0;
}

}  // namespace

int main() {
    criterion(1, "worked ODE examples", worked_odes);
    criterion(2, "damped oscillator adjudication", example4);
    criterion(3, "heat and wave examples", pde_examples);
    criterion(4, "golden table", golden_table);
    criterion(5, "round trips", round_trips);
    criterion(6, "derivative theorem", derivative_theorem);
    criterion(7, "Talbot oracle", talbot);
    criterion(8, "view conversions", conversions);
    return failed == 0 ? 0 : 1;
}
