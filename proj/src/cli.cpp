#include "liftgeom/cli.hpp"

#include "liftgeom/errors.hpp"
#include "liftgeom/json_io.hpp"
#include "liftgeom/witt.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <deque>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace liftgeom {

namespace {

struct Options {
    std::string op;
    std::vector<std::string> operands;
    std::int64_t p = 0;
    std::int64_t n = 0;
    std::int64_t big_n = 0;
    std::int64_t m = 0;
    std::int64_t bound = 0;
    std::int64_t cone = 0;
    std::int64_t degree = -1;
    std::int64_t multiplier = 1;
    std::string fan;
    std::string div;
    std::string desc;
    std::string line;
    std::string branch;
    std::string evidence = "torus-invariant";
    bool cech = false;
    bool validate_only = false;
};

// Owns the documents that parsed fields point into.
class Inputs {
public:
    JsonField load(const std::string& arg, const std::string& flag)
    {
        auto first = arg.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[' || arg[first] == '"')) {
            docs_.emplace_back(flag, arg);
        } else {
            std::ifstream in(arg, std::ios::binary);
            if (arg.empty() || !std::filesystem::is_regular_file(arg) || !in)
                throw InputError(flag + ": cannot read file \"" + arg + "\"");
            std::ostringstream text;
            text << in.rdbuf();
            docs_.emplace_back(arg, text.str());
        }
        return JsonField(docs_.back());
    }

    Fan fan(const std::string& arg)
    {
        if (arg.empty())
            throw InputError("--fan is required");
        auto first = arg.find_first_not_of(" \t\r\n");
        bool json = first != std::string::npos && arg[first] == '{';
        if (!json && !std::filesystem::exists(arg))
            return builtin_fan(arg);
        return read_fan(load(arg, "--fan"));
    }

    ToricDivisor divisor(const std::string& arg, const std::string& flag, const ToricVariety& x)
    {
        auto f = load(required(arg, flag), flag);
        auto q = read_qdivisor(f);
        try {
            return ToricDivisor::from_qdivisor(q, x.num_rays());
        } catch (const InputError& e) {
            f.fail(e.what());
        }
    }

    QDivisor qdivisor(const std::string& arg, const std::string& flag)
    {
        return read_qdivisor(load(required(arg, flag), flag));
    }

    static const std::string& required(const std::string& arg, const std::string& flag)
    {
        if (arg.empty())
            throw InputError(flag + " is required");
        return arg;
    }

private:
    std::deque<JsonDocument> docs_;
};

struct Outcome {
    std::string status = "ok";
    Json body = Json::object();
    int code = exit_ok;
};

Outcome ok(Json body)
{
    return {"ok", std::move(body), exit_ok};
}

Outcome verdict(bool passed, Json body)
{
    return passed ? ok(std::move(body)) : Outcome{"check-failed", std::move(body), exit_check_failed};
}

Outcome validated()
{
    return ok(Json{{"valid", true}});
}

PrimeP prime_option(std::int64_t p)
{
    if (p == 0)
        throw InputError("-p is required");
    return PrimeP(p);
}

std::size_t length_option(std::int64_t n, const char* flag)
{
    if (n < 1 || n > 64)
        throw InputError(std::string(flag) + " must be between 1 and 64");
    return static_cast<std::size_t>(n);
}

WittVector witt_operand(const std::string& text, PrimeP p, std::size_t n)
{
    auto w = parse_witt(text, p);
    if (w.length() != n)
        throw InputError("Witt vector \"" + text + "\" has " + std::to_string(w.length()) + " coordinates, expected "
                         + std::to_string(n));
    return w;
}

void expect_operands(const Options& o, std::size_t count)
{
    if (o.operands.size() != count)
        throw InputError("witt " + o.op + " takes " + std::to_string(count) + " operand(s), got "
                         + std::to_string(o.operands.size()));
}

Outcome run_witt(const Options& o)
{
    auto p = prime_option(o.p);
    auto n = length_option(o.n, "-n");
    Json body{{"p", p.value()}, {"n", n}};
    if (o.op == "teich") {
        expect_operands(o, 1);
        std::int64_t x = 0;
        try {
            std::size_t used = 0;
            x = std::stoll(o.operands[0], &used);
            if (used != o.operands[0].size())
                throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw InputError("teich expects an integer, got \"" + o.operands[0] + "\"");
        }
        if (o.validate_only)
            return validated();
        body["result"] = format_witt(teichmuller(x, p, n));
        return ok(body);
    }
    bool binary = o.op == "add" || o.op == "mul" || o.op == "sub";
    expect_operands(o, binary ? 2 : 1);
    auto a = witt_operand(o.operands[0], p, n);
    auto b = binary ? witt_operand(o.operands[1], p, n) : a;
    if (o.op == "restrict")
        length_option(o.m, "-m");
    if (o.op == "restrict" && static_cast<std::size_t>(o.m) > n)
        throw InputError("-m must not exceed -n");
    if (o.validate_only)
        return validated();

    if (o.op == "add")
        body["result"] = format_witt(a + b);
    else if (o.op == "sub")
        body["result"] = format_witt(a - b);
    else if (o.op == "mul")
        body["result"] = format_witt(a * b);
    else if (o.op == "neg")
        body["result"] = format_witt(-a);
    else if (o.op == "shift")
        body["result"] = format_witt(verschiebung(a));
    else if (o.op == "restrict")
        body["result"] = format_witt(restriction(a, static_cast<std::size_t>(o.m)));
    else if (o.op == "frob")
        body["result"] = format_witt(frobenius(a));
    else if (o.op == "zmod") {
        Integer modulus;
        mpz_ui_pow_ui(modulus.get_mpz_t(), p.value(), n);
        body["result"] = to_json(to_zmod(a));
        body["modulus"] = to_json(modulus);
    }
    return ok(body);
}

unsigned bound_option(std::int64_t bound, std::int64_t fallback, std::int64_t hi)
{
    if (bound == 0)
        return static_cast<unsigned>(fallback);
    if (bound < 1 || bound > hi)
        throw InputError("--bound must be between 1 and " + std::to_string(hi));
    return static_cast<unsigned>(bound);
}

Outcome run_divisor(const Options& o, Inputs& in)
{
    auto d = in.qdivisor(o.div, "--div");
    Json body{{"input", to_json(d)}};
    if (o.op == "floor" || o.op == "ceil" || o.op == "frac") {
        if (o.validate_only)
            return validated();
        body["result"] = to_json(o.op == "floor" ? round_down(d) : o.op == "ceil" ? round_up(d) : frac_part(d));
        return ok(body);
    }
    auto p = prime_option(o.p);
    auto bound = bound_option(o.bound, default_perturbation_bound, 100000);
    if (o.validate_only)
        return validated();
    if (o.op == "check") {
        auto report = check_kummer_hypotheses(d, p);
        body["report"] = to_json(report);
        return verdict(report.pass, body);
    }
    auto q = perturb_coeffs(d, p, bound);
    body["bound"] = bound;
    body["result"] = to_json(q);
    body["report"] = to_json(check_kummer_hypotheses(q, p));
    return ok(body);
}

Outcome run_fan(const Options& o, Inputs& in)
{
    auto fan = in.fan(o.fan);
    if (o.op == "validate") {
        if (o.validate_only)
            return validated();
        auto report = validate_fan(fan);
        return verdict(report.ok(), Json{{"fan", to_json(fan)}, {"validation", to_json(report)}});
    }
    ToricVariety x(fan);
    if (o.op == "canonical") {
        if (o.validate_only)
            return validated();
        return ok(Json{{"canonical", to_json(canonical_divisor(x))}});
    }
    if (o.op == "classgroup") {
        if (o.validate_only)
            return validated();
        // div(chi^{e_k}) = sum_rho <e_k, v_rho> D_rho
        Json relations = Json::array();
        for (int k = 0; k < x.dim(); ++k) {
            IntVector row;
            for (const auto& v : x.fan().rays)
                row.push_back(v[static_cast<std::size_t>(k)]);
            relations.push_back(row);
        }
        return ok(Json{{"rank", class_group_rank(x)}, {"generators", x.num_rays()}, {"relations", relations}});
    }
    if (o.op == "blowup") {
        if (o.cone < 0 || static_cast<std::size_t>(o.cone) >= x.num_cones())
            throw InputError("--cone must index a maximal cone below " + std::to_string(x.num_cones()));
        if (o.validate_only)
            return validated();
        auto blown = blowup_fixed_point(fan, static_cast<std::size_t>(o.cone));
        return ok(Json{{"fan", to_json(blown)}, {"validation", to_json(validate_fan(blown))}});
    }
    auto d = in.divisor(o.div, "--div", x);
    if (o.validate_only)
        return validated();
    return ok(Json{{"divisor", to_json(d)}, {"nef", is_nef(x, d)}, {"ample", is_ample(x, d)}});
}

Outcome run_cohom(const Options& o, Inputs& in)
{
    ToricVariety x(in.fan(o.fan));
    auto d = in.divisor(o.div, "--div", x);
    if (!d.is_integral())
        throw InputError("cohomology needs an integral divisor");
    if (o.validate_only)
        return validated();
    Json body = to_json(cohomology(x, d));
    if (o.cech)
        body["cech"] = cech_cohomology(x, d);
    return ok(body);
}

SmoothnessEvidence evidence_option(const Options& o, Inputs& in, const ToricVariety& x, PrimeP p)
{
    if (o.evidence == "torus-invariant")
        return SmoothnessEvidence::torus_invariant();
    if (o.evidence == "fermat")
        return SmoothnessEvidence::fermat(x.dim(), o.degree >= 0 ? o.degree : o.big_n, p.value());
    if (o.evidence.rfind("asserted:", 0) == 0)
        return SmoothnessEvidence::user_asserted(o.evidence.substr(9));
    return read_evidence(in.load(o.evidence, "--evidence"));
}

Outcome run_cover(const Options& o, Inputs& in)
{
    ToricVariety x(in.fan(o.fan));
    auto p = prime_option(o.p);
    if (o.op == "cyclic") {
        auto l = in.divisor(o.line, "--line", x);
        auto d = in.divisor(o.branch, "--branch", x);
        auto evidence = evidence_option(o, in, x, p);
        if (o.validate_only)
            return validated();
        auto plan = plan_cyclic_cover(x, l, o.big_n, d, p, evidence);
        return ok(Json{{"plan", to_json(plan)}, {"hurwitz", to_json(hurwitz_canonical(plan))}});
    }
    auto d = in.qdivisor(o.div, "--div");
    ToricDivisor::from_qdivisor(d, x.num_rays());
    auto scan = o.bound == 0 ? default_ample_scan_bound : static_cast<int>(bound_option(o.bound, 0, 8));
    if (o.multiplier < 1)
        throw InputError("--multiplier must be >= 1");
    if (o.validate_only)
        return validated();
    auto plan = plan_kummer_cover(x, d, p, Integer(std::to_string(o.multiplier)), scan);
    auto pullback = pullback_divisor(plan, d);
    return verdict(pullback.integral, Json{{"plan", to_json(plan)}, {"pullback", to_json(pullback)}});
}

Outcome run_lift(const Options& o, Inputs& in)
{
    if (o.op == "classify") {
        auto v = read_description(in.load(Inputs::required(o.desc, "--desc"), "--desc"));
        if (o.validate_only)
            return validated();
        auto cert = classify(*v);
        Json body{{"description", to_json(*v)}, {"certificate", to_json(cert)}};
        if (cert.derivation)
            body["replayed"] = to_string(replay(*cert.derivation));
        return ok(body);
    }
    ToricVariety x(in.fan(o.fan));
    if (o.op == "surject") {
        auto d = in.divisor(o.div, "--div", x);
        int levels = o.n == 0 ? default_lift_levels : static_cast<int>(length_option(o.n, "-n"));
        if (!d.is_integral())
            throw InputError("restriction surjectivity needs an integral divisor");
        if (o.validate_only)
            return validated();
        auto cert = restriction_surjectivity(x, d, levels);
        return verdict(cert.status != SurjectivityCertificate::Status::Inconclusive, to_json(cert));
    }
    auto bound = static_cast<int>(bound_option(o.bound, default_sweep_bound, 20));
    if (o.validate_only)
        return validated();
    return ok(to_json(strong_liftability_sweep(x, bound)));
}

Outcome run_kv(const Options& o, Inputs& in)
{
    ToricVariety x(in.fan(o.fan));
    auto d = in.divisor(o.div, "--div", x);
    auto p = prime_option(o.p);
    auto bound = bound_option(o.bound, default_perturbation_bound, 100000);
    if (o.validate_only)
        return validated();
    auto report = kv_vanishing(x, d, p, bound);
    return verdict(report.pass, to_json(report));
}

int emit(std::ostream& out, const std::string& command, const Outcome& r)
{
    out << dump_report(make_report(command, r.status, r.body));
    return r.code;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Witt vectors, toric line-bundle cohomology, cover planning and liftability certificates",
                 "liftgeom"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* s) { s->add_flag("--validate-only", o.validate_only, "Parse and check inputs only"); };
    auto add_fan = [&](CLI::App* s) {
        s->add_option("--fan", o.fan, "Built-in name (P<n>, P1xP1, F<n>, Bl1P2), fan JSON, or a JSON file");
    };
    auto add_div = [&](CLI::App* s, const char* help) { s->add_option("--div", o.div, help); };

    auto* witt = app.add_subcommand("witt", "Arithmetic in W_n(F_p)");
    witt->add_option("op", o.op)->required()->check(
        CLI::IsMember({"add", "sub", "mul", "neg", "shift", "restrict", "teich", "frob", "zmod"}));
    witt->add_option("operands", o.operands, "Comma-separated coordinates a_0,a_1,...");
    witt->add_option("-p", o.p, "Prime")->required();
    witt->add_option("-n", o.n, "Length")->required();
    witt->add_option("-m", o.m, "Target length for restrict");
    add_common(witt);

    auto* divisor = app.add_subcommand("divisor", "Q-divisor rounding and Kummer hypotheses");
    divisor->add_option("op", o.op)->required()->check(CLI::IsMember({"floor", "ceil", "frac", "check", "perturb"}));
    add_div(divisor, "Q-divisor JSON {label: \"num/den\"} or a JSON file");
    divisor->add_option("-p", o.p, "Prime");
    divisor->add_option("--bound", o.bound, "Denominator bound for perturb");
    add_common(divisor);

    auto* fan = app.add_subcommand("fan", "Fan validation and divisor classes");
    fan->add_option("op", o.op)->required()->check(
        CLI::IsMember({"validate", "canonical", "classgroup", "blowup", "ample"}));
    add_fan(fan);
    add_div(fan, "Divisor keyed by ray index");
    fan->add_option("--cone", o.cone, "Maximal cone to blow up");
    add_common(fan);

    auto* cohom = app.add_subcommand("cohom", "Cohomology of O(D) on a smooth complete toric variety");
    add_fan(cohom);
    add_div(cohom, "Integral divisor keyed by ray index");
    cohom->add_flag("--cech", o.cech, "Also run the Cech complex route");
    add_common(cohom);

    auto* cover = app.add_subcommand("cover", "Cyclic and Kummer cover planning");
    cover->add_option("op", o.op)->required()->check(CLI::IsMember({"cyclic", "kummer"}));
    add_fan(cover);
    add_div(cover, "Q-divisor keyed by ray index (kummer)");
    cover->add_option("-N", o.big_n, "Degree of the cyclic cover");
    cover->add_option("-p", o.p, "Characteristic");
    cover->add_option("--line", o.line, "Divisor in the class of L (cyclic)");
    cover->add_option("--branch", o.branch, "Branch divisor D (cyclic)");
    cover->add_option("--evidence", o.evidence,
                      "torus-invariant, fermat, asserted:<note>, or evidence JSON");
    cover->add_option("--degree", o.degree, "Fermat degree (default N)");
    cover->add_option("--multiplier", o.multiplier, "Multiply m by this factor (kummer)");
    cover->add_option("--bound", o.bound, "Scan bound for M (kummer)");
    add_common(cover);

    auto* lift = app.add_subcommand("lift", "Liftability certificates");
    lift->add_option("op", o.op)->required()->check(CLI::IsMember({"classify", "surject", "sweep"}));
    lift->add_option("--desc", o.desc, "Variety description JSON or file");
    add_fan(lift);
    add_div(lift, "Integral divisor keyed by ray index");
    lift->add_option("-n", o.n, "Number of lifting levels (surject)");
    lift->add_option("--bound", o.bound, "Coefficient bound (sweep)");
    add_common(lift);

    auto* kv = app.add_subcommand("kv-check", "Vanishing of H^i(K_X + round_up(D)) for ample D");
    add_fan(kv);
    add_div(kv, "Ample Q-divisor keyed by ray index");
    kv->add_option("-p", o.p, "Characteristic")->required();
    kv->add_option("--bound", o.bound, "Denominator bound for perturbation");
    add_common(kv);

    std::string command = "liftgeom";
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "liftgeom: " << e.what() << "\n";
        return emit(out, command, {"input-error", Json{{"message", e.what()}}, exit_invalid_input});
    }

    auto* sub = app.get_subcommands().front();
    command = sub->get_name() + (o.op.empty() ? "" : " " + o.op);
    Inputs in;
    try {
        Outcome r;
        if (sub == witt)
            r = run_witt(o);
        else if (sub == divisor)
            r = run_divisor(o, in);
        else if (sub == fan)
            r = run_fan(o, in);
        else if (sub == cohom)
            r = run_cohom(o, in);
        else if (sub == cover)
            r = run_cover(o, in);
        else if (sub == lift)
            r = run_lift(o, in);
        else
            r = run_kv(o, in);
        return emit(out, command, r);
    } catch (const InputError& e) {
        err << "liftgeom: " << e.what() << "\n";
        return emit(out, command, {"input-error", Json{{"message", e.what()}}, exit_invalid_input});
    } catch (const HypothesisViolation& e) {
        err << "liftgeom: " << e.what() << "\n";
        return emit(out, command,
                    {"hypothesis-violation", Json{{"message", e.what()}, {"checks", to_json(e.checks())}},
                     exit_check_failed});
    } catch (const std::exception& e) {
        err << "liftgeom: internal error: " << e.what() << "\n";
        return emit(out, command, {"internal-error", Json{{"message", e.what()}}, exit_internal});
    }
}

} // namespace liftgeom
