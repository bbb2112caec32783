#include "liftgeom/json_io.hpp"

#include "liftgeom/errors.hpp"

#include <algorithm>
#include <limits>

namespace liftgeom {

namespace {

int line_at(const std::string& text, std::size_t pos)
{
    pos = std::min(pos, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

} // namespace

JsonDocument::JsonDocument(std::string source, std::string text) : source_(std::move(source)), text_(std::move(text))
{
    try {
        root_ = Json::parse(text_);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(source_ + ":" + std::to_string(line_at(text_, e.byte > 0 ? e.byte - 1 : 0))
                         + ": invalid JSON: " + e.what());
    }
}

int JsonDocument::line_of(const std::vector<std::string>& keys) const
{
    std::size_t pos = 0;
    std::size_t found = 0;
    for (const auto& k : keys) {
        auto at = text_.find("\"" + k + "\"", pos);
        if (at == std::string::npos)
            break;
        found = at;
        pos = at + k.size() + 2;
    }
    return line_at(text_, found);
}

JsonField::JsonField(const JsonDocument& doc) : JsonField(&doc, &doc.root(), "", {}) {}

JsonField::JsonField(const JsonDocument* doc, const Json* node, std::string path, std::vector<std::string> keys)
    : doc_(doc), node_(node), path_(std::move(path)), keys_(std::move(keys))
{
}

void JsonField::fail(const std::string& message) const
{
    throw InputError(doc_->source() + ":" + std::to_string(doc_->line_of(keys_)) + ": field \""
                     + (path_.empty() ? "(root)" : path_) + "\": " + message);
}

bool JsonField::has(const std::string& key) const
{
    return node_->is_object() && node_->contains(key);
}

JsonField JsonField::operator[](const std::string& key) const
{
    if (!node_->is_object())
        fail("expected an object");
    auto it = node_->find(key);
    auto keys = keys_;
    keys.push_back(key);
    std::string path = path_.empty() ? key : path_ + "." + key;
    if (it == node_->end())
        JsonField(doc_, node_, path, keys_).fail("missing");
    return JsonField(doc_, &*it, std::move(path), std::move(keys));
}

JsonField JsonField::operator[](std::size_t index) const
{
    if (!node_->is_array())
        fail("expected an array");
    if (index >= node_->size())
        fail("index " + std::to_string(index) + " out of range");
    return JsonField(doc_, &(*node_)[index], path_ + "[" + std::to_string(index) + "]", keys_);
}

std::size_t JsonField::size() const
{
    if (!node_->is_array())
        fail("expected an array");
    return node_->size();
}

std::vector<std::string> JsonField::keys() const
{
    if (!node_->is_object())
        fail("expected an object");
    std::vector<std::string> out;
    for (auto it = node_->begin(); it != node_->end(); ++it)
        out.push_back(it.key());
    return out;
}

std::int64_t JsonField::as_int() const
{
    if (!node_->is_number_integer())
        fail("expected an integer");
    if (node_->is_number_unsigned() && node_->get<std::uint64_t>() > std::numeric_limits<std::int64_t>::max())
        fail("integer out of range");
    return node_->get<std::int64_t>();
}

std::string JsonField::as_string() const
{
    if (!node_->is_string())
        fail("expected a string");
    return node_->get<std::string>();
}

Rational JsonField::as_rational() const
{
    if (node_->is_number_integer())
        return Rational(Integer(std::to_string(as_int())));
    if (!node_->is_string())
        fail("expected an integer or a \"num/den\" string");
    try {
        return parse_rational(node_->get<std::string>());
    } catch (const InputError& e) {
        fail(e.what());
    }
}

IntVector JsonField::as_int_vector() const
{
    IntVector out;
    for (std::size_t i = 0; i < size(); ++i)
        out.push_back((*this)[i].as_int());
    return out;
}

Fan read_fan(const JsonField& f)
{
    try {
        if (f.value().is_string())
            return builtin_fan(f.as_string());
        auto dim = f["dim"].as_int();
        if (dim < 1 || dim > 16)
            f["dim"].fail("dimension must be between 1 and 16");
        auto rays_field = f["rays"];
        std::vector<IntVector> rays;
        for (std::size_t i = 0; i < rays_field.size(); ++i)
            rays.push_back(rays_field[i].as_int_vector());
        auto cones_field = f["max_cones"];
        std::vector<std::vector<int>> cones;
        for (std::size_t i = 0; i < cones_field.size(); ++i) {
            std::vector<int> cone;
            for (auto c : cones_field[i].as_int_vector()) {
                if (c < 0 || static_cast<std::size_t>(c) >= rays.size())
                    cones_field[i].fail("ray index " + std::to_string(c) + " out of range");
                cone.push_back(static_cast<int>(c));
            }
            cones.push_back(std::move(cone));
        }
        return make_fan(static_cast<int>(dim), std::move(rays), std::move(cones));
    } catch (const InputError& e) {
        std::string what = e.what();
        if (what.find(": field \"") != std::string::npos)
            throw;
        f.fail(what);
    }
}

QDivisor read_qdivisor(const JsonField& f)
{
    QDivisor d;
    for (const auto& key : f.keys()) {
        if (key.empty())
            f.fail("empty component label");
        if (d.coeffs().count(key))
            f.fail("duplicate component label \"" + key + "\"");
        d.set(key, f[key].as_rational());
    }
    return d;
}

SmoothnessEvidence read_evidence(const JsonField& f)
{
    auto kind = f["kind"].as_string();
    if (kind == "torus-invariant")
        return SmoothnessEvidence::torus_invariant();
    if (kind == "fermat") {
        auto n = f["n"].as_int();
        if (n < 1 || n > 64)
            f["n"].fail("must be between 1 and 64");
        auto p = f["p"].as_int();
        if (p < 2 || p > std::numeric_limits<std::uint32_t>::max())
            f["p"].fail("not a prime");
        return SmoothnessEvidence::fermat(static_cast<int>(n), f["degree"].as_int(), static_cast<std::uint32_t>(p));
    }
    if (kind == "user-asserted")
        return SmoothnessEvidence::user_asserted(f["note"].as_string());
    f["kind"].fail("unknown evidence kind \"" + kind + "\"");
}

namespace {

PrimeP read_prime(const JsonField& f)
{
    try {
        return PrimeP(f.as_int());
    } catch (const InputError& e) {
        f.fail(e.what());
    }
}

int read_small(const JsonField& f, std::int64_t lo, std::int64_t hi)
{
    auto v = f.as_int();
    if (v < lo || v > hi)
        f.fail("must be between " + std::to_string(lo) + " and " + std::to_string(hi));
    return static_cast<int>(v);
}

ToricDivisor read_toric_divisor(const JsonField& f, const ToricVariety& x)
{
    try {
        return ToricDivisor::from_qdivisor(read_qdivisor(f), x.num_rays());
    } catch (const InputError& e) {
        std::string what = e.what();
        if (what.find(": field \"") != std::string::npos)
            throw;
        f.fail(what);
    }
}

Fan cover_base(const JsonField& f, const VarietyDescription& inner)
{
    if (const auto* t = std::get_if<Toric>(&inner.value))
        return t->fan;
    if (const auto* ps = std::get_if<ProjectiveSpace>(&inner.value))
        return projective_space_fan(ps->n);
    f.fail("cover base must be a toric variety or a projective space");
}

ToricVariety variety_of(const JsonField& f, const Fan& fan)
{
    try {
        return ToricVariety(fan);
    } catch (const InputError& e) {
        f.fail(e.what());
    }
}

VarietyPtr read_description_at(const JsonField& f, int depth)
{
    if (depth > max_description_depth)
        f.fail("description nested deeper than " + std::to_string(max_description_depth));
    auto kind = f["kind"].as_string();
    if (kind == "affine-space")
        return make_variety(AffineSpace{read_small(f["n"], 1, 1 << 20)});
    if (kind == "projective-space")
        return make_variety(ProjectiveSpace{read_small(f["n"], 1, 12)});
    if (kind == "curve")
        return make_variety(SmoothProjectiveCurve{read_small(f["genus"], 0, 1 << 30)});
    if (kind == "complete-intersection") {
        CompleteIntersectionPicardOne ci;
        ci.n = read_small(f["n"], 2, 1 << 20);
        auto degs = f["multidegrees"];
        for (std::size_t i = 0; i < degs.size(); ++i)
            ci.multidegrees.push_back(read_small(degs[i], 1, 1 << 30));
        if (ci.multidegrees.empty() || ci.multidegrees.size() >= static_cast<std::size_t>(ci.n))
            degs.fail("needs between 1 and n-1 equations");
        return make_variety(std::move(ci));
    }
    if (kind == "toric")
        return make_variety(Toric{read_fan(f["fan"])});
    if (kind == "blowup")
        return make_variety(BlowupAtPoint{read_description_at(f["inner"], depth + 1)});
    if (kind == "cyclic-cover") {
        auto inner = read_description_at(f["inner"], depth + 1);
        auto x = variety_of(f["inner"], cover_base(f["inner"], *inner));
        auto l = read_toric_divisor(f["line_bundle"], x);
        auto d = read_toric_divisor(f["branch"], x);
        auto evidence = f.has("evidence") ? read_evidence(f["evidence"]) : SmoothnessEvidence::torus_invariant();
        auto n = f["N"].as_int();
        auto p = read_prime(f["p"]);
        try {
            return make_variety(CyclicCoverOf{inner, plan_cyclic_cover(x, l, n, d, p, evidence)});
        } catch (const InputError& e) {
            f.fail(e.what());
        }
    }
    if (kind == "kummer-cover") {
        auto inner = read_description_at(f["inner"], depth + 1);
        auto x = variety_of(f["inner"], cover_base(f["inner"], *inner));
        auto d = read_qdivisor(f["divisor"]);
        auto p = read_prime(f["p"]);
        Integer multiplier = f.has("multiplier") ? Integer(std::to_string(f["multiplier"].as_int())) : Integer(1);
        int scan = f.has("scan_bound") ? read_small(f["scan_bound"], 1, 8) : default_ample_scan_bound;
        try {
            return make_variety(KummerCoverOf{inner, plan_kummer_cover(x, d, p, multiplier, scan)});
        } catch (const InputError& e) {
            f.fail(e.what());
        }
    }
    if (kind == "unknown")
        return make_variety(UnknownVariety{f["text"].as_string()});
    f["kind"].fail("unknown variety kind \"" + kind + "\"");
}

DerivationNode read_derivation_at(const JsonField& f, int depth)
{
    if (depth > max_description_depth)
        f.fail("derivation nested deeper than " + std::to_string(max_description_depth));
    DerivationNode node;
    node.rule = f["rule"].as_string();
    try {
        node.conclusion = parse_conclusion(f["conclusion"].as_string());
    } catch (const InputError& e) {
        f["conclusion"].fail(e.what());
    }
    node.subject = f["subject"].as_string();
    auto premises = f["premises"];
    for (std::size_t i = 0; i < premises.size(); ++i)
        node.children.push_back(read_derivation_at(premises[i], depth + 1));
    return node;
}

} // namespace

VarietyPtr read_description(const JsonField& f)
{
    return read_description_at(f, 0);
}

DerivationNode read_derivation(const JsonField& f)
{
    return read_derivation_at(f, 0);
}

Json to_json(const Rational& q)
{
    return to_string(q);
}

Json to_json(const Integer& z)
{
    return z.get_str();
}

Json to_json(const Fan& fan)
{
    Json j;
    j["dim"] = fan.dim;
    j["rays"] = fan.rays;
    j["max_cones"] = fan.max_cones;
    return j;
}

Json to_json(const QDivisor& d)
{
    Json j = Json::object();
    for (const auto& [label, value] : d.coeffs())
        j[label] = to_string(value);
    return j;
}

Json to_json(const ToricDivisor& d)
{
    // keyed by ray index in numeric order
    Json j = Json::object();
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0)
            j[std::to_string(i)] = to_string(d[i]);
    return j;
}

Json to_json(const std::vector<HypothesisCheck>& checks)
{
    Json j = Json::array();
    for (const auto& c : checks)
        j.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return j;
}

Json to_json(const ValidationReport& r)
{
    Json j;
    j["primitive"] = r.primitive;
    j["smooth"] = r.smooth;
    j["complete"] = r.complete;
    j["projective"] = r.projective;
    j["problems"] = r.problems;
    if (r.ample_witness)
        j["ample_witness"] = *r.ample_witness;
    return j;
}

Json to_json(const CohomReport& r)
{
    Json j;
    j["divisor"] = to_json(r.divisor);
    j["h"] = r.dims;
    j["euler"] = r.euler();
    j["witness_counts"] = r.witness_counts;
    j["box"] = Json{{"lo", r.box.lo}, {"hi", r.box.hi}};
    return j;
}

Json to_json(const SmoothnessEvidence& e)
{
    switch (e.kind) {
    case SmoothnessEvidence::Kind::TorusInvariantDisjoint:
        return Json{{"kind", "torus-invariant"}};
    case SmoothnessEvidence::Kind::Fermat:
        return Json{{"kind", "fermat"}, {"n", e.n}, {"degree", e.degree}, {"p", e.p}};
    case SmoothnessEvidence::Kind::UserAsserted:
        return Json{{"kind", "user-asserted"}, {"note", e.note}};
    }
    return Json::object();
}

Json to_json(const CyclicCoverPlan& plan)
{
    Json j;
    j["base"] = to_json(plan.base);
    j["line_bundle"] = to_json(plan.line_bundle);
    j["branch"] = to_json(plan.branch);
    j["N"] = plan.n;
    j["p"] = plan.p;
    j["evidence"] = to_json(plan.evidence);
    j["degree"] = plan.degree;
    j["group"] = plan.group;
    j["checks"] = to_json(plan.checks);
    j["licenses"] = Json{{"rule", "Cor5.13"}, {"conclusion", to_string(Conclusion::LiftableW)}};
    return j;
}

Json to_json(const HurwitzReport& r)
{
    Json j;
    j["reduced_branch"] = to_json(r.reduced_branch);
    j["canonical_class"] = to_json(r.canonical_class);
    j["degree"] = r.degree ? to_json(*r.degree) : Json(nullptr);
    j["verdict"] = to_string(r.verdict);
    j["general_type"] = r.general_type;
    return j;
}

Json to_json(const KummerHypothesisReport& r)
{
    Json j;
    j["p"] = r.p;
    Json comps = Json::array();
    for (const auto& c : r.components)
        comps.push_back(Json{{"label", c.label},
                             {"a", to_json(c.a)},
                             {"b", to_json(c.b)},
                             {"proper", c.proper},
                             {"coprime", c.coprime},
                             {"prime_to_p", c.prime_to_p}});
    j["components"] = comps;
    j["pass"] = r.pass;
    return j;
}

Json to_json(const KummerCoverPlan& plan)
{
    Json j;
    j["base"] = to_json(plan.base);
    j["divisor"] = to_json(plan.divisor);
    j["p"] = plan.p;
    j["multiplier"] = to_json(plan.multiplier);
    j["m"] = to_json(plan.m);
    j["very_ample"] = plan.very_ample ? to_json(*plan.very_ample) : Json(nullptr);
    Json comps = Json::array();
    for (const auto& c : plan.components)
        comps.push_back(Json{{"label", c.label}, {"a", to_json(c.a)}, {"b", to_json(c.b)}});
    j["components"] = comps;
    j["member_count"] = plan.member_count;
    j["degree_bound"] = to_json(plan.degree_bound);
    j["group_bound"] = plan.group_bound;
    Json members = Json::array();
    for (const auto& m : plan.members)
        members.push_back(Json{{"component", m.component}, {"k", m.k}, {"class", to_json(m.divisor_class)}});
    j["members"] = members;
    j["checks"] = to_json(plan.checks);
    j["licenses"] = Json{{"rule", "Thm3.1iii"}, {"conclusion", to_string(Conclusion::LiftableW2)}};
    return j;
}

Json to_json(const IntegralityReport& r)
{
    Json entries = Json::array();
    for (const auto& e : r.entries)
        entries.push_back(Json{{"label", e.label},
                               {"coefficient", to_json(e.coefficient)},
                               {"ramification", to_json(e.ramification)},
                               {"pulled_back", to_json(e.pulled_back)},
                               {"integral", e.integral}});
    return Json{{"entries", entries}, {"integral", r.integral}};
}

Json to_json(const VarietyDescription& v)
{
    return std::visit(
        [](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, AffineSpace>) {
                return Json{{"kind", "affine-space"}, {"n", x.n}};
            } else if constexpr (std::is_same_v<T, ProjectiveSpace>) {
                return Json{{"kind", "projective-space"}, {"n", x.n}};
            } else if constexpr (std::is_same_v<T, SmoothProjectiveCurve>) {
                return Json{{"kind", "curve"}, {"genus", x.genus}};
            } else if constexpr (std::is_same_v<T, CompleteIntersectionPicardOne>) {
                return Json{{"kind", "complete-intersection"}, {"n", x.n}, {"multidegrees", x.multidegrees}};
            } else if constexpr (std::is_same_v<T, Toric>) {
                return Json{{"kind", "toric"}, {"fan", to_json(x.fan)}};
            } else if constexpr (std::is_same_v<T, BlowupAtPoint>) {
                return Json{{"kind", "blowup"}, {"inner", x.inner ? to_json(*x.inner) : Json(nullptr)}};
            } else if constexpr (std::is_same_v<T, CyclicCoverOf>) {
                return Json{{"kind", "cyclic-cover"},
                            {"inner", x.inner ? to_json(*x.inner) : Json(nullptr)},
                            {"line_bundle", to_json(x.plan.line_bundle)},
                            {"branch", to_json(x.plan.branch)},
                            {"N", x.plan.n},
                            {"p", x.plan.p},
                            {"evidence", to_json(x.plan.evidence)}};
            } else if constexpr (std::is_same_v<T, KummerCoverOf>) {
                return Json{{"kind", "kummer-cover"},
                            {"inner", x.inner ? to_json(*x.inner) : Json(nullptr)},
                            {"divisor", to_json(x.plan.divisor)},
                            {"p", x.plan.p},
                            {"multiplier", x.plan.multiplier.get_si()}};
            } else {
                return Json{{"kind", "unknown"}, {"text", x.text}};
            }
        },
        v.value);
}

Json to_json(const DerivationNode& node)
{
    Json premises = Json::array();
    for (const auto& c : node.children)
        premises.push_back(to_json(c));
    return Json{{"rule", node.rule},
                {"conclusion", to_string(node.conclusion)},
                {"subject", node.subject},
                {"premises", premises}};
}

Json to_json(const Certificate& c)
{
    return Json{{"conclusion", to_string(c.conclusion)},
                {"derivation", c.derivation ? to_json(*c.derivation) : Json(nullptr)}};
}

Json to_json(const SurjectivityCertificate& c)
{
    Json j;
    j["divisor"] = to_json(c.divisor);
    j["h0"] = c.h0;
    j["h1"] = c.h1;
    j["status"] = to_string(c.status);
    j["flagged"] = c.flagged;
    j["witnesses_agree"] = c.witnesses_agree;
    j["basis"] = c.basis;
    Json steps = Json::array();
    for (const auto& s : c.steps)
        steps.push_back(Json{{"level", s.level}, {"length", s.length}});
    j["steps"] = steps;
    return j;
}

Json to_json(const SweepReport& r)
{
    Json inconclusive = Json::array();
    for (const auto& d : r.inconclusive)
        inconclusive.push_back(to_json(d));
    return Json{{"bound", r.bound},
                {"classes", r.classes},
                {"certified", r.certified},
                {"inconclusive", inconclusive},
                {"complete", r.inconclusive.empty()}};
}

Json to_json(const VanishingReport& r)
{
    Json j;
    j["divisor"] = to_json(r.divisor);
    j["used"] = to_json(r.used);
    j["perturbed"] = r.perturbed;
    j["p"] = r.p;
    j["dim"] = r.dim;
    j["range"] = "i > " + std::to_string(r.threshold);
    j["adjoint"] = to_json(r.adjoint);
    j["h"] = r.dims;
    j["pass"] = r.pass;
    return j;
}

Json make_report(const std::string& command, const std::string& status, const Json& body)
{
    Json j;
    j["schema"] = schema_tag;
    j["command"] = command;
    j["status"] = status;
    for (auto it = body.begin(); it != body.end(); ++it)
        j[it.key()] = it.value();
    return j;
}

std::string dump_report(const Json& report)
{
    return report.dump(2) + "\n";
}

} // namespace liftgeom
