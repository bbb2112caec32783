#pragma once

// JSON wire format. Every report carries "schema": "liftable-geom/1";
// rationals travel as "num/den" strings, big integers as decimal strings.

#include "liftgeom/cover.hpp"
#include "liftgeom/liftcert.hpp"
#include "liftgeom/toric.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace liftgeom {

using Json = nlohmann::ordered_json;

inline constexpr const char* schema_tag = "liftable-geom/1";

// A parsed document that remembers its text, so field errors can name a line.
class JsonDocument {
public:
    // Throws InputError "<source>:<line>: ..." on a syntax error.
    JsonDocument(std::string source, std::string text);

    const std::string& source() const noexcept { return source_; }
    const Json& root() const noexcept { return root_; }

    // Line of the field reached by following the given object keys, best effort.
    int line_of(const std::vector<std::string>& keys) const;

private:
    std::string source_;
    std::string text_;
    Json root_;
};

// Cursor into a document; the accessors throw InputError naming the field
// path and its line.
class JsonField {
public:
    explicit JsonField(const JsonDocument& doc);

    const Json& value() const noexcept { return *node_; }
    const std::string& path() const noexcept { return path_; }

    bool has(const std::string& key) const;
    JsonField operator[](const std::string& key) const; // required member
    JsonField operator[](std::size_t index) const;
    std::size_t size() const;                          // array length
    std::vector<std::string> keys() const;              // object keys in document order

    std::int64_t as_int() const;
    std::string as_string() const;
    Rational as_rational() const;
    IntVector as_int_vector() const;

    [[noreturn]] void fail(const std::string& message) const;

private:
    JsonField(const JsonDocument* doc, const Json* node, std::string path, std::vector<std::string> keys);

    const JsonDocument* doc_;
    const Json* node_;
    std::string path_;
    std::vector<std::string> keys_;
};

Fan read_fan(const JsonField& f);
QDivisor read_qdivisor(const JsonField& f);
SmoothnessEvidence read_evidence(const JsonField& f);
// Cover nodes are planned against their base while reading, so an invalid
// plan surfaces as HypothesisViolation.
VarietyPtr read_description(const JsonField& f);
DerivationNode read_derivation(const JsonField& f);

Json to_json(const Rational& q);
Json to_json(const Integer& z);
Json to_json(const Fan& fan);
Json to_json(const QDivisor& d);
Json to_json(const ToricDivisor& d);
Json to_json(const std::vector<HypothesisCheck>& checks);
Json to_json(const ValidationReport& r);
Json to_json(const CohomReport& r);
Json to_json(const SmoothnessEvidence& e);
Json to_json(const CyclicCoverPlan& plan);
Json to_json(const HurwitzReport& r);
Json to_json(const KummerHypothesisReport& r);
Json to_json(const KummerCoverPlan& plan);
Json to_json(const IntegralityReport& r);
Json to_json(const VarietyDescription& v);
Json to_json(const DerivationNode& node);
Json to_json(const Certificate& c);
Json to_json(const SurjectivityCertificate& c);
Json to_json(const SweepReport& r);
Json to_json(const VanishingReport& r);

// {"schema": ..., "command": ..., "status": ...} followed by the body's members.
Json make_report(const std::string& command, const std::string& status, const Json& body);
std::string dump_report(const Json& report);

} // namespace liftgeom
