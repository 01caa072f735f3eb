#include "normsurf/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace normsurf {

using json = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("not a JSON document: ") + e.what());
    }
}

void expect_keys(const json& obj, const std::string& where,
                 const std::vector<std::string>& required,
                 const std::vector<std::string>& optional = {}) {
    if (!obj.is_object()) throw ParseError(where + ": expected an object");
    for (const auto& k : required)
        if (!obj.contains(k)) throw ParseError(where + ": missing field '" + k + "'");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const std::string& k = it.key();
        bool known = std::find(required.begin(), required.end(), k) != required.end() ||
                     std::find(optional.begin(), optional.end(), k) != optional.end();
        if (!known) throw ParseError(where + ": unknown field '" + k + "'");
    }
}

long long as_integer(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
    return v.get<long long>();
}

std::string as_string(const json& v, const std::string& where) {
    if (!v.is_string()) throw ParseError(where + ": expected a string");
    return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& where) {
    if (!v.is_boolean()) throw ParseError(where + ": expected a boolean");
    return v.get<bool>();
}

} // namespace

NormalSurfaceModel model_from_json(const std::string& text) {
    json doc = parse_document(text);
    expect_keys(doc, "model", {"divisors", "gram", "field"},
                {"kvec", "singular_points", "facts"});

    NormalSurfaceModel m;
    if (!doc["divisors"].is_array()) throw ParseError("divisors: expected an array of strings");
    for (std::size_t i = 0; i < doc["divisors"].size(); ++i)
        m.resolution.divisors.push_back(
            as_string(doc["divisors"][i], "divisors[" + std::to_string(i) + "]"));

    if (!doc["gram"].is_array()) throw ParseError("gram: expected an array of integer arrays");
    for (std::size_t i = 0; i < doc["gram"].size(); ++i) {
        const auto& row = doc["gram"][i];
        const std::string where = "gram[" + std::to_string(i) + "]";
        if (!row.is_array()) throw ParseError(where + ": expected an integer array");
        std::vector<long long> r;
        for (std::size_t j = 0; j < row.size(); ++j)
            r.push_back(as_integer(row[j], where + "[" + std::to_string(j) + "]"));
        m.resolution.gram.push_back(std::move(r));
    }

    if (doc.contains("kvec")) {
        const auto& kv = doc["kvec"];
        if (!kv.is_array()) throw ParseError("kvec: expected an integer array");
        std::vector<long long> k;
        for (std::size_t i = 0; i < kv.size(); ++i)
            k.push_back(as_integer(kv[i], "kvec[" + std::to_string(i) + "]"));
        m.resolution.kvec = std::move(k);
    }

    if (doc.contains("singular_points")) {
        const auto& sps = doc["singular_points"];
        if (!sps.is_array()) throw ParseError("singular_points: expected an array");
        for (std::size_t i = 0; i < sps.size(); ++i) {
            const std::string where = "singular_points[" + std::to_string(i) + "]";
            expect_keys(sps[i], where, {"id", "exceptional", "rational"});
            SingularPoint sp;
            sp.id = as_string(sps[i]["id"], where + ".id");
            if (!sps[i]["exceptional"].is_array())
                throw ParseError(where + ".exceptional: expected an array of strings");
            for (std::size_t j = 0; j < sps[i]["exceptional"].size(); ++j)
                sp.exceptional.push_back(as_string(sps[i]["exceptional"][j],
                                                   where + ".exceptional[" + std::to_string(j) +
                                                       "]"));
            sp.rational_singularity = as_bool(sps[i]["rational"], where + ".rational");
            m.singular_points.push_back(std::move(sp));
        }
    }

    expect_keys(doc["field"], "field", {"char", "finite", "h2_zero"});
    m.field.characteristic = as_integer(doc["field"]["char"], "field.char");
    m.field.finite_field = as_bool(doc["field"]["finite"], "field.finite");
    m.field.h2_zero = as_bool(doc["field"]["h2_zero"], "field.h2_zero");

    if (doc.contains("facts")) {
        if (!doc["facts"].is_array()) throw ParseError("facts: expected an array of strings");
        for (std::size_t i = 0; i < doc["facts"].size(); ++i)
            m.facts.push_back(as_string(doc["facts"][i], "facts[" + std::to_string(i) + "]"));
    }
    return m;
}

NormalSurfaceModel model_from_file(const std::string& path) {
    return model_from_json(slurp(path));
}

std::string model_to_json(const NormalSurfaceModel& m) {
    json doc;
    doc["divisors"] = m.resolution.divisors;
    doc["gram"] = m.resolution.gram;
    if (m.resolution.kvec) doc["kvec"] = *m.resolution.kvec;
    doc["singular_points"] = json::array();
    for (const auto& sp : m.singular_points) {
        json j;
        j["id"] = sp.id;
        j["exceptional"] = sp.exceptional;
        j["rational"] = sp.rational_singularity;
        doc["singular_points"].push_back(std::move(j));
    }
    doc["field"] = {{"char", m.field.characteristic},
                    {"finite", m.field.finite_field},
                    {"h2_zero", m.field.h2_zero}};
    doc["facts"] = m.facts;
    return doc.dump(2) + "\n";
}

Divisor divisor_from_json(const std::string& text, Level level) {
    json doc = parse_document(text);
    if (!doc.is_object()) throw ParseError("divisor: expected an object of rational strings");
    Divisor d;
    d.level = level;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        std::optional<Rat> r;
        if (it.value().is_string()) r = Rat::parse(it.value().get<std::string>());
        else if (it.value().is_number_integer()) r = Rat(it.value().get<long long>());
        if (!r) throw ParseError("divisor." + it.key() + ": expected \"p/q\" or an integer");
        d.set(it.key(), *r);
    }
    return d;
}

Divisor divisor_from_file(const std::string& path, Level level) {
    return divisor_from_json(slurp(path), level);
}

std::string divisor_to_json(const Divisor& d) {
    json doc = json::object();
    for (const auto& [n, c] : d.coeffs) doc[n] = c.str();
    return doc.dump(2) + "\n";
}

} // namespace normsurf
