#include "ndc/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ndc/constructions.hpp"

namespace ndc {

namespace {

using nlohmann::json;

std::uint64_t to_index(const json& v, const std::string& key) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        throw SpecError(key, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

double to_real(const json& v, const std::string& key) {
    if (!v.is_number()) {
        throw SpecError(key, "expected a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
        throw SpecError(key, "expected a finite number");
    }
    return d;
}

const json& require(const json& obj, const char* name, const std::string& path) {
    const std::string key = path.empty() ? name : path + "." + name;
    if (!obj.is_object() || !obj.contains(name)) {
        throw SpecError(key, "missing");
    }
    return obj.at(name);
}

void no_extra_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
    for (const auto& [k, v] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) {
            ok = ok || k == a;
        }
        if (!ok) {
            throw SpecError(path.empty() ? k : path + "." + k, "unknown key");
        }
    }
}

Partition parse_partition(const json& p, const std::string& path) {
    if (!p.is_object()) {
        throw SpecError(path, "expected an object");
    }
    const json& kind = require(p, "kind", path);
    if (kind == "uniform") {
        no_extra_keys(p, {"kind", "width"}, path);
        const std::uint64_t w = to_index(require(p, "width", path), path + ".width");
        if (w == 0) {
            throw SpecError(path + ".width", "must be positive");
        }
        return Partition::uniform(w);
    }
    if (kind == "cantor_coarsen") {
        no_extra_keys(p, {"kind", "base"}, path);
        return Partition::cantor_coarsen(parse_partition(require(p, "base", path), path + ".base"));
    }
    throw SpecError(path + ".kind", "expected \"uniform\" or \"cantor_coarsen\"");
}

OperatorRep parse_entries(const json& list) {
    if (!list.is_array()) {
        throw SpecError("entries", "expected an array");
    }
    std::vector<ExplicitEntry> entries;
    for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string key = "entries[" + std::to_string(k) + "]";
        const json& e = list[k];
        if (!e.is_array() || e.size() < 3 || e.size() > 4) {
            throw SpecError(key, "expected [row, col, re] or [row, col, re, im]");
        }
        const double re = to_real(e[2], key + "[2]");
        const double im = e.size() == 4 ? to_real(e[3], key + "[3]") : 0.0;
        entries.push_back({BasisIndex(to_index(e[0], key + "[0]")), BasisIndex(to_index(e[1], key + "[1]")),
                           Complex(re, im)});
    }
    try {
        return OperatorRep::from_entries(entries);
    } catch (const PreconditionError& ex) {
        throw SpecError("entries", ex.what());
    }
}

Complex parse_complex(const json& v, const std::string& key) {
    if (v.is_array()) {
        if (v.size() != 2) {
            throw SpecError(key, "expected [re, im]");
        }
        return {to_real(v[0], key + "[0]"), to_real(v[1], key + "[1]")};
    }
    return {to_real(v, key), 0.0};
}

}  // namespace

OperatorSpec parse_operator_spec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& ex) {
        throw SpecError("<document>", ex.what());
    }
    if (!doc.is_object()) {
        throw SpecError("<document>", "expected a JSON object");
    }
    no_extra_keys(doc, {"entries", "generator", "partition"}, "");
    const bool has_entries = doc.contains("entries");
    const bool has_gen = doc.contains("generator");
    if (has_entries == has_gen) {
        throw SpecError(has_entries ? "generator" : "entries", "exactly one of entries/generator is required");
    }
    const Partition unit = Partition::uniform(1);
    const Partition coarse = Partition::cantor_coarsen(unit);
    const bool explicit_part = doc.contains("partition");
    const Partition given = explicit_part ? parse_partition(doc.at("partition"), "partition") : unit;

    if (has_entries) {
        return {parse_entries(doc.at("entries")), given};
    }

    const json& g = doc.at("generator");
    if (!g.is_object()) {
        throw SpecError("generator", "expected an object");
    }
    no_extra_keys(g, {"name", "params"}, "generator");
    const json& name_v = require(g, "name", "generator");
    if (!name_v.is_string()) {
        throw SpecError("generator.name", "expected a string");
    }
    const std::string name = name_v.get<std::string>();
    const json params = g.contains("params") ? g.at("params") : json::object();
    if (!params.is_object()) {
        throw SpecError("generator.params", "expected an object");
    }
    const std::string pp = "generator.params";
    const Partition part = explicit_part ? given : (name == "minf_sample" ? unit : coarse);
    auto needs_coarse = [&] {
        if (part.kind() != Partition::Kind::CantorCoarsen) {
            throw SpecError("partition", name + " needs a cantor_coarsen partition");
        }
    };

    if (name == "matrix_unit") {
        no_extra_keys(params, {"group", "i", "j"}, pp);
        needs_coarse();
        const BlockId group(params.contains("group") ? to_index(params.at("group"), pp + ".group") : 0);
        return {matrix_unit(part, group, to_index(require(params, "i", pp), pp + ".i"),
                            to_index(require(params, "j", pp), pp + ".j")),
                part};
    }
    if (name == "row_isometry") {
        no_extra_keys(params, {"lambda"}, pp);
        needs_coarse();
        const Complex lambda = parse_complex(require(params, "lambda", pp), pp + ".lambda");
        if (lambda == Complex(0.0, 0.0)) {
            throw SpecError(pp + ".lambda", "must be nonzero");
        }
        return {row_isometry(lambda, part), part};
    }
    if (name == "minf_sample") {
        no_extra_keys(params, {"rule", "base"}, pp);
        const json& rule = require(params, "rule", pp);
        if (rule == "geometric") {
            const double b = params.contains("base") ? to_real(params.at("base"), pp + ".base") : 0.5;
            if (!(b > 0.0 && b < 1.0)) {
                throw SpecError(pp + ".base", "must lie in (0, 1)");
            }
            return {minf_sample(Geometric{b}), part};
        }
        if (rule == "inverse_sum") {
            if (params.contains("base")) {
                throw SpecError(pp + ".base", "not used by inverse_sum");
            }
            return {minf_sample(InverseSum{}), part};
        }
        throw SpecError(pp + ".rule", "expected \"geometric\" or \"inverse_sum\"");
    }
    if (name == "coarse_projection") {
        no_extra_keys(params, {"index"}, pp);
        needs_coarse();
        const BlockId i(params.contains("index") ? to_index(params.at("index"), pp + ".index") : 0);
        return {coarse_projection(part, i), part};
    }
    throw SpecError("generator.name", "unknown generator '" + name + "'");
}

OperatorSpec load_operator_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw SpecError("<file>", "cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_operator_spec(buf.str());
}

}  // namespace ndc
