#include "hilbertsep/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace hilbertsep::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json parse_file(const std::string& path, bool domain_file) {
    std::ifstream in(path);
    // Throws rather than returns: returning through the base class would
    // slice DomainFileError down to Error and break the exit-code mapping.
    auto fail = [&](const std::string& what) {
        const std::string msg = path + ": " + what;
        if (domain_file) throw DomainFileError("DomainFileError: " + msg);
        throw Error("Error: " + msg);
    };
    if (!in.is_open()) fail("cannot open file");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(e.what());
        throw;  // unreachable
    }
}

void write_file(const ordered_json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out.is_open()) throw Error("Error: " + path + ": cannot open file for writing");
    out << j.dump(2) << "\n";
}

Vec number_array(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) throw Error("Error: " + what + " must be a nonempty array");
    Vec out;
    out.reserve(j.size());
    for (const json& v : j) {
        if (!v.is_number()) throw Error("Error: " + what + " must contain numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<Hyperplane> domain_rows(const json& j, const std::string& path) {
    auto fail = [&](const std::string& what) {
        return DomainFileError("DomainFileError: " + path + ": " + what);
    };
    if (!j.is_object()) throw fail("top level must be an object");
    if (!j.contains("dimension") || !j["dimension"].is_number_integer())
        throw fail("missing integer field \"dimension\"");
    const int d = j["dimension"].get<int>();
    if (d < 1) throw fail("dimension must be at least 1");
    if (!j.contains("hyperplanes") || !j["hyperplanes"].is_array())
        throw fail("missing array field \"hyperplanes\"");
    std::vector<Hyperplane> rows;
    for (const json& hj : j["hyperplanes"]) {
        if (!hj.is_object() || !hj.contains("w") || !hj.contains("c") || !hj["c"].is_number())
            throw fail("each hyperplane needs an array \"w\" and a number \"c\"");
        Hyperplane h;
        try {
            h.w = number_array(hj["w"], "hyperplane normal");
        } catch (const Error& e) {
            throw fail(e.what());
        }
        if (static_cast<int>(h.w.size()) != d)
            throw fail("hyperplane normal length does not match the dimension");
        h.c = hj["c"].get<double>();
        rows.push_back(std::move(h));
    }
    return rows;
}

ordered_json domain_to_json(const Domain& dom) {
    ordered_json j;
    j["dimension"] = dom.dimension;
    j["hyperplanes"] = ordered_json::array();
    for (const Hyperplane& h : dom.hyperplanes) j["hyperplanes"].push_back({{"w", h.w}, {"c", h.c}});
    return j;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

double parse_number(const std::string& text, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw Error("Error: " + where + ": cannot parse number \"" + text + "\"");
    }
}

int parse_label(const std::string& text, const std::string& where) {
    if (text == "+1" || text == "1") return 1;
    if (text == "-1" || text == "0") return -1;
    throw Error("Error: " + where + ": label must be +1, 1, -1, or 0 (got \"" + text + "\")");
}

}  // namespace

Domain load_domain(const std::string& path) {
    return validate_domain(domain_rows(parse_file(path, true), path));
}

void save_domain(const Domain& dom, const std::string& path) {
    write_file(domain_to_json(dom), path);
}

PointsFile load_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw Error("Error: " + path + ": cannot open file");
    PointsFile out;
    std::string line;
    std::size_t lineno = 0;
    std::size_t columns = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        const std::vector<std::string> fields = split_csv(line);
        if (out.header.empty() && columns == 0) {
            columns = fields.size();
            if (columns < 1) throw Error("Error: " + where + ": empty header");
            std::string last = fields.back();
            std::transform(last.begin(), last.end(), last.begin(),
                           [](unsigned char ch) { return std::tolower(ch); });
            out.has_labels = last == "label";
            if (out.has_labels && columns < 2)
                throw Error("Error: " + where + ": no coordinate columns before the label");
            out.header = line;
            continue;
        }
        if (fields.size() != columns)
            throw Error("Error: " + where + ": expected " + std::to_string(columns) +
                        " fields, got " + std::to_string(fields.size()));
        const std::size_t coords = columns - (out.has_labels ? 1 : 0);
        Vec p(coords);
        for (std::size_t j = 0; j < coords; ++j) p[j] = parse_number(fields[j], where);
        out.points.push_back(std::move(p));
        if (out.has_labels) out.labels.push_back(parse_label(fields.back(), where));
        out.raw_lines.push_back(line);
    }
    if (out.header.empty()) throw Error("Error: " + path + ": missing header line");
    return out;
}

SeparatorModel load_model(const std::string& path) {
    const json j = parse_file(path, false);
    auto fail = [&](const std::string& what) {
        return Error("Error: " + path + ": " + what);
    };
    if (!j.is_object()) throw fail("top level must be an object");
    for (const char* key : {"metric", "kind", "w", "c", "margin"})
        if (!j.contains(key)) throw fail(std::string("missing field \"") + key + "\"");
    SeparatorModel model;
    const std::string metric = j["metric"].get<std::string>();
    if (metric == "hilbert")
        model.metric = MetricKind::Hilbert;
    else if (metric == "funk")
        model.metric = MetricKind::Funk;
    else
        throw fail("metric must be \"hilbert\" or \"funk\"");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "hard")
        model.kind = SeparatorKind::Hard;
    else if (kind == "soft")
        model.kind = SeparatorKind::Soft;
    else
        throw fail("kind must be \"hard\" or \"soft\"");
    model.w = number_array(j["w"], "separator normal");
    if (!j["c"].is_number() || !j["margin"].is_number())
        throw fail("fields \"c\" and \"margin\" must be numbers");
    model.c = j["c"].get<double>();
    model.margin = j["margin"].get<double>();
    if (model.kind == SeparatorKind::Soft) {
        if (!j.contains("xi") || !j.contains("C")) throw fail("soft model needs \"xi\" and \"C\"");
        model.xi = number_array(j["xi"], "slack vector");
        model.C = j["C"].get<double>();
    }
    return model;
}

void save_model(const SeparatorModel& model, const std::string& path) {
    ordered_json j;
    j["metric"] = model.metric == MetricKind::Hilbert ? "hilbert" : "funk";
    j["kind"] = model.kind == SeparatorKind::Hard ? "hard" : "soft";
    j["w"] = model.w;
    j["c"] = model.c;
    j["margin"] = model.margin;
    if (model.kind == SeparatorKind::Soft) {
        j["xi"] = model.xi;
        j["C"] = model.C;
    }
    write_file(j, path);
}

std::pair<NnModel, Domain> load_nn_model(const std::string& path) {
    const json j = parse_file(path, false);
    auto fail = [&](const std::string& what) {
        return Error("Error: " + path + ": " + what);
    };
    if (!j.is_object()) throw fail("top level must be an object");
    for (const char* key : {"beta", "c_plus", "c_minus", "degenerate", "domain"})
        if (!j.contains(key)) throw fail(std::string("missing field \"") + key + "\"");
    NnModel model;
    if (j["beta"].is_string() && j["beta"].get<std::string>() == "inf") {
        model.beta = std::numeric_limits<double>::infinity();
        model.beta_infinite = true;
        model.t_value = 0.0;
    } else if (j["beta"].is_number()) {
        model.beta = j["beta"].get<double>();
        model.t_value = model.beta > 0.0 ? 1.0 / model.beta : 0.0;
    } else {
        throw fail("beta must be a number or \"inf\"");
    }
    model.c_plus = number_array(j["c_plus"], "positive center");
    model.c_minus = number_array(j["c_minus"], "negative center");
    if (!j["degenerate"].is_boolean()) throw fail("degenerate must be a boolean");
    model.degenerate = j["degenerate"].get<bool>();
    Domain dom = validate_domain(domain_rows(j["domain"], path));
    if (model.c_plus.size() != model.c_minus.size() ||
        static_cast<int>(model.c_plus.size()) != dom.num_facets() - 1)
        throw fail("center length does not match the embedded dimension");
    return {std::move(model), std::move(dom)};
}

void save_nn_model(const NnModel& model, const Domain& dom, const std::string& path) {
    ordered_json j;
    if (model.beta_infinite)
        j["beta"] = "inf";
    else
        j["beta"] = model.beta;
    j["c_plus"] = model.c_plus;
    j["c_minus"] = model.c_minus;
    j["degenerate"] = model.degenerate;
    j["domain"] = domain_to_json(dom);
    write_file(j, path);
}

}  // namespace hilbertsep::io
