#include "ricci/io.hpp"

#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace ricci::io {

using nlohmann::json;

namespace {

std::string label_from_json(const json& j, const char* what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    if (j.is_number_unsigned()) return std::to_string(j.get<unsigned long long>());
    throw ParseError(std::string(what) + " must be a string or integer label, got " + j.dump());
}

double length_from_json(const json& j, const std::string& edge_id) {
    if (!j.is_number()) throw ParseError("edge '" + edge_id + "' has a non-numeric length");
    double l = j.get<double>();
    if (!std::isfinite(l) || !(l > 0.0))
        throw NonpositiveLength("edge '" + edge_id + "' has nonpositive or non-finite length");
    return l;
}

}  // namespace

WeightedGraph parse_graph_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ParseError(std::string("invalid graph JSON: ") + err.what());
    }
    if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges"))
        throw ParseError("graph JSON must be an object with 'vertices' and 'edges'");
    if (!doc["vertices"].is_array() || !doc["edges"].is_array())
        throw ParseError("'vertices' and 'edges' must be arrays");

    std::vector<VertexId> vertices;
    for (const auto& v : doc["vertices"]) vertices.push_back(label_from_json(v, "vertex"));

    std::vector<EdgeRecord> edges;
    for (const auto& e : doc["edges"]) {
        if (!e.is_object() || !e.contains("id") || !e.contains("u") || !e.contains("v") ||
            !e.contains("length"))
            throw ParseError("each edge needs 'id', 'u', 'v' and 'length': " + e.dump());
        EdgeRecord rec;
        rec.id = label_from_json(e["id"], "edge id");
        rec.u = label_from_json(e["u"], "endpoint");
        rec.v = label_from_json(e["v"], "endpoint");
        rec.length = length_from_json(e["length"], rec.id);
        edges.push_back(std::move(rec));
    }
    return WeightedGraph(std::move(vertices), std::move(edges));
}

std::string graph_to_json(const WeightedGraph& g) {
    json doc;
    doc["vertices"] = json::array();
    for (const auto& v : g.vertices()) doc["vertices"].push_back(v);
    doc["edges"] = json::array();
    for (const auto& e : g.edges()) {
        json je;
        je["id"] = e.id;
        je["u"] = e.u;
        je["v"] = e.v;
        je["length"] = e.length;
        doc["edges"].push_back(std::move(je));
    }
    return doc.dump(2) + "\n";
}

WeightedGraph parse_edge_list(const std::string& text) {
    std::vector<VertexId> vertices;
    std::vector<EdgeRecord> edges;
    std::istringstream in(text);
    std::string line;
    std::size_t edge_position = 0;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        std::string u, v, length_text, id, extra;
        if (!(fields >> u)) continue;  // blank or comment-only line
        if (!(fields >> v >> length_text))
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected 'u v length [id]', got '" + line + "'");
        fields >> id;
        if (fields >> extra)
            throw ParseError("line " + std::to_string(line_no) + ": trailing field '" + extra +
                             "'");
        if (id.empty()) id = "e" + std::to_string(edge_position);

        errno = 0;
        char* end = nullptr;
        double length = std::strtod(length_text.c_str(), &end);
        if (end == length_text.c_str() || *end != '\0' || errno == ERANGE)
            throw ParseError("line " + std::to_string(line_no) + ": bad length '" + length_text +
                             "'");
        if (!std::isfinite(length) || !(length > 0.0))
            throw NonpositiveLength("edge '" + id + "' has nonpositive or non-finite length");

        for (const auto& w : {u, v})
            if (std::find(vertices.begin(), vertices.end(), w) == vertices.end())
                vertices.push_back(w);
        edges.push_back({id, u, v, length});
        ++edge_position;
    }
    return WeightedGraph(std::move(vertices), std::move(edges));
}

WeightedGraph parse_graph(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return parse_graph_json(text);
        break;
    }
    return parse_edge_list(text);
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string trace_to_csv(const FlowTrace& trace) {
    std::string out = "t,edge_id,length,curvature\n";
    for (const auto& s : trace.samples) {
        const WeightedGraph& g = trace.epoch_graph(s.epoch);
        std::vector<std::size_t> order(g.edge_count());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return g.edges()[a].id < g.edges()[b].id;
        });
        for (std::size_t i : order) {
            out += format_double(s.t);
            out += ',';
            out += g.edges()[i].id;
            out += ',';
            out += format_double(s.lengths[i]);
            out += ',';
            out += format_double(s.curvatures[i]);
            out += '\n';
        }
    }
    return out;
}

std::string events_to_json(const FlowTrace& trace) {
    json doc = json::array();
    for (const auto& ev : trace.events) {
        json je;
        je["t"] = ev.t;
        je["contracted_edges"] = ev.contracted_edges;
        json vm = json::object();
        for (const auto& [from, to] : ev.map.vertex_map) vm[from] = to;
        je["vertex_map"] = std::move(vm);
        doc.push_back(std::move(je));
    }
    return doc.dump(2) + "\n";
}

std::string terminal_summary_json(const FlowTrace& trace) {
    json doc;
    doc["terminal_time"] = trace.terminal_time;
    if (trace.collapsed_to_point())
        doc["terminal_state"] = "point";
    else
        doc["terminal_state"] = json::parse(graph_to_json(*trace.terminal_graph));
    return doc.dump(2) + "\n";
}

std::string report_to_json(const VerificationReport& report) {
    json doc;
    doc["all_passed"] = report.all_passed();
    doc["checks"] = json::array();
    for (const auto& c : report.checks) {
        json jc;
        jc["name"] = c.name;
        jc["statement"] = c.statement;
        jc["max_violation"] = c.max_violation;
        jc["tolerance"] = c.tolerance;
        jc["passed"] = c.passed;
        doc["checks"].push_back(std::move(jc));
    }
    return doc.dump(2) + "\n";
}

std::string certificate_to_json(const EinsteinCertificate& cert) {
    json doc;
    doc["is_einstein"] = cert.is_einstein;
    doc["lambda"] = cert.lambda;
    doc["max_abs_residual"] = cert.max_abs_residual;
    doc["tolerance"] = cert.tolerance;
    json res = json::object();
    for (const auto& [id, r] : cert.residuals) res[id] = r;
    doc["residuals"] = std::move(res);
    return doc.dump(2) + "\n";
}

std::string solve_result_to_json(const EinsteinSolveResult& result) {
    json doc;
    doc["converged"] = result.converged;
    doc["iterations"] = result.iterations;
    json lengths = json::object();
    for (const auto& [id, l] : result.lengths) lengths[id] = l;
    doc["lengths"] = std::move(lengths);
    doc["certificate"] = json::parse(certificate_to_json(result.certificate));
    return doc.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path dir = target.parent_path();
    if (dir.empty()) dir = ".";
    fs::path tmp = dir / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw Error("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error("rename to '" + path + "' failed: " + ec.message());
    }
}

}  // namespace ricci::io
