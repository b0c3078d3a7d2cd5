#include "gi/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace gi {

namespace {

std::string num(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

Error parse_error(int line, const std::string& why) {
    return Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + why);
}

}  // namespace

InspectionInstance parse_instance(const std::string& text, std::vector<std::string>* warnings) {
    InspectionInstance inst;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool have_header = false;
    int declared_edges = 0;
    std::map<std::pair<int, int>, double> edges;

    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;

        if (tag == "gi") {
            if (have_header) throw parse_error(line_no, "duplicate header");
            if (!(ls >> inst.vertex_count >> declared_edges >> inst.color_count >> inst.start >>
                  inst.quota))
                throw parse_error(line_no, "header needs 'gi n m |C| s t'");
            if (inst.vertex_count <= 0) throw parse_error(line_no, "vertex count must be positive");
            if (inst.start < 0 || inst.start >= inst.vertex_count)
                throw Error(ErrorCode::InvalidId, "start vertex out of range");
            if (inst.quota < 0 || inst.quota > inst.color_count)
                throw Error(ErrorCode::QuotaExceedsColors, "header quota outside [0, |C|]");
            inst.colors.assign(inst.vertex_count, {});
            have_header = true;
            continue;
        }
        if (!have_header) throw parse_error(line_no, "records before the 'gi' header");

        if (tag == "p") {
            int color;
            double x, y, z;
            if (!(ls >> color >> x >> y >> z)) throw parse_error(line_no, "expected 'p c x y z'");
            if (color < 0 || color >= inst.color_count)
                throw Error(ErrorCode::InvalidId, "position color out of range");
            if (inst.color_meta.empty()) inst.color_meta.assign(inst.color_count, {0.0, 0.0, 0.0});
            inst.color_meta[color] = {x, y, z};
        } else if (tag == "v") {
            int id;
            if (!(ls >> id)) throw parse_error(line_no, "expected 'v id colors...'");
            if (id < 0 || id >= inst.vertex_count)
                throw Error(ErrorCode::InvalidId, "vertex id out of range");
            int color;
            while (ls >> color) {
                if (color < 0 || color >= inst.color_count)
                    throw Error(ErrorCode::InvalidId, "vertex color out of range");
                inst.colors[id].push_back(color);
            }
            std::sort(inst.colors[id].begin(), inst.colors[id].end());
            inst.colors[id].erase(std::unique(inst.colors[id].begin(), inst.colors[id].end()),
                                  inst.colors[id].end());
        } else if (tag == "e") {
            int u, v;
            double w;
            if (!(ls >> u >> v >> w)) throw parse_error(line_no, "expected 'e u v w'");
            if (u < 0 || u >= inst.vertex_count || v < 0 || v >= inst.vertex_count)
                throw Error(ErrorCode::InvalidId, "edge endpoint out of range");
            if (u == v) throw Error(ErrorCode::InvalidId, "self-loop on vertex " + std::to_string(u));
            if (w < 0) throw Error(ErrorCode::NegativeWeight, "negative weight on line " +
                                                                  std::to_string(line_no));
            const auto key = std::minmax(u, v);
            auto it = edges.find(key);
            if (it != edges.end()) {
                if (warnings)
                    warnings->push_back("duplicate edge " + std::to_string(u) + "-" +
                                        std::to_string(v) + ": keeping the minimum weight");
                it->second = std::min(it->second, w);
            } else {
                edges.emplace(key, w);
            }
        } else {
            throw parse_error(line_no, "unknown record '" + tag + "'");
        }
    }
    if (!have_header) throw parse_error(line_no, "missing 'gi' header");
    if (declared_edges != static_cast<int>(edges.size()) && warnings)
        warnings->push_back("header declares " + std::to_string(declared_edges) + " edges, found " +
                            std::to_string(edges.size()));
    for (const auto& [key, w] : edges) inst.edges.push_back({key.first, key.second, w});
    inst.validate();
    return inst;
}

std::string write_instance(const InspectionInstance& inst) {
    std::ostringstream out;
    out << "gi " << inst.vertex_count << " " << inst.edges.size() << " " << inst.color_count << " "
        << inst.start << " " << inst.quota << "\n";
    for (size_t c = 0; c < inst.color_meta.size(); ++c)
        out << "p " << c << " " << num(inst.color_meta[c][0]) << " " << num(inst.color_meta[c][1])
            << " " << num(inst.color_meta[c][2]) << "\n";
    for (int v = 0; v < inst.vertex_count; ++v) {
        if (inst.colors[v].empty()) continue;
        out << "v " << v;
        for (int c : inst.colors[v]) out << " " << c;
        out << "\n";
    }
    std::vector<Edge> sorted = inst.edges;
    std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
        return std::minmax(a.u, a.v) < std::minmax(b.u, b.v);
    });
    for (const Edge& e : sorted) {
        auto [a, b] = std::minmax(e.u, e.v);
        out << "e " << a << " " << b << " " << num(e.weight) << "\n";
    }
    return out.str();
}

InspectionInstance load_instance_file(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str(), warnings);
}

void save_instance_file(const InspectionInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    out << write_instance(inst);
}

uint64_t fnv1a(const std::string& data) {
    uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

uint64_t instance_hash(const InspectionInstance& inst) { return fnv1a(write_instance(inst)); }

}  // namespace gi
