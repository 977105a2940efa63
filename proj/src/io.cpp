#include "gallai_lab/io.hpp"

#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

namespace gallai_lab::io {

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

const Json& field(const Json& j, const char* name) {
    if (!j.is_object()) throw ParseError(std::string("expected an object holding \"") + name + "\"");
    auto it = j.find(name);
    if (it == j.end()) throw ParseError(std::string("missing field \"") + name + "\"");
    return *it;
}

std::int64_t integer(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

int small_int(const Json& j, const char* what) {
    const auto v = integer(j, what);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw ParseError(std::string(what) + " out of range");
    return static_cast<int>(v);
}

const Json& array(const Json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    return j;
}

}  // namespace

Json parse(std::string_view text, std::string_view source) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        // byte is 1-based and points just past the offending character.
        const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        std::string msg = e.what();
        if (auto pos = msg.find(": "); pos != std::string::npos) msg = msg.substr(pos + 2);
        throw ParseError(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    }
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error("write failed: " + path.string());
}

Json read_json(const std::filesystem::path& path) { return parse(read_text(path), path.string()); }

Json to_json(const ColoredGraph& g) {
    Json colors = Json::array();
    for (auto c : g.table()) colors.push_back(static_cast<int>(c));
    return Json{{"n", g.n()}, {"k", g.k()}, {"colors", std::move(colors)}};
}

ColoredGraph colored_graph_from_json(const Json& j) {
    const int n = small_int(field(j, "n"), "n");
    const int k = small_int(field(j, "k"), "k");
    const auto& colors = array(field(j, "colors"), "colors");
    if (n < 1 || n > 65'536) throw ParseError("n out of range");
    if (k < 2 || k > 255) throw ParseError("k out of range");
    const std::size_t expected = static_cast<std::size_t>(n) * (n - 1) / 2;
    if (colors.size() != expected)
        throw ParseError("colors holds " + std::to_string(colors.size()) + " entries, expected " +
                         std::to_string(expected));
    std::vector<std::uint8_t> table(expected);
    for (std::size_t i = 0; i < expected; ++i) {
        const auto c = integer(colors[i], "color");
        if (c < 1 || c > k) throw ParseError("color at index " + std::to_string(i) + " outside [1.." + std::to_string(k) + "]");
        table[i] = static_cast<std::uint8_t>(c);
    }
    return ColoredGraph(n, k, std::move(table));
}

Json to_json(const Digraph& d) {
    Json edges = Json::array();
    for (const auto& [u, v] : d.edges()) edges.push_back(Json::array({u, v}));
    return Json{{"n", d.n()}, {"edges", std::move(edges)}};
}

Digraph digraph_from_json(const Json& j) {
    const int n = small_int(field(j, "n"), "n");
    if (n < 1 || n > 65'536) throw ParseError("n out of range");
    Digraph d(n);
    for (const auto& e : array(field(j, "edges"), "edges")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("edge must be [u,v]");
        const int u = small_int(e[0], "edge end"), v = small_int(e[1], "edge end");
        try {
            d.add_edge(u, v);
        } catch (const PreconditionError& err) {
            throw ParseError(std::string("bad edge: ") + err.what());
        }
    }
    return d;
}

Json to_json(const GallaiTree& t) {
    if (t.is_leaf()) return Json{{"vertex", t.vertex}};
    Json children = Json::array();
    for (const auto& c : t.children) children.push_back(to_json(c));
    Json cross = Json::array();
    const int p = static_cast<int>(t.children.size());
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) cross.push_back(Json::array({i, j, t.cross.at(i, j)}));
    return Json{{"pair", Json::array({t.pair[0], t.pair[1]})}, {"children", std::move(children)}, {"cross", std::move(cross)}};
}

namespace {

GallaiTree tree_node_from_json(const Json& j) {
    if (j.is_object() && j.contains("vertex")) return GallaiTree::leaf(small_int(j["vertex"], "vertex"));
    const auto& pair = array(field(j, "pair"), "pair");
    if (pair.size() != 2) throw ParseError("pair must hold two colors");
    std::vector<GallaiTree> children;
    for (const auto& c : array(field(j, "children"), "children")) children.push_back(tree_node_from_json(c));
    const int p = static_cast<int>(children.size());
    if (p < 2) throw ParseError("internal node needs at least two children");
    PartPairColors cross(p, small_int(pair[0], "color"));
    std::set<std::pair<int, int>> seen;
    for (const auto& e : array(field(j, "cross"), "cross")) {
        if (!e.is_array() || e.size() != 3) throw ParseError("cross entry must be [i,j,color]");
        int a = small_int(e[0], "child index"), b = small_int(e[1], "child index");
        if (a > b) std::swap(a, b);
        if (a < 0 || b >= p || a == b) throw ParseError("cross entry names invalid children");
        if (!seen.insert({a, b}).second) throw ParseError("cross entry repeated");
        cross.set(a, b, small_int(e[2], "color"));
    }
    if (seen.size() != static_cast<std::size_t>(p) * (p - 1) / 2) throw ParseError("cross colors incomplete");
    return GallaiTree::node({small_int(pair[0], "color"), small_int(pair[1], "color")}, std::move(children),
                            std::move(cross));
}

}  // namespace

GallaiTree tree_from_json(const Json& j) {
    try {
        auto t = tree_node_from_json(j);
        t.validate();
        return t;
    } catch (const InvalidTree& e) {
        throw ParseError(std::string("invalid tree: ") + e.what());
    }
}

std::string to_dot(const GallaiTree& t) {
    static const char* palette[] = {"black", "red", "blue", "darkgreen"};
    std::ostringstream out;
    out << "graph gallai {\n  node [shape=circle];\n";
    int next = 0;
    std::function<int(const GallaiTree&)> emit = [&](const GallaiTree& node) {
        const int id = next++;
        if (node.is_leaf()) {
            out << "  n" << id << " [label=\"" << node.vertex << "\"];\n";
            return id;
        }
        out << "  n" << id << " [shape=box,label=\"" << node.pair[0] << "/" << node.pair[1] << "\"];\n";
        std::vector<int> ids;
        for (const auto& c : node.children) {
            const int cid = emit(c);
            out << "  n" << id << " -- n" << cid << ";\n";
            ids.push_back(cid);
        }
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = i + 1; j < ids.size(); ++j) {
                const int c = node.cross.at(static_cast<int>(i), static_cast<int>(j));
                out << "  n" << ids[i] << " -- n" << ids[j] << " [style=dashed,constraint=false,color="
                    << palette[c >= 1 && c <= 3 ? c : 0] << ",label=\"" << c << "\"];\n";
            }
        return id;
    };
    emit(t);
    out << "}\n";
    return out.str();
}

Json to_json(const VertexPartition& p) {
    Json parts = Json::array();
    for (const auto& part : p.parts) parts.push_back(part);
    return parts;
}

std::string to_jsonl(const EditTranscript& t) {
    std::string out;
    for (const auto& e : t.edits)
        out += Json{{"u", e.u}, {"v", e.v}, {"old", e.old_color}, {"new", e.new_color}}.dump() + "\n";
    return out;
}

EditTranscript transcript_from_jsonl(std::string_view text, std::string_view source) {
    EditTranscript t;
    std::size_t line_no = 0, start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        const auto line = text.substr(start, end - start);
        start = end + 1;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        const std::string where = std::string(source) + ":" + std::to_string(line_no);
        Json j;
        try {
            j = Json::parse(line.begin(), line.end());
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(where + ":" + std::to_string(e.byte) + ": " + e.what());
        }
        try {
            t.edits.push_back({small_int(field(j, "u"), "u"), small_int(field(j, "v"), "v"),
                               small_int(field(j, "old"), "old"), small_int(field(j, "new"), "new")});
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    return t;
}

Json to_json(const CopyFamily& f) {
    Json copies = Json::array();
    for (const auto& c : f.copies) copies.push_back(c);
    return Json{{"pattern_size", f.pattern_size}, {"role_map", f.role_map}, {"copies", std::move(copies)}};
}

CopyFamily family_from_json(const Json& j) {
    CopyFamily f(small_int(field(j, "pattern_size"), "pattern_size"));
    if (f.pattern_size < 1) throw ParseError("pattern_size must be positive");
    const auto& roles = array(field(j, "role_map"), "role_map");
    if (roles.size() != static_cast<std::size_t>(f.pattern_size)) throw ParseError("role_map has the wrong length");
    for (std::size_t i = 0; i < roles.size(); ++i) f.role_map[i] = small_int(roles[i], "role");
    for (const auto& c : array(field(j, "copies"), "copies")) {
        std::vector<Vertex> t;
        for (const auto& v : array(c, "copy")) t.push_back(small_int(v, "vertex"));
        f.copies.push_back(std::move(t));
    }
    return f;
}

Json to_json(const HardnessClaims& c) {
    return Json{{"planted_host", c.planted_host},
                {"planted_blowup", c.planted_blowup},
                {"host_pair_disjoint", c.host_pair_disjoint},
                {"blowup_pair_disjoint", c.blowup_pair_disjoint},
                {"blowup_family_planted", c.blowup_family_planted},
                {"design_prime", c.design_prime},
                {"host_count", c.host_count},
                {"host_count_bound", c.host_count_bound},
                {"counts_hold", c.counts_hold},
                {"implied_epsilon", c.implied_epsilon}};
}

}  // namespace gallai_lab::io
