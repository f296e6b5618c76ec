#include "mtor/io.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace mtor {

namespace {

[[noreturn]] void fail(const std::string& file, int line, const std::string& msg) {
    std::ostringstream os;
    os << file << ":" << line << ": " << msg;
    throw parse_error(os.str());
}

std::string strip(std::string s) {
    std::size_t h = s.find('#');
    if (h != std::string::npos) s.erase(h);
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

long parse_int(const std::string& file, int line, const std::string& tok) {
    try {
        std::size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        fail(file, line, "expected an integer, got '" + tok + "'");
    }
}

Int parse_big(const std::string& file, int line, const std::string& tok) {
    try {
        return Int(tok);
    } catch (const std::exception&) {
        fail(file, line, "expected an integer, got '" + tok + "'");
    }
}

// Generator token: x3, x3^-1, X3 (capital = inverse).
int parse_gen_token(const std::string& file, int line, const std::string& tok,
                    int rank) {
    std::string t = tok;
    bool inv = false;
    if (t.size() > 3 && t.compare(t.size() - 3, 3, "^-1") == 0) {
        inv = true;
        t.erase(t.size() - 3);
    }
    if (t.empty() || (t[0] != 'x' && t[0] != 'X'))
        fail(file, line, "malformed generator token '" + tok + "'");
    if (t[0] == 'X') inv = !inv;
    long idx = parse_int(file, line, t.substr(1));
    if (idx < 1 || idx > rank)
        fail(file, line, "generator index out of range in '" + tok +
                             "' (1-based, rank " + std::to_string(rank) + ")");
    return inv ? -static_cast<int>(idx) : static_cast<int>(idx);
}

// Edge-path token: an edge name, optionally with ^-1.
int parse_edge_token(const std::string& file, int line, const std::string& tok,
                     const std::map<std::string, int>& edges) {
    std::string t = tok;
    bool inv = false;
    if (t.size() > 3 && t.compare(t.size() - 3, 3, "^-1") == 0) {
        inv = true;
        t.erase(t.size() - 3);
    }
    auto it = edges.find(t);
    if (it == edges.end()) fail(file, line, "unknown edge '" + t + "'");
    int idx = it->second + 1;
    return inv ? -idx : idx;
}

}  // namespace

InputDocument parse_document(std::istream& in, const std::string& file) {
    InputDocument doc;
    bool have_kind = false;
    std::string section;
    int lineno = 0;

    // [automorphism] state
    int rank = 0;
    std::vector<std::vector<int>> images;       // raw letters per generator
    std::vector<bool> image_given;

    // [graph]/[map] state
    std::map<std::string, int> edge_index;

    // [gog]/[gbs] state
    std::map<std::string, int> vertex_index;
    int pending_edge = -1;  // gog edge awaiting inclusion matrices

    auto set_kind = [&](InputDocument::Kind k) {
        if (have_kind && doc.kind != k)
            fail(file, lineno, "a file holds exactly one object kind");
        doc.kind = k;
        have_kind = true;
    };

    std::string raw;
    while (std::getline(in, raw)) {
        lineno++;
        std::string line = strip(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(file, lineno, "unterminated section header");
            section = line.substr(1, line.size() - 2);
            if (section == "automorphism") set_kind(InputDocument::Kind::Automorphism);
            else if (section == "graph" || section == "map")
                set_kind(InputDocument::Kind::FilteredMap);
            else if (section == "gog") set_kind(InputDocument::Kind::Gog);
            else if (section == "gbs") set_kind(InputDocument::Kind::Gbs);
            else fail(file, lineno, "unknown section [" + section + "]");
            continue;
        }
        if (section.empty()) fail(file, lineno, "content before any section header");

        std::vector<std::string> tok = split_ws(line);

        if (section == "automorphism") {
            if (tok[0] == "rank") {
                if (tok.size() != 2) fail(file, lineno, "usage: rank <n>");
                long r = parse_int(file, lineno, tok[1]);
                if (r < 1) fail(file, lineno, "rank must be positive");
                rank = static_cast<int>(r);
                images.assign(static_cast<std::size_t>(rank), {});
                image_given.assign(static_cast<std::size_t>(rank), false);
                continue;
            }
            if (rank == 0) fail(file, lineno, "rank must come first");
            if (tok.size() < 2 || tok[1] != "->")
                fail(file, lineno, "usage: x<i> -> <word>");
            int lhs = parse_gen_token(file, lineno, tok[0], rank);
            if (lhs < 0) fail(file, lineno, "left-hand side must be a plain generator");
            std::vector<int> w;
            for (std::size_t i = 2; i < tok.size(); i++)
                w.push_back(parse_gen_token(file, lineno, tok[i], rank));
            std::size_t gi = static_cast<std::size_t>(lhs - 1);
            if (image_given[gi]) fail(file, lineno, "duplicate image for " + tok[0]);
            images[gi] = std::move(w);
            image_given[gi] = true;
            continue;
        }

        if (section == "graph") {
            if (tok[0] == "vertices") {
                if (tok.size() != 2) fail(file, lineno, "usage: vertices <count>");
                long n = parse_int(file, lineno, tok[1]);
                if (n < 1) fail(file, lineno, "vertex count must be positive");
                doc.map.num_vertices = static_cast<int>(n);
                continue;
            }
            if (tok[0] == "edge") {
                if (tok.size() != 4) fail(file, lineno, "usage: edge <name> <origin> <terminus>");
                if (doc.map.num_vertices == 0)
                    fail(file, lineno, "vertices must come before edges");
                if (edge_index.count(tok[1]))
                    fail(file, lineno, "duplicate edge name '" + tok[1] + "'");
                long o = parse_int(file, lineno, tok[2]);
                long t = parse_int(file, lineno, tok[3]);
                if (o < 1 || o > doc.map.num_vertices || t < 1 || t > doc.map.num_vertices)
                    fail(file, lineno, "edge endpoint out of range (1-based)");
                edge_index[tok[1]] = static_cast<int>(doc.map.edges.size());
                doc.map.edges.push_back({static_cast<int>(o - 1),
                                         static_cast<int>(t - 1), tok[1]});
                doc.map.suffixes.emplace_back();
                continue;
            }
            fail(file, lineno, "unknown directive '" + tok[0] + "' in [graph]");
        }

        if (section == "map") {
            if (tok[0] != "suffix")
                fail(file, lineno, "unknown directive '" + tok[0] + "' in [map]");
            if (tok.size() < 2) fail(file, lineno, "usage: suffix <edge> <path...>");
            auto it = edge_index.find(tok[1]);
            if (it == edge_index.end())
                fail(file, lineno, "unknown edge '" + tok[1] + "'");
            std::vector<int> path;
            for (std::size_t i = 2; i < tok.size(); i++)
                path.push_back(parse_edge_token(file, lineno, tok[i], edge_index));
            doc.map.suffixes[static_cast<std::size_t>(it->second)] = std::move(path);
            continue;
        }

        if (section == "gog") {
            if (tok[0] == "vertex") {
                if (tok.size() != 3) fail(file, lineno, "usage: vertex <name> <rank>");
                if (vertex_index.count(tok[1]))
                    fail(file, lineno, "duplicate vertex '" + tok[1] + "'");
                long r = parse_int(file, lineno, tok[2]);
                if (r < 1) fail(file, lineno, "vertex rank must be positive");
                vertex_index[tok[1]] = static_cast<int>(doc.gog.vertex_names.size());
                doc.gog.vertex_names.push_back(tok[1]);
                doc.gog.vertex_ranks.push_back(static_cast<int>(r));
                continue;
            }
            if (tok[0] == "edge") {
                if (pending_edge >= 0)
                    fail(file, lineno, "previous edge still missing inclusion rows");
                if (tok.size() != 5 && tok.size() != 6)
                    fail(file, lineno, "usage: edge <u> <v> <rank> tree|loop [name]");
                auto u = vertex_index.find(tok[1]);
                auto v = vertex_index.find(tok[2]);
                if (u == vertex_index.end() || v == vertex_index.end())
                    fail(file, lineno, "unknown vertex in edge");
                long r = parse_int(file, lineno, tok[3]);
                if (r < 1) fail(file, lineno, "edge rank must be positive");
                GogEdge e;
                e.origin = u->second;
                e.terminus = v->second;
                e.edge_rank = static_cast<int>(r);
                if (tok[4] == "tree") {
                    e.tree = true;
                    if (tok.size() == 6) e.name = tok[5];
                } else if (tok[4] == "loop") {
                    if (tok.size() != 6)
                        fail(file, lineno, "loop edge needs a stable letter name");
                    e.stable = tok[5];
                    e.name = tok[5];
                } else {
                    fail(file, lineno, "expected tree or loop, got '" + tok[4] + "'");
                }
                e.inc_origin = ZnMatrix(doc.gog.vertex_ranks[static_cast<std::size_t>(e.origin)],
                                        e.edge_rank);
                e.inc_terminus = ZnMatrix(doc.gog.vertex_ranks[static_cast<std::size_t>(e.terminus)],
                                          e.edge_rank);
                pending_edge = static_cast<int>(doc.gog.edges.size());
                doc.gog.edges.push_back(std::move(e));
                continue;
            }
            if (tok[0] == "inco" || tok[0] == "inct") {
                if (pending_edge < 0) fail(file, lineno, "no edge awaiting inclusions");
                GogEdge& e = doc.gog.edges[static_cast<std::size_t>(pending_edge)];
                ZnMatrix& m = tok[0] == "inco" ? e.inc_origin : e.inc_terminus;
                std::size_t need = static_cast<std::size_t>(m.rows) *
                                   static_cast<std::size_t>(m.cols);
                if (tok.size() - 1 != need)
                    fail(file, lineno, "expected " + std::to_string(need) +
                                           " matrix entries (row-major)");
                for (std::size_t i = 0; i < need; i++)
                    m.a[i] = parse_big(file, lineno, tok[i + 1]);
                if (tok[0] == "inct") pending_edge = -1;
                continue;
            }
            fail(file, lineno, "unknown directive '" + tok[0] + "' in [gog]");
        }

        if (section == "gbs") {
            if (tok[0] == "vertex") {
                if (tok.size() != 2) fail(file, lineno, "usage: vertex <name>");
                if (vertex_index.count(tok[1]))
                    fail(file, lineno, "duplicate vertex '" + tok[1] + "'");
                vertex_index[tok[1]] = static_cast<int>(doc.gbs.vertex_names.size());
                doc.gbs.vertex_names.push_back(tok[1]);
                continue;
            }
            if (tok[0] == "edge") {
                if (tok.size() != 6 && tok.size() != 7)
                    fail(file, lineno,
                         "usage: edge <u> <v> <label_u> <label_v> tree|loop [stable]");
                auto u = vertex_index.find(tok[1]);
                auto v = vertex_index.find(tok[2]);
                if (u == vertex_index.end() || v == vertex_index.end())
                    fail(file, lineno, "unknown vertex in edge");
                GbsGraph::Edge e;
                e.origin = u->second;
                e.terminus = v->second;
                e.lab_o = parse_big(file, lineno, tok[3]);
                e.lab_t = parse_big(file, lineno, tok[4]);
                if (tok[5] == "tree") {
                    e.tree = true;
                    if (tok.size() == 7)
                        fail(file, lineno, "tree edges carry no stable letter");
                } else if (tok[5] == "loop") {
                    if (tok.size() != 7)
                        fail(file, lineno, "loop edge needs a stable letter name");
                    e.stable = tok[6];
                } else {
                    fail(file, lineno, "expected tree or loop, got '" + tok[5] + "'");
                }
                doc.gbs.edges.push_back(std::move(e));
                continue;
            }
            fail(file, lineno, "unknown directive '" + tok[0] + "' in [gbs]");
        }
    }

    if (!have_kind) fail(file, lineno, "empty input: no section found");
    if (pending_edge >= 0)
        fail(file, lineno, "edge at end of file missing inclusion rows");

    if (doc.kind == InputDocument::Kind::Automorphism) {
        if (rank == 0) fail(file, lineno, "missing rank");
        std::vector<Word> ws;
        for (int i = 0; i < rank; i++) {
            std::size_t gi = static_cast<std::size_t>(i);
            if (!image_given[gi]) images[gi] = {i + 1};  // omitted => fixed
            ws.push_back(reduce_word(images[gi], rank));
        }
        doc.automorphism = FreeAutomorphism::make(rank, std::move(ws));
    }
    if (doc.kind == InputDocument::Kind::FilteredMap && doc.map.edges.empty())
        fail(file, lineno, "graph has no edges");
    return doc;
}

InputDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    return parse_document(in, path);
}

std::vector<Rat> parse_phi_assignment(const std::string& text,
                                      const std::vector<std::string>& generators) {
    std::vector<Rat> values(generators.size(), Rat(0));
    std::vector<bool> seen(generators.size(), false);
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = strip(item);
        if (item.empty()) continue;
        std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw parse_error("expected name=value in '" + item + "'");
        std::string name = strip(item.substr(0, eq));
        std::string val = strip(item.substr(eq + 1));
        std::size_t gi = generators.size();
        for (std::size_t i = 0; i < generators.size(); i++)
            if (generators[i] == name) gi = i;
        if (gi == generators.size())
            throw parse_error("unknown generator '" + name + "' in character");
        if (seen[gi]) throw parse_error("duplicate value for '" + name + "'");
        seen[gi] = true;
        if (val.empty())
            throw parse_error("missing value for '" + name + "' in character");
        try {
            values[gi] = Rat(val);
        } catch (const std::exception&) {
            throw parse_error("bad rational '" + val + "' for '" + name + "'");
        }
    }
    return values;
}

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

}  // namespace mtor
