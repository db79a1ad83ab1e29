#include "lifo/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "lifo/errors.hpp"

namespace lifo {

using nlohmann::json;

// ---------------------------------------------------------------------------
// files

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path);
    out << content;
    out.flush();
    if (!out) throw ParseError("cannot write file: " + path);
}

// ---------------------------------------------------------------------------
// edge-list format

namespace {

class Interner {
public:
    int id_for(const std::string& name, int line) {
        auto it = ids_.find(name);
        if (it != ids_.end()) return it->second;
        if (static_cast<int>(labels_.size()) >= Digraph::kMaxVertices)
            throw ParseError("more than " + std::to_string(Digraph::kMaxVertices) +
                                 " distinct vertices",
                             line);
        int id = static_cast<int>(labels_.size());
        ids_.emplace(name, id);
        labels_.push_back(name);
        return id;
    }

    void add_edge(int u, int v, const std::string& ut, const std::string& vt, int line) {
        if (u == v) throw ParseError("self-loop at vertex \"" + ut + "\"", line);
        if (!seen_.insert({u, v}).second)
            throw ParseError("duplicate edge \"" + ut + " " + vt + "\"", line);
        edges_.push_back({u, v});
    }

    Digraph finish(int line) const {
        if (labels_.empty()) throw ParseError("no vertices in input", line);
        return Digraph(static_cast<int>(labels_.size()), edges_, labels_);
    }

private:
    std::unordered_map<std::string, int> ids_;
    std::vector<std::string> labels_;
    std::vector<std::pair<int, int>> edges_;
    std::set<std::pair<int, int>> seen_;
};

} // namespace

Digraph parse_edge_list(const std::string& text) {
    Interner graph;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (toks.empty()) continue;
        if (toks.size() == 1) {
            graph.id_for(toks[0], line_no);
            continue;
        }
        if (toks.size() != 2)
            throw ParseError("expected \"u v\" or a single vertex name, got " +
                                 std::to_string(toks.size()) + " tokens",
                             line_no);
        int u = graph.id_for(toks[0], line_no);
        int v = graph.id_for(toks[1], line_no);
        graph.add_edge(u, v, toks[0], toks[1], line_no);
    }
    return graph.finish(std::max(line_no, 1));
}

std::string serialize_edge_list(const Digraph& g) {
    std::string out;
    for (int v = 0; v < g.vertex_count(); ++v) {
        out += g.label(v);
        out += '\n';
    }
    for (auto [u, v] : g.edges()) {
        out += g.label(u);
        out += ' ';
        out += g.label(v);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// DOT subset

namespace {

struct DotToken {
    enum Type { kId, kSym, kEnd };
    Type type;
    std::string text;
    int line;
};

bool is_id_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

std::string lowercase(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::vector<DotToken> dot_tokenize(const std::string& text) {
    std::vector<DotToken> out;
    int line = 1;
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '#' || (c == '/' && i + 1 < n && text[i + 1] == '/')) {
            while (i < n && text[i] != '\n') ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && text[i + 1] == '*') {
            i += 2;
            while (i + 1 < n && !(text[i] == '*' && text[i + 1] == '/')) {
                if (text[i] == '\n') ++line;
                ++i;
            }
            if (i + 1 >= n) throw ParseError("unterminated comment", line);
            i += 2;
            continue;
        }
        if (c == '-') {
            if (i + 1 < n && text[i + 1] == '>') {
                out.push_back({DotToken::kSym, "->", line});
                i += 2;
                continue;
            }
            if (i + 1 < n && text[i + 1] == '-')
                throw ParseError("undirected edges are not supported", line);
            throw ParseError("unexpected character '-'", line);
        }
        if (c == '{' || c == '}' || c == ';' || c == '[' || c == ']' || c == '=' || c == ',') {
            out.push_back({DotToken::kSym, std::string(1, c), line});
            ++i;
            continue;
        }
        if (c == '"') {
            int start_line = line;
            std::string name;
            ++i;
            while (i < n && text[i] != '"') {
                if (text[i] == '\\' && i + 1 < n && (text[i + 1] == '"' || text[i + 1] == '\\')) {
                    name += text[i + 1];
                    i += 2;
                    continue;
                }
                if (text[i] == '\n') ++line;
                name += text[i];
                ++i;
            }
            if (i >= n) throw ParseError("unterminated quoted name", start_line);
            ++i;
            out.push_back({DotToken::kId, name, start_line});
            continue;
        }
        if (is_id_char(c)) {
            size_t j = i;
            while (j < n && is_id_char(text[j])) ++j;
            out.push_back({DotToken::kId, text.substr(i, j - i), line});
            i = j;
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line);
    }
    out.push_back({DotToken::kEnd, "", line});
    return out;
}

class DotParser {
public:
    explicit DotParser(const std::string& text) : toks_(dot_tokenize(text)) {}

    Digraph parse() {
        if (at_id() && lowercase(cur().text) == "strict")
            throw ParseError("unsupported construct: strict", cur().line);
        if (at_id() && lowercase(cur().text) == "graph")
            throw ParseError("only digraph inputs are supported", cur().line);
        if (!at_id() || lowercase(cur().text) != "digraph")
            throw ParseError("expected \"digraph\"", cur().line);
        ++pos_;
        if (at_id()) ++pos_; // optional graph name
        expect_sym("{");
        while (!at_sym("}")) statement();
        int close_line = cur().line;
        ++pos_; // consume "}"
        if (cur().type != DotToken::kEnd)
            throw ParseError("unexpected content after closing brace", cur().line);
        return graph_.finish(close_line);
    }

private:
    const DotToken& cur() const { return toks_[pos_]; }
    bool at_id() const { return cur().type == DotToken::kId; }
    bool at_sym(const char* s) const { return cur().type == DotToken::kSym && cur().text == s; }

    void expect_sym(const char* s) {
        if (!at_sym(s)) throw ParseError(std::string("expected \"") + s + "\"", cur().line);
        ++pos_;
    }

    void skip_attr_lists() {
        while (at_sym("[")) {
            int open_line = cur().line;
            ++pos_;
            while (!at_sym("]")) {
                if (cur().type == DotToken::kEnd)
                    throw ParseError("unterminated attribute list", open_line);
                if (at_sym("[") || at_sym("{") || at_sym("}"))
                    throw ParseError("unsupported construct inside attribute list", cur().line);
                ++pos_;
            }
            ++pos_;
        }
    }

    void statement() {
        if (cur().type == DotToken::kEnd) throw ParseError("missing closing brace", cur().line);
        if (at_sym(";")) {
            ++pos_;
            return;
        }
        if (!at_id()) throw ParseError("expected a vertex name", cur().line);
        std::string word = lowercase(cur().text);
        if (word == "subgraph")
            throw ParseError("unsupported construct: subgraph", cur().line);
        if (word == "node" || word == "edge" || word == "graph") {
            int line = cur().line;
            ++pos_;
            if (!at_sym("["))
                throw ParseError("reserved word \"" + word + "\" used as a vertex name", line);
            skip_attr_lists();
            if (at_sym(";")) ++pos_;
            return;
        }
        // vertex or edge chain
        std::string prev_name = cur().text;
        int prev = graph_.id_for(prev_name, cur().line);
        ++pos_;
        if (at_sym("="))
            throw ParseError("unsupported construct: attribute assignment", cur().line);
        while (at_sym("->")) {
            int arrow_line = cur().line;
            ++pos_;
            if (!at_id()) throw ParseError("expected a vertex name after \"->\"", cur().line);
            std::string name = cur().text;
            if (lowercase(name) == "subgraph")
                throw ParseError("unsupported construct: subgraph", cur().line);
            int next = graph_.id_for(name, cur().line);
            graph_.add_edge(prev, next, prev_name, name, arrow_line);
            prev = next;
            prev_name = name;
            ++pos_;
        }
        skip_attr_lists();
        if (at_sym(";")) ++pos_;
    }

    std::vector<DotToken> toks_;
    size_t pos_ = 0;
    Interner graph_;
};

} // namespace

Digraph parse_dot_subset(const std::string& text) { return DotParser(text).parse(); }

namespace {

// First meaningful token decides the format; line comments of either style
// are skipped, and a block comment can only open a DOT file.
bool looks_like_dot(const std::string& text) {
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '#' || (c == '/' && i + 1 < n && text[i + 1] == '/')) {
            while (i < n && text[i] != '\n') ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && text[i + 1] == '*') return true;
        break;
    }
    size_t j = i;
    while (j < n && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '{') ++j;
    std::string tok = lowercase(text.substr(i, j - i));
    return tok == "digraph" || tok == "strict" || tok == "graph";
}

} // namespace

Digraph parse_graph(const std::string& text) {
    if (looks_like_dot(text)) return parse_dot_subset(text);
    return parse_edge_list(text);
}

Digraph load_graph_file(const std::string& path) { return parse_graph(read_text_file(path)); }

// ---------------------------------------------------------------------------
// random graphs

namespace {

uint64_t splitmix64(uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

Digraph generate_random(const GeneratorConfig& cfg) {
    if (cfg.n < 1 || cfg.n > Digraph::kMaxVertices)
        throw std::invalid_argument("generate_random: n must be in [1, " +
                                    std::to_string(Digraph::kMaxVertices) + "]");
    if (!(cfg.p >= 0.0 && cfg.p <= 1.0))
        throw std::invalid_argument("generate_random: p must be in [0, 1]");
    const uint64_t threshold = static_cast<uint64_t>(cfg.p * 9007199254740992.0); // p * 2^53
    uint64_t state = cfg.seed;
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < cfg.n; ++u)
        for (int v = 0; v < cfg.n; ++v) {
            if (u == v) continue;
            if ((splitmix64(state) >> 11) < threshold) edges.push_back({u, v});
        }
    return Digraph(cfg.n, edges);
}

// ---------------------------------------------------------------------------
// graph hash

std::string graph_hash(const Digraph& g) {
    std::string canon = "n " + std::to_string(g.vertex_count()) + "\n";
    auto edges = g.edges();
    std::sort(edges.begin(), edges.end());
    for (auto [u, v] : edges)
        canon += std::to_string(u) + " " + std::to_string(v) + "\n";
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---------------------------------------------------------------------------
// certificate JSON

std::string kind_name(CertificateKind k) {
    switch (k) {
        case CertificateKind::elimination_forest: return "elimination_forest";
        case CertificateKind::shelter: return "shelter";
        case CertificateKind::haven: return "haven";
        case CertificateKind::script: return "script";
        case CertificateKind::solve_report: return "solve_report";
        case CertificateKind::play_trace: return "play_trace";
    }
    return "unknown";
}

namespace {

const char* kSpecVersion = "1.0";

json vset_json(VertexSet s) {
    json a = json::array();
    for (int v : s) a.push_back(v);
    return a;
}

json word_json(const std::vector<int>& word) {
    json a = json::array();
    for (int v : word) a.push_back(v);
    return a;
}

json forest_node_json(const EliminationNode& nd) {
    json j;
    j["vertex"] = nd.vertex;
    j["scope"] = vset_json(nd.scope);
    json ch = json::array();
    for (const auto& c : nd.children) ch.push_back(forest_node_json(c));
    j["children"] = std::move(ch);
    return j;
}

json payload_json(const EliminationForest& f) {
    json roots = json::array();
    for (const auto& r : f.roots) roots.push_back(forest_node_json(r));
    return json{{"roots", std::move(roots)}};
}

json payload_json(const StrongShelter& s) {
    json sets = json::array();
    for (VertexSet m : s.sets) sets.push_back(vset_json(m));
    return json{{"sets", std::move(sets)}};
}

json payload_json(const LifoHaven& h) {
    json table = json::array();
    for (const auto& [stack, space] : h.table)
        table.push_back(json{{"stack", word_json(stack)}, {"space", vset_json(space)}});
    return json{{"order", h.order}, {"table", std::move(table)}};
}

json payload_json(const SearcherScript& sc) {
    json moves = json::array();
    for (const ScriptMove& m : sc.moves) {
        if (m.place)
            moves.push_back(json{{"op", "place"}, {"vertex", m.vertex}});
        else
            moves.push_back(json{{"op", "remove"}});
    }
    return json{{"moves", std::move(moves)}};
}

json payload_json(const SolveReport& r) {
    json table = json::array();
    for (const auto& [pos, mv] : r.strategy)
        table.push_back(json{{"stack", word_json(pos.stack.word())},
                             {"space", vset_json(pos.space)},
                             {"move", word_json(mv.word())}});
    return json{{"variant", variant_name(r.variant)},
                {"monotone", r.monotone},
                {"stationary", r.stationary},
                {"search_number", r.search_number},
                {"strategy", std::move(table)}};
}

json payload_json(const PlayTrace& t) {
    json steps = json::array();
    for (const Position& p : t.steps)
        steps.push_back(json{{"stack", word_json(p.stack.word())}, {"space", vset_json(p.space)}});
    return json{{"variant", variant_name(t.variant)},
                {"k", t.k},
                {"winner", t.winner == Winner::searcher ? "searcher" : "fugitive"},
                {"note", t.note},
                {"steps", std::move(steps)}};
}

// --- decoding helpers ---

const json& get_field(const json& j, const char* key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(ctx + ": missing field \"" + key + "\"");
    return *it;
}

int get_int(const json& j, const char* key, const std::string& ctx) {
    const json& f = get_field(j, key, ctx);
    if (!f.is_number_integer())
        throw ParseError(ctx + ": field \"" + key + "\" must be an integer");
    return f.get<int>();
}

bool get_bool(const json& j, const char* key, const std::string& ctx) {
    const json& f = get_field(j, key, ctx);
    if (!f.is_boolean()) throw ParseError(ctx + ": field \"" + key + "\" must be a boolean");
    return f.get<bool>();
}

std::string get_string(const json& j, const char* key, const std::string& ctx) {
    const json& f = get_field(j, key, ctx);
    if (!f.is_string()) throw ParseError(ctx + ": field \"" + key + "\" must be a string");
    return f.get<std::string>();
}

const json& get_array(const json& j, const char* key, const std::string& ctx) {
    const json& f = get_field(j, key, ctx);
    if (!f.is_array()) throw ParseError(ctx + ": field \"" + key + "\" must be an array");
    return f;
}

int vertex_id_from(const json& e, const std::string& ctx) {
    if (!e.is_number_integer()) throw ParseError(ctx + ": vertex ids must be integers");
    long long v = e.get<long long>();
    if (v < 0 || v >= Digraph::kMaxVertices)
        throw ParseError(ctx + ": vertex id " + std::to_string(v) + " is out of range");
    return static_cast<int>(v);
}

VertexSet decode_vertex_set(const json& a, const std::string& ctx) {
    if (!a.is_array()) throw ParseError(ctx + " must be an array of vertex ids");
    VertexSet s;
    for (const json& e : a) {
        int v = vertex_id_from(e, ctx);
        if (s.contains(v))
            throw ParseError(ctx + ": duplicate vertex id " + std::to_string(v));
        s |= VertexSet::single(v);
    }
    return s;
}

std::vector<int> decode_word(const json& a, const std::string& ctx) {
    if (!a.is_array()) throw ParseError(ctx + " must be an array of vertex ids");
    std::vector<int> word;
    for (const json& e : a) word.push_back(vertex_id_from(e, ctx));
    return word;
}

SearcherStack decode_stack(const json& a, const std::string& ctx) {
    try {
        return SearcherStack(decode_word(a, ctx));
    } catch (const std::invalid_argument& e) {
        throw ParseError(ctx + ": " + e.what());
    }
}

GameVariant decode_variant(const json& j, const std::string& ctx) {
    std::string name = get_string(j, "variant", ctx);
    try {
        return variant_from_name(name);
    } catch (const std::invalid_argument&) {
        throw ParseError(ctx + ": unknown variant \"" + name + "\"");
    }
}

EliminationNode decode_forest_node(const json& j, int depth) {
    const std::string ctx = "elimination forest node";
    if (depth > Digraph::kMaxVertices)
        throw ParseError("elimination forest nests deeper than " +
                         std::to_string(Digraph::kMaxVertices) + " levels");
    if (!j.is_object()) throw ParseError(ctx + " must be an object");
    EliminationNode nd;
    nd.vertex = get_int(j, "vertex", ctx);
    if (nd.vertex < 0 || nd.vertex >= Digraph::kMaxVertices)
        throw ParseError(ctx + ": vertex id " + std::to_string(nd.vertex) + " is out of range");
    nd.scope = decode_vertex_set(get_field(j, "scope", ctx), ctx + " scope");
    for (const json& c : get_array(j, "children", ctx))
        nd.children.push_back(decode_forest_node(c, depth + 1));
    return nd;
}

CertificatePayload decode_payload(CertificateKind kind, const json& p) {
    switch (kind) {
        case CertificateKind::elimination_forest: {
            EliminationForest f;
            for (const json& r : get_array(p, "roots", "elimination forest"))
                f.roots.push_back(decode_forest_node(r, 1));
            return f;
        }
        case CertificateKind::shelter: {
            StrongShelter s;
            for (const json& m : get_array(p, "sets", "shelter"))
                s.sets.push_back(decode_vertex_set(m, "shelter set"));
            return s;
        }
        case CertificateKind::haven: {
            LifoHaven h;
            h.order = get_int(p, "order", "haven");
            for (const json& e : get_array(p, "table", "haven")) {
                if (!e.is_object()) throw ParseError("haven table entries must be objects");
                std::vector<int> stack =
                    decode_word(get_field(e, "stack", "haven entry"), "haven entry stack");
                VertexSet space =
                    decode_vertex_set(get_field(e, "space", "haven entry"), "haven entry space");
                if (!h.table.emplace(std::move(stack), space).second)
                    throw ParseError("haven table repeats a stack");
            }
            return h;
        }
        case CertificateKind::script: {
            SearcherScript sc;
            for (const json& m : get_array(p, "moves", "script")) {
                if (!m.is_object()) throw ParseError("script moves must be objects");
                std::string op = get_string(m, "op", "script move");
                if (op == "place") {
                    int v = get_int(m, "vertex", "script placement");
                    if (v < 0 || v >= Digraph::kMaxVertices)
                        throw ParseError("script placement: vertex id " + std::to_string(v) +
                                         " is out of range");
                    sc.moves.push_back({true, v});
                } else if (op == "remove") {
                    sc.moves.push_back({false, -1});
                } else {
                    throw ParseError("script move: unknown op \"" + op + "\"");
                }
            }
            return sc;
        }
        case CertificateKind::solve_report: {
            SolveReport r;
            r.variant = decode_variant(p, "solve report");
            r.monotone = get_bool(p, "monotone", "solve report");
            r.stationary = get_bool(p, "stationary", "solve report");
            r.search_number = get_int(p, "search_number", "solve report");
            for (const json& e : get_array(p, "strategy", "solve report")) {
                if (!e.is_object()) throw ParseError("strategy entries must be objects");
                Position pos{decode_stack(get_field(e, "stack", "strategy entry"),
                                          "strategy entry stack"),
                             decode_vertex_set(get_field(e, "space", "strategy entry"),
                                               "strategy entry space")};
                SearcherStack mv =
                    decode_stack(get_field(e, "move", "strategy entry"), "strategy entry move");
                if (!r.strategy.emplace(std::move(pos), std::move(mv)).second)
                    throw ParseError("strategy table repeats a position");
            }
            return r;
        }
        case CertificateKind::play_trace: {
            PlayTrace t;
            t.variant = decode_variant(p, "play trace");
            t.k = get_int(p, "k", "play trace");
            std::string winner = get_string(p, "winner", "play trace");
            if (winner == "searcher")
                t.winner = Winner::searcher;
            else if (winner == "fugitive")
                t.winner = Winner::fugitive;
            else
                throw ParseError("play trace: unknown winner \"" + winner + "\"");
            t.note = get_string(p, "note", "play trace");
            for (const json& s : get_array(p, "steps", "play trace")) {
                if (!s.is_object()) throw ParseError("play trace steps must be objects");
                t.steps.push_back(
                    Position{decode_stack(get_field(s, "stack", "play trace step"),
                                          "play trace step stack"),
                             decode_vertex_set(get_field(s, "space", "play trace step"),
                                               "play trace step space")});
            }
            return t;
        }
    }
    throw ParseError("unknown certificate kind");
}

} // namespace

CertificateDocument make_certificate(const Digraph& g, CertificatePayload payload) {
    return CertificateDocument{graph_hash(g), std::move(payload)};
}

std::string encode_certificate(const CertificateDocument& doc) {
    json j;
    j["spec_version"] = kSpecVersion;
    j["kind"] = kind_name(doc.kind());
    j["graph_hash"] = doc.graph_hash;
    j["payload"] = std::visit([](const auto& p) { return payload_json(p); }, doc.payload);
    return j.dump(2) + "\n";
}

CertificateDocument decode_certificate(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("certificate must be a JSON object");
    std::string version = get_string(j, "spec_version", "certificate");
    if (version != kSpecVersion)
        throw ParseError("unsupported spec_version \"" + version + "\", expected \"" +
                         kSpecVersion + "\"");
    std::string kind_str = get_string(j, "kind", "certificate");
    CertificateKind kind;
    if (kind_str == "elimination_forest")
        kind = CertificateKind::elimination_forest;
    else if (kind_str == "shelter")
        kind = CertificateKind::shelter;
    else if (kind_str == "haven")
        kind = CertificateKind::haven;
    else if (kind_str == "script")
        kind = CertificateKind::script;
    else if (kind_str == "solve_report")
        kind = CertificateKind::solve_report;
    else if (kind_str == "play_trace")
        kind = CertificateKind::play_trace;
    else
        throw ParseError("unknown certificate kind \"" + kind_str + "\"");
    std::string hash = get_string(j, "graph_hash", "certificate");
    if (hash.size() != 16 || hash.find_first_not_of("0123456789abcdef") != std::string::npos)
        throw ParseError("graph_hash must be 16 lowercase hex digits");
    const json& payload = get_field(j, "payload", "certificate");
    if (!payload.is_object()) throw ParseError("certificate payload must be an object");
    return CertificateDocument{std::move(hash), decode_payload(kind, payload)};
}

// ---------------------------------------------------------------------------
// certificate verification

namespace {

std::string verify_kind(const Digraph& g, const EliminationForest& f) {
    int depth = verify_elimination_forest(g, f);
    return "ok: elimination_forest; depth " + std::to_string(depth);
}

std::string verify_kind(const Digraph& g, const StrongShelter& s) {
    int thickness = verify_shelter(g, s);
    return "ok: shelter; thickness " + std::to_string(thickness);
}

std::string verify_kind(const Digraph& g, const LifoHaven& h) {
    verify_haven(g, h);
    return "ok: haven; order " + std::to_string(h.order);
}

std::string verify_kind(const Digraph& g, const SearcherScript& sc) {
    int depth = 0;
    for (GameVariant variant : {GameVariant::i, GameVariant::isc}) {
        ReplayResult rr;
        try {
            rr = replay_script(g, variant, sc);
        } catch (const StrategyError& e) {
            throw CertificateError(std::string("script is not executable: ") + e.what());
        }
        if (rr.trace.winner != Winner::searcher)
            throw CertificateError("script does not capture the fugitive in variant " +
                                   variant_name(variant) + " (" + rr.trace.note + ")");
        depth = std::max(depth, rr.max_depth);
    }
    return "ok: script; captures in variants i and isc with stack depth " + std::to_string(depth);
}

std::string verify_kind(const Digraph& g, const SolveReport& r) {
    if (r.search_number < 1 || r.search_number > g.vertex_count())
        throw CertificateError("solve report: search number " + std::to_string(r.search_number) +
                               " is out of range for " + std::to_string(g.vertex_count()) +
                               " vertices");
    SolveOptions opt{r.variant, r.monotone, r.stationary};
    int fresh = search_number(g, opt);
    if (fresh != r.search_number)
        throw CertificateError("solve report claims search number " +
                               std::to_string(r.search_number) + " but recomputation gives " +
                               std::to_string(fresh));

    // Walk the closure of the stored table from the start position. Every
    // branch must stay admissible and reach a capture without revisiting a
    // position on its own path.
    const int k = r.search_number;
    auto expand = [&](const Position& pos) -> std::vector<Position> {
        if (pos.space.empty()) return {};
        auto legal = legal_stack_moves(g, r.variant, pos, k);
        std::vector<SearcherStack> allowed;
        for (const SearcherStack& mv : legal) {
            if (r.stationary && mv.size() < pos.stack.size()) continue;
            if (r.monotone) {
                bool shrinks = true;
                for (VertexSet resp : fugitive_responses(g, r.variant, pos, mv))
                    if (!resp.is_subset_of(pos.space)) {
                        shrinks = false;
                        break;
                    }
                if (!shrinks) continue;
            }
            allowed.push_back(mv);
        }
        if (allowed.empty())
            throw CertificateError("strategy reaches position " + pos.to_string() +
                                   " where no admissible move remains");
        auto it = r.strategy.find(pos);
        if (it == r.strategy.end())
            throw CertificateError("strategy table has no entry for reachable position " +
                                   pos.to_string());
        const SearcherStack& mv = it->second;
        if (std::find(allowed.begin(), allowed.end(), mv) == allowed.end())
            throw CertificateError("strategy move " + mv.to_string() + " at position " +
                                   pos.to_string() + " is not an admissible stack move");
        std::vector<Position> out;
        for (VertexSet resp : fugitive_responses(g, r.variant, pos, mv))
            out.push_back(Position{mv, resp});
        return out;
    };

    enum { kOnPath = 1, kDone = 2 };
    std::map<Position, int> color;
    struct Frame {
        Position pos;
        std::vector<Position> succ;
        size_t next = 0;
    };
    std::vector<Frame> stack;
    Position start = start_position(g);
    color[start] = kOnPath;
    stack.push_back({start, expand(start), 0});
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next == f.succ.size()) {
            color[f.pos] = kDone;
            stack.pop_back();
            continue;
        }
        Position nxt = f.succ[f.next++];
        auto it = color.find(nxt);
        if (it != color.end()) {
            if (it->second == kOnPath)
                throw CertificateError("strategy can revisit position " + nxt.to_string() +
                                       ", so the fugitive escapes forever");
            continue;
        }
        color[nxt] = kOnPath;
        std::vector<Position> succ = expand(nxt);
        stack.push_back({std::move(nxt), std::move(succ), 0});
    }
    return "ok: solve_report; variant " + variant_name(r.variant) + ", search number " +
           std::to_string(r.search_number) + ", " + std::to_string(color.size()) +
           " positions checked";
}

std::string verify_kind(const Digraph& g, const PlayTrace& t) {
    if (t.k < 0) throw CertificateError("play trace has a negative stack bound");
    if (t.steps.empty()) throw CertificateError("play trace has no steps");
    Position start = start_position(g);
    if (!(t.steps.front() == start))
        throw CertificateError("play trace must start at " + start.to_string());
    for (size_t i = 0; i < t.steps.size(); ++i) {
        const Position& pos = t.steps[i];
        const std::string where = "play trace step " + std::to_string(i);
        if (pos.stack.size() > t.k)
            throw CertificateError(where + " uses more than k = " + std::to_string(t.k) +
                                   " searchers");
        if (!is_valid_position(g, t.variant, pos))
            throw CertificateError(where + " is not a valid position: " + pos.to_string());
        if (i == 0) continue;
        const Position& prev = t.steps[i - 1];
        if (prev.space.empty()) throw CertificateError("play trace continues after a capture");
        auto legal = legal_stack_moves(g, t.variant, prev, t.k);
        if (std::find(legal.begin(), legal.end(), pos.stack) == legal.end())
            throw CertificateError(where + ": stack move " + pos.stack.to_string() +
                                   " is illegal from " + prev.to_string());
        if (!is_successor(g, t.variant, prev, pos))
            throw CertificateError(where + ": " + pos.to_string() +
                                   " is not a valid successor of " + prev.to_string());
    }
    bool captured = t.steps.back().space.empty();
    if (t.winner == Winner::searcher && !captured)
        throw CertificateError("play trace claims a searcher win without a capture");
    if (t.winner == Winner::fugitive && captured)
        throw CertificateError("play trace claims a fugitive win but ends in a capture");
    return std::string("ok: play_trace; ") +
           (t.winner == Winner::searcher ? "searcher" : "fugitive") + " wins after " +
           std::to_string(t.steps.size() - 1) + " moves";
}

} // namespace

std::string verify_certificate(const Digraph& g, const CertificateDocument& doc) {
    std::string expected = graph_hash(g);
    if (doc.graph_hash != expected)
        throw CertificateError("graph hash mismatch: certificate was made for " + doc.graph_hash +
                               " but the input hashes to " + expected);
    return std::visit([&](const auto& p) { return verify_kind(g, p); }, doc.payload);
}

} // namespace lifo
