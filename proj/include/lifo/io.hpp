#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "lifo/certificates.hpp"
#include "lifo/cyclerank.hpp"
#include "lifo/digraph.hpp"
#include "lifo/game.hpp"

namespace lifo {

/**
 * Edge-list text: one "u v" edge per line, '#' starts a comment, a lone
 * token declares an isolated vertex. Vertex names become labels; dense ids
 * follow first appearance. Self-loops, duplicate edges and malformed lines
 * raise ParseError with the line number.
 */
Digraph parse_edge_list(const std::string& text);

/**
 * Conservative DOT subset: digraph [name] { a -> b -> c; d; } where
 * attribute lists in brackets are dropped. Undirected edges, subgraphs,
 * ports, nesting and attribute assignments are rejected.
 */
Digraph parse_dot_subset(const std::string& text);

// Dispatches on the first token: "digraph" selects the DOT parser.
Digraph parse_graph(const std::string& text);
Digraph load_graph_file(const std::string& path);

// Vertex declaration lines (id order) then edge lines, using labels.
// parse_edge_list returns an identical graph.
std::string serialize_edge_list(const Digraph& g);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

struct GeneratorConfig {
    int n = 1;
    double p = 0.5;
    uint64_t seed = 0;
};

/**
 * Seeded random digraph: ordered pairs (u,v), u != v, scanned with u outer
 * and v inner ascending, each kept independently with probability p. One
 * splitmix64 draw per pair; pair (u,v) is kept iff draw >> 11 < floor(p *
 * 2^53). Fully reproducible from (n, p, seed).
 */
Digraph generate_random(const GeneratorConfig& cfg);

// 64-bit FNV-1a in hex over the canonical listing: line "n <count>", then
// the edges as sorted "u v" id lines, each newline-terminated.
std::string graph_hash(const Digraph& g);

enum class CertificateKind {
    elimination_forest,
    shelter,
    haven,
    script,
    solve_report,
    play_trace,
};

std::string kind_name(CertificateKind k);

// Alternatives are ordered to match CertificateKind.
using CertificatePayload = std::variant<EliminationForest, StrongShelter, LifoHaven,
                                        SearcherScript, SolveReport, PlayTrace>;

struct CertificateDocument {
    std::string graph_hash;
    CertificatePayload payload;

    CertificateKind kind() const { return static_cast<CertificateKind>(payload.index()); }
};

CertificateDocument make_certificate(const Digraph& g, CertificatePayload payload);

std::string encode_certificate(const CertificateDocument& doc);

// Throws ParseError on malformed JSON or schema violations.
CertificateDocument decode_certificate(const std::string& json_text);

/**
 * Full check of a decoded certificate against a graph: the stored hash must
 * match graph_hash(g) (checked first), then the kind-specific structural
 * verification runs. Returns a one-line human-readable summary. Throws
 * CertificateError on any failure.
 */
std::string verify_certificate(const Digraph& g, const CertificateDocument& doc);

} // namespace lifo
