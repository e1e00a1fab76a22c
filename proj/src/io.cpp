#include "io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace powham {

std::string tournament_to_text(const Tournament &t) {
    std::ostringstream os;
    os << "tournament " << t.n << "\n";
    for (int u = 0; u < t.n; ++u)
        t.out[u].for_each([&](int v) { os << u << " " << v << "\n"; });
    return os.str();
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string &msg) {
    fail(Errc::parse_error, "line " + std::to_string(line) + ": " + msg);
}

} // namespace

Tournament tournament_from_text(const std::string &text) {
    std::istringstream is(text);
    std::string header, word;
    int lineno = 1;
    if (!std::getline(is, header)) parse_fail(1, "empty file");
    std::istringstream hs(header);
    int n = -1;
    if (!(hs >> word) || word != "tournament" || !(hs >> n) || n < 0 || (hs >> word))
        parse_fail(1, "expected 'tournament <n>'");
    std::vector<std::pair<int, int>> edges;
    std::string line;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u >> v) || (ls >> word)) parse_fail(lineno, "expected 'u v'");
        edges.emplace_back(u, v);
    }
    return build_tournament(n, edges); // builder enforces the invariants
}

std::string bipartite_to_text(const BipartiteGraph &g) {
    std::ostringstream os;
    os << "bipartite " << g.na << " " << g.nb << "\n";
    for (int a = 0; a < g.na; ++a)
        g.adj_a[a].for_each([&](int b) { os << a << " " << b << "\n"; });
    return os.str();
}

BipartiteGraph bipartite_from_text(const std::string &text) {
    std::istringstream is(text);
    std::string header, word;
    int lineno = 1;
    if (!std::getline(is, header)) parse_fail(1, "empty file");
    std::istringstream hs(header);
    int na = -1, nb = -1;
    if (!(hs >> word) || word != "bipartite" || !(hs >> na >> nb) || na < 0 || nb < 0 ||
        (hs >> word))
        parse_fail(1, "expected 'bipartite <|A|> <|B|>'");
    BipartiteGraph g(na, nb);
    std::string line;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        int a, b;
        if (!(ls >> a >> b) || (ls >> word)) parse_fail(lineno, "expected 'a b'");
        g.add_edge(a, b);
    }
    return g;
}

std::string read_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    require(f.good(), Errc::parse_error, "cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream f(path, std::ios::binary);
    require(f.good(), Errc::parse_error, "cannot open " + path + " for writing");
    f << content;
}

void save_tournament(const std::string &path, const Tournament &t) {
    write_file(path, tournament_to_text(t));
}

Tournament load_tournament(const std::string &path) {
    return tournament_from_text(read_file(path));
}

void save_bipartite(const std::string &path, const BipartiteGraph &g) {
    write_file(path, bipartite_to_text(g));
}

BipartiteGraph load_bipartite(const std::string &path) {
    return bipartite_from_text(read_file(path));
}

std::string digest_hex(const std::string &bytes) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

} // namespace powham
