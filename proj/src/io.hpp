#ifndef POWHAM_IO_HPP
#define POWHAM_IO_HPP

#include <string>

#include "bipartite.hpp"
#include "tournament.hpp"

namespace powham {

// "tournament <n>" then one "u v" line per edge u->v, lexicographically sorted
std::string tournament_to_text(const Tournament &t);
Tournament tournament_from_text(const std::string &text);
void save_tournament(const std::string &path, const Tournament &t);
Tournament load_tournament(const std::string &path);

// "bipartite <|A|> <|B|>" then "a b" lines with 0-based part-local indices
std::string bipartite_to_text(const BipartiteGraph &g);
BipartiteGraph bipartite_from_text(const std::string &text);
void save_bipartite(const std::string &path, const BipartiteGraph &g);
BipartiteGraph load_bipartite(const std::string &path);

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &content);

// FNV-1a digest of canonical bytes, as hex
std::string digest_hex(const std::string &bytes);

} // namespace powham

#endif
