#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "taut/combination.hpp"

namespace taut {

/// Parses one graph, e.g. "<1 2 e0>_0 <3 4 e1>_0 <e0 e1>_1". Vertices keep
/// bracket order. Throws InputError on malformed text; validity is not checked.
DecoratedGraph parse_graph(std::string_view text);

/// Parses a sum of rational multiples of graphs. "0" is the empty sum.
FormalSum parse_sum(std::string_view text);

/// As parse_sum, but coefficients may also be linear forms: "c3*G" or
/// "(2*c1 - 1/3*c3)*G". Plain rationals are rejected.
SymbolicSum parse_symbolic_sum(std::string_view text);

/// Prints brackets in vertex order; legs ascending, then internal half-edges
/// by edge index, internal labels renumbered e0, e1, ... .
std::string to_gwi(const DecoratedGraph& g);
std::string to_gwi(const CanonicalForm& form);
std::string to_gwi(const FormalSum& s);
std::string to_gwi(const SymbolicSum& s);
std::string to_string(const LinearForm& f);

/// Non-comment lines of a gwi file plus "# key: value" header comments.
struct GwiDocument {
  std::map<std::string, std::string> headers;
  std::vector<std::string> lines;
};

/// Throws InputError if the file cannot be read.
GwiDocument read_gwi_file(const std::filesystem::path& path);

/// All non-comment lines joined into one sum.
FormalSum read_sum_file(const std::filesystem::path& path);

}  // namespace taut
