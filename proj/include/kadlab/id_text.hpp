#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kadlab/node_id.hpp"

namespace kadlab {

// Parse one id written either as a binary string or as hex.  When d is
// known it disambiguates: a string of length d made of 0/1 is binary, a
// string of length d/4 is hex (d must be divisible by 4 for hex).  When d
// is unknown, all-0/1 text is read as binary and anything else as hex.
NodeId parse_id(const std::string& text, std::optional<int> d = std::nullopt);

// One id per line.  Blank lines and lines starting with '#' are skipped.
// The first id fixes d for the rest; malformed or wrong-length lines are
// rejected with their line number.
std::vector<NodeId> parse_ids_text(const std::string& text,
                                   std::optional<int> d = std::nullopt);
std::vector<NodeId> parse_ids_file(const std::string& path,
                                   std::optional<int> d = std::nullopt);

// binary rendering, one id per line
std::string format_ids(const std::vector<NodeId>& ids);

}  // namespace kadlab
