#pragma once

// Static SVG figures of a configuration. Derived layers are computed on the
// fly in double precision unless the document caches them; output bytes are
// deterministic for a fixed document and layer set.

#include <string>
#include <vector>

#include "config_io.hpp"

namespace pentagram {

struct RenderResult {
  std::string svg;
  bool partial = false;          // a requested layer degenerated and was skipped
  std::vector<std::string> skipped;
};

// `show`: subset of {A,B,C,K,L,D,E,O,J,X,circles,klines}; empty means {A}.
RenderResult render_svg(const ConfigDocument& doc, const std::vector<std::string>& show);

std::vector<std::string> parse_show_list(const std::string& csv);  // throws std::invalid_argument

}  // namespace pentagram
