#pragma once

#include <string>
#include <vector>

#include "vtolctl/log.hpp"

namespace vtolctl {

// Shared between the config parser and the CSV metadata reader: assigns one
// `section.key = tokens` entry into the config, throwing ParseError with
// `where` as the location prefix.
void apply_config_key(ScenarioConfig& c, const std::string& section, const std::string& key,
                      const std::vector<std::string>& toks, const std::string& where);

} // namespace vtolctl
