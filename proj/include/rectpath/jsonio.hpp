#pragma once
// JSON (de)serialization of domains:
//   {"outer": [[x,y],...], "holes": [[[x,y],...], ...]}

#include <string>
#include <variant>
#include <vector>

#include "rectpath/domain.hpp"

namespace rectpath {

// Parses the JSON text; returns validated domain or error.
std::variant<Domain, DomainError> load_domain_json(const std::string& text);
std::variant<Domain, DomainError> load_domain_file(const std::string& path);
std::string domain_to_json(const Domain& d);

}  // namespace rectpath
