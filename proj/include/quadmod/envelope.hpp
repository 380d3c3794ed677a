#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>
#include <string_view>

#include "json.hpp"

#include "quadmod/errors.hpp"

namespace quadmod {

// Complex literal of the form "x+yi" / "x-yi", optional spaces.
inline std::complex<double> parse_complex(std::string_view text) {
  std::string compact;
  compact.reserve(text.size());
  for (const char ch : text) {
    if (ch != ' ') compact.push_back(ch);
  }
  const char* p = compact.c_str();
  char* end = nullptr;
  const double re = std::strtod(p, &end);
  if (end == p) throw invalid_input("parse_complex: expected \"x+yi\", got \"" + compact + "\"");
  const char* q = end;
  const double im = std::strtod(q, &end);
  if (end == q || *end != 'i' || *(end + 1) != '\0') {
    throw invalid_input("parse_complex: expected \"x+yi\", got \"" + compact + "\"");
  }
  return {re, im};
}

// Output envelope of a CLI command: echoed inputs, numeric outputs and solver
// diagnostics.  Serialization is deterministic and round-trips every double
// to the identical bit pattern.
struct ResultEnvelope {
  std::string command;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
  nlohmann::ordered_json diagnostics = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const {
    for (const auto& section : {outputs, diagnostics}) {
      for (const auto& [key, value] : section.items()) {
        if (value.is_number_float() && !std::isfinite(value.template get<double>())) {
          throw solver_failure("envelope: non-finite value for key \"" + key + "\"");
        }
      }
    }
    nlohmann::ordered_json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["diagnostics"] = diagnostics;
    return j;
  }

  std::string dump() const { return to_json().dump(2) + "\n"; }
};

}  // namespace quadmod
