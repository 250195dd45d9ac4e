#pragma once

// Batch reports behind the command-line tool. Every report is a JSON document
// plus an overall verdict; rendering to pretty text or CSV happens here too so
// that every front end prints byte-identical output.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rkp/pearcey_numeric.hpp"

namespace rkp::reports {

enum class Format { json, csv, pretty };

Format parse_format(std::string_view text);
const char* to_string(Format format);

struct Report {
  std::string command;
  bool pass = true;
  nlohmann::json body;
};

Report coeffs(int r, pearcey::Which which, int order);

struct VerifyRequest {
  std::string target;  // ortho | concomitant | psi-init | ode-residual | flow-commute
  int r = 2;
  /// Truncation order; unset selects the smallest sufficient one.
  std::optional<int> order;
  /// Largest m, n for ortho and flow-commute.
  std::optional<int> max;
  /// Largest n for psi-init.
  std::optional<int> n;
};

Report verify(const VerifyRequest& request);

Report flow(int r, int m);

Report pearcey(int r, pearcey::Which which, pearcey::Complex z, int terms, double tolerance);

/// Throws configuration error for CSV on anything but coefficient tables.
std::string render(const Report& report, Format format);

}  // namespace rkp::reports
