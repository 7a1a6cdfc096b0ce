#pragma once

// Design documents (JSON, schema "od-forge/1") and the CSV / LaTeX / text
// renderings. Labels are written as integers with u_1 in the lowest bit.

#include <string>

#include "odforge/design.hpp"
#include "odforge/ssi.hpp"

namespace odforge {

inline constexpr const char* kSchema = "od-forge/1";

/// "pass", "fail" or "skipped" per check.
struct VerificationStatus {
  std::string symbolic = "skipped";
  std::string numeric = "skipped";
  std::uint64_t seed = 0;
  int trials = 0;
  friend bool operator==(const VerificationStatus&, const VerificationStatus&) = default;
};

struct DesignDocument {
  DesignMatrix design;
  VerificationStatus verification;
  friend bool operator==(const DesignDocument&, const DesignDocument&) = default;
};

std::string render_json(const DesignDocument& doc);
/// Throws ParseError on malformed input or inconsistent content.
DesignDocument parse_json(const std::string& text);

/// Grid with a label column and a label header row.
std::string render_csv(const DesignMatrix& d);
/// pmatrix body, entries such as -z_{3}^{*}.
std::string render_latex(const DesignMatrix& d);
/// Aligned grid, at most kTextCap rows and columns.
inline constexpr std::size_t kTextCap = 32;
std::string render_text(const DesignMatrix& d);

std::string render_ssi_json(const SSIdentity& id, const IdentityCheck& check);

}  // namespace odforge
