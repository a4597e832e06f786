#pragma once

#include "pkmu/structure.hpp"

#include <stdexcept>
#include <string>

namespace pkmu {

/// Ingestion failure. Syntax errors carry the 1-based line (and column when
/// known); semantic rejections (Jacobi, eta mismatch, axiom failures) carry
/// their witness in the message with line = 0.
struct DocumentError : std::runtime_error {
  explicit DocumentError(const std::string& msg) : std::runtime_error(msg) {}
  DocumentError(const std::string& msg, int line_no)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
  DocumentError(const std::string& msg, int line_no, int column_no)
      : std::runtime_error("line " + std::to_string(line_no) + ", column " +
                           std::to_string(column_no) + ": " + msg),
        line(line_no),
        column(column_no) {}

  int line = 0;
  int column = 0;
};

/// Parses the line-oriented structure document format:
///
///   [dim]     dimension (one integer)
///   [chart]   coordinate names (coordinate frames only)
///   [frame]   `basis xi e1 e2`, then `bracket e1 e2 = 2*xi + sqrt2*e1` lines
///             (abstract frame) or `vector e1 = dx + x*z*dy - 2*y*dz` lines
///             (coordinate frame; exactly one d<coord> factor per term)
///   [metric]  `g e1 e2 = 1` (symmetric, unspecified entries are 0)
///   [phi]     `phi e1 = e1 - sqrt2*e2` (unspecified columns are 0)
///   [eta]     `eta xi = 1` (optional; cross-checked against g(., xi))
///
/// `#` starts a comment. `xi` is a reserved label bound to index 0. Ingestion
/// rejects on parse errors, Jacobi violations, an eta/metric mismatch, or a
/// failing almost paracontact axiom; compatibility and d(eta) = Phi are left
/// to the verification pipeline.
ParacontactStructure load_document(const std::string& text);

/// Canonical document for a structure; load_document inverts it
/// tensor-by-tensor when the frame's label 0 is `xi`.
std::string serialize(const ParacontactStructure& s);

}  // namespace pkmu
