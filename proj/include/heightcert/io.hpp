#ifndef HEIGHTCERT_IO_HPP
#define HEIGHTCERT_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "heightcert/ellcurve.hpp"

namespace hc {

// Line-stanza input format with exact string-encoded rationals:
//
//   # comment
//   field Q(sqrt 5)
//   curve a1=0 a2=0 a3=1 a4=-1 a6=0 cm_discriminant=-4
//   point x=3/2 + 1/2*w y=-1
//   point O
//
// Elements are written in the power basis of the current field with the
// generator spelled `w`: `3/2 + 1/2*w - 2*w^3`.  A `curve` stanza attaches to
// the most recent `field` stanza (default Q); a `point` stanza attaches to
// the most recent curve and is checked to lie on it exactly.

struct ParsedInput {
  FieldRef field;
  std::optional<EllipticCurve> curve;
  std::vector<ECPoint> points;
};

// "Q", "Q(sqrt 5)", "Q(zeta 7)".
FieldRef parse_field_name(const std::string& s);

// Exact element expression in the power basis of K; throws parse errors with
// column information.
FieldElement parse_element(const FieldRef& K, const std::string& s);

// Parse stanza text; `filename` is used in error positions ("file:line:col").
ParsedInput parse_input_text(const std::string& text, const std::string& filename);

// Parse and merge several stanza files in order.
ParsedInput parse_input_files(const std::vector<std::string>& paths);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace hc

#endif  // HEIGHTCERT_IO_HPP
