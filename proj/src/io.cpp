#include "heightcert/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace hc {

namespace {

// ---------------------------------------------------------------------------
// Element expressions: sum of terms  r | r*w^k | w^k  with exact rationals.

struct ElemParser {
  const std::string& s;
  size_t pos = 0;

  explicit ElemParser(const std::string& text) : s(text) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error("col " + std::to_string(pos + 1) + ": " + msg);
  }
  void skip_ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  Int parse_int() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
    if (pos == start) fail("expected a number");
    return Int(s.substr(start, pos - start));
  }

  Rat parse_rational() {
    Int num = parse_int();
    if (peek() == '/') {
      ++pos;
      Int den = parse_int();
      if (sgn(den) == 0) fail("zero denominator");
      Rat r(num, den);
      r.canonicalize();
      return r;
    }
    return Rat(num);
  }

  // r, r*w^k, or w^k; the sign is handled by the caller.
  void parse_term(const FieldRef& K, std::vector<Rat>& coords, int sign) {
    Rat coeff(1);
    bool have_coeff = false;
    if (std::isdigit((unsigned char)peek())) {
      coeff = parse_rational();
      have_coeff = true;
    }
    long power = 0;
    if (peek() == '*' || peek() == 'w') {
      if (peek() == '*') {
        if (!have_coeff) fail("'*' without a coefficient");
        ++pos;
      }
      if (peek() != 'w') fail("expected the generator 'w'");
      ++pos;
      power = 1;
      if (peek() == '^') {
        ++pos;
        Int e = parse_int();
        if (e > 64) fail("generator power too large");
        power = e.get_si();
      }
    } else if (!have_coeff) {
      fail("expected a rational or the generator 'w'");
    }
    if (power >= K->degree)
      fail("power w^" + std::to_string(power) + " outside the field (degree " +
           std::to_string(K->degree) + ")");
    coords[(size_t)power] += sign * coeff;
  }

  FieldElement parse(const FieldRef& K) {
    std::vector<Rat> coords((size_t)K->degree, Rat(0));
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
    }
    parse_term(K, coords, sign);
    while (!eof()) {
      char c = peek();
      if (c == '+') sign = 1;
      else if (c == '-') sign = -1;
      else fail(std::string("unexpected character '") + c + "'");
      ++pos;
      parse_term(K, coords, sign);
    }
    return fe_from_coords(K, coords);
  }
};

// ---------------------------------------------------------------------------
// Stanza lines: keyword followed by key=value assignments; values may contain
// spaces (element expressions), so a new assignment starts only at a word of
// the shape ident=...

struct Assignment {
  std::string key;
  std::string value;
  size_t col = 0;  // 1-based column of the key
};

bool is_ident_char(char c) {
  return std::isalnum((unsigned char)c) || c == '_';
}

// Splits the remainder of a stanza line into assignments; bare `O` (the
// identity point) comes back as a key with empty value.
std::vector<Assignment> split_assignments(const std::string& line, size_t from) {
  std::vector<Assignment> out;
  size_t i = from;
  while (i < line.size()) {
    while (i < line.size() && std::isspace((unsigned char)line[i])) ++i;
    if (i >= line.size()) break;
    size_t start = i;
    size_t j = i;
    while (j < line.size() && is_ident_char(line[j])) ++j;
    size_t eq = j;
    while (eq < line.size() && std::isspace((unsigned char)line[eq])) ++eq;
    if (j > i && eq < line.size() && line[eq] == '=') {
      // New assignment ident = value...
      Assignment a;
      a.key = line.substr(i, j - i);
      a.col = start + 1;
      i = eq + 1;
      size_t vstart = i;
      // The value extends until the next `ident =` or `ident=` boundary.
      // An identifier followed by '=' opens the next assignment; '=' never
      // occurs inside an element expression, so this is unambiguous.
      size_t k = i;
      size_t vend = line.size();
      while (k < line.size()) {
        if (is_ident_char(line[k]) && (k == 0 || std::isspace((unsigned char)line[k - 1]))) {
          size_t t = k;
          while (t < line.size() && is_ident_char(line[t])) ++t;
          size_t teq = t;
          while (teq < line.size() && std::isspace((unsigned char)line[teq])) ++teq;
          if (teq < line.size() && line[teq] == '=') {
            vend = k;
            break;
          }
        }
        ++k;
      }
      a.value = line.substr(vstart, vend - vstart);
      // trim
      while (!a.value.empty() && std::isspace((unsigned char)a.value.back()))
        a.value.pop_back();
      size_t lead = 0;
      while (lead < a.value.size() && std::isspace((unsigned char)a.value[lead])) ++lead;
      a.value = a.value.substr(lead);
      out.push_back(std::move(a));
      i = vend;
    } else {
      // Bare word (e.g. `O`).
      Assignment a;
      a.key = line.substr(i, j > i ? j - i : 1);
      a.col = start + 1;
      a.value = "";
      out.push_back(std::move(a));
      i = (j > i) ? j : i + 1;
    }
  }
  return out;
}

[[noreturn]] void fail_at(const std::string& file, size_t line, size_t col,
                          const std::string& msg) {
  throw parse_error(file + ":" + std::to_string(line) + ":" +
                    std::to_string(col) + ": " + msg);
}

FieldElement parse_element_at(const FieldRef& K, const std::string& text,
                              const std::string& file, size_t line, size_t col) {
  try {
    return parse_element(K, text);
  } catch (const Error& e) {
    fail_at(file, line, col, std::string("bad element '" + text + "': ") + e.what());
  }
}

void parse_into(ParsedInput& in, const std::string& text, const std::string& file) {
  std::istringstream is(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t i = 0;
    while (i < line.size() && std::isspace((unsigned char)line[i])) ++i;
    if (i >= line.size()) continue;
    size_t kw_start = i;
    while (i < line.size() && (is_ident_char(line[i]) || line[i] == '-')) ++i;
    std::string kw = line.substr(kw_start, i - kw_start);

    if (kw == "field") {
      std::string rest = line.substr(i);
      size_t lead = 0;
      while (lead < rest.size() && std::isspace((unsigned char)rest[lead])) ++lead;
      while (!rest.empty() && std::isspace((unsigned char)rest.back())) rest.pop_back();
      rest = rest.substr(lead);
      try {
        in.field = parse_field_name(rest);
      } catch (const Error& e) {
        fail_at(file, lineno, kw_start + 1, e.what());
      }
    } else if (kw == "curve") {
      auto assigns = split_assignments(line, i);
      FieldElement a1, a2, a3, a4, a6;
      bool seen[5] = {false, false, false, false, false};
      bool cm = false;
      long cm_disc = 0;
      auto Q = make_rationals();
      for (const auto& a : assigns) {
        int slot = -1;
        if (a.key == "a1") slot = 0;
        else if (a.key == "a2") slot = 1;
        else if (a.key == "a3") slot = 2;
        else if (a.key == "a4") slot = 3;
        else if (a.key == "a6") slot = 4;
        else if (a.key == "cm_discriminant") {
          try {
            cm_disc = std::stol(a.value);
          } catch (...) {
            fail_at(file, lineno, a.col, "bad cm_discriminant '" + a.value + "'");
          }
          cm = true;
          continue;
        } else {
          fail_at(file, lineno, a.col, "unknown curve key '" + a.key + "'");
        }
        FieldElement v = parse_element_at(Q, a.value, file, lineno, a.col);
        seen[slot] = true;
        switch (slot) {
          case 0: a1 = v; break;
          case 1: a2 = v; break;
          case 2: a3 = v; break;
          case 3: a4 = v; break;
          case 4: a6 = v; break;
        }
      }
      for (int s = 0; s < 5; ++s)
        if (!seen[s])
          fail_at(file, lineno, kw_start + 1,
                  std::string("curve stanza missing a") +
                      (s == 4 ? "6" : std::to_string(s + 1)));
      try {
        in.curve = make_curve(Q, a1, a2, a3, a4, a6, cm, cm_disc);
      } catch (const Error& e) {
        fail_at(file, lineno, kw_start + 1, e.what());
      }
    } else if (kw == "point") {
      if (!in.curve)
        fail_at(file, lineno, kw_start + 1, "point stanza before any curve stanza");
      auto assigns = split_assignments(line, i);
      if (assigns.size() == 1 && assigns[0].key == "O" && assigns[0].value.empty()) {
        in.points.push_back(ec_infinity(in.field));
        continue;
      }
      std::optional<FieldElement> x, y;
      for (const auto& a : assigns) {
        if (a.key == "x") x = parse_element_at(in.field, a.value, file, lineno, a.col);
        else if (a.key == "y") y = parse_element_at(in.field, a.value, file, lineno, a.col);
        else fail_at(file, lineno, a.col, "unknown point key '" + a.key + "'");
      }
      if (!x || !y)
        fail_at(file, lineno, kw_start + 1, "point stanza needs x= and y= (or O)");
      // Exact on-curve check with the residual reported.
      ECPoint P;
      P.L = in.field;
      P.inf = false;
      P.x = *x;
      P.y = *y;
      if (!ec_on_curve(*in.curve, P)) {
        const EllipticCurve& E = *in.curve;
        auto lift = [&](const FieldElement& c) {
          return c.is_rational() ? fe_from_rat(in.field, c.as_rat()) : c;
        };
        FieldElement lhs = fe_add(
            fe_mul(P.y, P.y),
            fe_add(fe_mul(fe_mul(lift(E.a1), P.x), P.y), fe_mul(lift(E.a3), P.y)));
        FieldElement rhs = fe_add(
            fe_mul(P.x, fe_mul(P.x, P.x)),
            fe_add(fe_mul(lift(E.a2), fe_mul(P.x, P.x)),
                   fe_add(fe_mul(lift(E.a4), P.x), lift(E.a6))));
        fail_at(file, lineno, kw_start + 1,
                "point is not on the curve (residual " +
                    fe_str(fe_sub(lhs, rhs)) + ")");
      }
      in.points.push_back(P);
    } else {
      fail_at(file, lineno, kw_start + 1, "unknown stanza keyword '" + kw + "'");
    }
  }
}

}  // namespace

FieldRef parse_field_name(const std::string& s) {
  if (s == "Q") return make_rationals();
  auto inner = [&](const std::string& prefix) -> std::optional<long> {
    if (s.rfind("Q(" + prefix, 0) != 0 || s.back() != ')') return std::nullopt;
    std::string num = s.substr(2 + prefix.size(), s.size() - 3 - prefix.size());
    size_t lead = 0;
    while (lead < num.size() && std::isspace((unsigned char)num[lead])) ++lead;
    num = num.substr(lead);
    try {
      size_t used = 0;
      long v = std::stol(num, &used);
      if (used != num.size()) return std::nullopt;
      return v;
    } catch (...) {
      return std::nullopt;
    }
  };
  if (auto d = inner("sqrt")) return make_quadratic(*d);
  if (auto m = inner("zeta")) return make_cyclotomic(*m);
  throw parse_error("unrecognized field '" + s +
                    "' (expected Q, Q(sqrt d), or Q(zeta m))");
}

FieldElement parse_element(const FieldRef& K, const std::string& s) {
  ElemParser p(s);
  if (p.eof()) throw parse_error("empty element expression");
  return p.parse(K);
}

ParsedInput parse_input_text(const std::string& text, const std::string& filename) {
  ParsedInput in;
  in.field = make_rationals();
  parse_into(in, text, filename);
  return in;
}

ParsedInput parse_input_files(const std::vector<std::string>& paths) {
  ParsedInput in;
  in.field = make_rationals();
  for (const auto& path : paths) parse_into(in, read_file(path), path);
  return in;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw parse_error("cannot open file '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw parse_error("cannot open output file '" + path + "'");
  f << content;
}

}  // namespace hc
