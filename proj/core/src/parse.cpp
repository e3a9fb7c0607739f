#include "mfc/parse.hpp"

namespace mfc {

namespace {

struct ScalarPolicy {
  using Value = Scalar;
  FieldPtr field;

  Value number(const mpq_class& q) const { return Scalar(q); }
  Value identifier(const std::string& name) const {
    if (name != "z") throw PreconditionError("unknown identifier '" + name + "'");
    if (!field) throw PreconditionError("z used without a cyclotomic field");
    return Scalar::zeta(field);
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value div(const Value& a, const Value& b) const { return a / b; }
  Value neg(const Value& a) const { return -a; }
  Value pow(const Value& a, long e) const { return a.pow(e); }
};

struct PolyPolicy {
  using Value = Poly;
  RingPtr ring;

  Value number(const mpq_class& q) const { return Poly(ring, Scalar(q)); }
  Value identifier(const std::string& name) const {
    if (name == "z") {
      if (!ring->field) throw PreconditionError("z used without a cyclotomic field");
      return Poly(ring, Scalar::zeta(ring->field));
    }
    auto idx = ring->index_of(name);
    if (!idx) throw PreconditionError("unknown variable '" + name + "'");
    return Poly::variable(ring, *idx);
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value div(const Value& a, const Value& b) const {
    if (!b.is_constant() || b.is_zero()) throw PreconditionError("polynomial division only by nonzero constants");
    return a * b.constant_term().inverse();
  }
  Value neg(const Value& a) const { return -a; }
  Value pow(const Value& a, long e) const {
    if (e < 0) {
      if (!a.is_constant()) throw PreconditionError("negative power of a non-constant polynomial");
      return Poly(ring, a.constant_term().pow(e));
    }
    return a.pow(static_cast<unsigned>(e));
  }
};

}  // namespace

Scalar parse_scalar(std::string_view text, const FieldPtr& field, int line, int column) {
  ScalarPolicy policy{field};
  Scalar s = ExpressionParser<ScalarPolicy>(text, policy, line, column).parse();
  if (field && !s.field() && !s.is_zero()) return Scalar(field, s.coefficients());
  return s;
}

Poly parse_poly(std::string_view text, const RingPtr& ring, int line, int column) {
  PolyPolicy policy{ring};
  return ExpressionParser<PolyPolicy>(text, policy, line, column).parse();
}

std::string trim(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

std::vector<std::string> split_top_level(std::string_view text, char delimiter) {
  std::vector<std::string> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(' || c == '[') ++depth;
    else if (c == ')' || c == ']') --depth;
    else if (c == delimiter && depth == 0) {
      parts.push_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(trim(text.substr(start)));
  return parts;
}

std::vector<std::vector<Scalar>> parse_scalar_matrix(std::string_view text, const FieldPtr& field, int line,
                                                     int column) {
  std::string body = trim(text);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    throw ParseError("matrix must be written as [[...], ...]", line, column);
  std::vector<std::vector<Scalar>> rows;
  for (const auto& row_text : split_top_level(std::string_view(body).substr(1, body.size() - 2), ',')) {
    if (row_text.size() < 2 || row_text.front() != '[' || row_text.back() != ']')
      throw ParseError("matrix row must be bracketed", line, column);
    std::vector<Scalar> row;
    for (const auto& entry : split_top_level(std::string_view(row_text).substr(1, row_text.size() - 2), ','))
      row.push_back(parse_scalar(entry, field, line, column));
    rows.push_back(std::move(row));
  }
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw ParseError("ragged matrix", line, column);
  return rows;
}

}  // namespace mfc
