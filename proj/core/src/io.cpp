#include "mfc/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "mfc/parse.hpp"

namespace mfc::io {

namespace {

struct Line {
  int number = 0;
  std::string text;  // comment stripped, trimmed
  int column = 1;    // column of text[0] in the file
};

struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
  int column = 1;  // column of value[0]
};

[[noreturn]] void fail(const std::string& what, int line, int column = 1) { throw ParseError(what, line, column); }

std::map<std::string, std::vector<Line>> split_sections(std::string_view text) {
  static const std::vector<std::string> known{"field", "potential", "group", "curve", "koszul", "dgscheme", "points"};
  std::map<std::string, std::vector<Line>> out;
  std::string current;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::size_t b = 0;
    while (b < raw.size() && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
    std::string body = trim(raw);
    if (body.empty()) continue;
    if (body.front() == '[' && body.back() == ']' && body.find('=') == std::string::npos) {
      current = trim(body.substr(1, body.size() - 2));
      if (std::find(known.begin(), known.end(), current) == known.end())
        fail("unknown section [" + current + "]", number, static_cast<int>(b) + 2);
      out[current];
      continue;
    }
    if (current.empty()) fail("content before the first section header", number, static_cast<int>(b) + 1);
    out[current].push_back({number, body, static_cast<int>(b) + 1});
  }
  return out;
}

std::optional<KeyValue> key_value(const Line& l) {
  auto eq = l.text.find('=');
  if (eq == std::string::npos) return std::nullopt;
  KeyValue kv;
  kv.key = trim(l.text.substr(0, eq));
  std::size_t v = eq + 1;
  while (v < l.text.size() && std::isspace(static_cast<unsigned char>(l.text[v]))) ++v;
  kv.value = trim(l.text.substr(v));
  kv.line = l.number;
  kv.column = l.column + static_cast<int>(v);
  if (kv.key.empty()) fail("missing key before '='", l.number, l.column);
  return kv;
}

KeyValue require_kv(const Line& l) {
  auto kv = key_value(l);
  if (!kv) fail("expected 'key = value'", l.number, l.column);
  return *kv;
}

long parse_int(const KeyValue& kv, const std::string& text) {
  try {
    std::size_t used = 0;
    long v = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    fail("expected an integer for " + kv.key + ", got '" + text + "'", kv.line, kv.column);
  }
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<std::string> list_items(const std::string& s) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  for (auto& item : split_top_level(s, ',')) out.push_back(trim(item));
  return out;
}

// Column of item k inside a comma list, for error reporting.
int item_column(const KeyValue& kv, std::size_t k) {
  std::size_t pos = 0;
  int depth = 0;
  std::size_t seen = 0;
  for (; pos < kv.value.size() && seen < k; ++pos) {
    char c = kv.value[pos];
    if (c == '(' || c == '[') ++depth;
    else if (c == ')' || c == ']') --depth;
    else if (c == ',' && depth == 0) ++seen;
  }
  while (pos < kv.value.size() && std::isspace(static_cast<unsigned char>(kv.value[pos]))) ++pos;
  return kv.column + static_cast<int>(pos);
}

std::vector<Poly> poly_list(const KeyValue& kv, const RingPtr& ring) {
  std::vector<Poly> out;
  auto items = list_items(kv.value);
  for (std::size_t k = 0; k < items.size(); ++k) out.push_back(parse_poly(items[k], ring, kv.line, item_column(kv, k)));
  return out;
}

ScalarMatrix matrix_value(const KeyValue& kv, const FieldPtr& field) {
  auto rows = parse_scalar_matrix(kv.value, field, kv.line, kv.column);
  if (!rows.empty())
    for (const auto& r : rows)
      if (r.size() != rows[0].size()) fail("ragged matrix for " + kv.key, kv.line, kv.column);
  return ScalarMatrix(rows);
}

GroupElement group_element(const KeyValue& kv, const FieldPtr& field, std::size_t dim) {
  ScalarMatrix m = matrix_value(kv, field);
  if (m.rows() != dim || m.cols() != dim)
    fail(kv.key + " must be a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix", kv.line, kv.column);
  return GroupElement(std::move(m), field);
}

p1::Point point_value(const std::string& text, const FieldPtr& field, int line, int column) {
  if (text == "inf" || text == "infinity") return p1::Point::infinity();
  return p1::Point::finite(parse_scalar(text, field, line, column));
}

p1::Divisor divisor_value(const KeyValue& kv, const FieldPtr& field) {
  p1::Divisor d;
  if (kv.value == "none") return d;
  auto items = list_items(kv.value);
  for (std::size_t k = 0; k < items.size(); ++k) {
    const int col = item_column(kv, k);
    std::string item = items[k];
    int mult = 1;
    auto colon = split_top_level(item, ':');
    if (colon.size() > 2) fail("expected point or point:multiplicity", kv.line, col);
    if (colon.size() == 2) {
      item = trim(colon[0]);
      mult = static_cast<int>(parse_int(kv, trim(colon[1])));
    }
    d.add(point_value(item, field, kv.line, col), mult);
  }
  return d;
}

struct Context {
  Document doc;
  std::map<std::string, GroupElement> named;
};

void parse_field(Context& c, const std::vector<Line>& lines) {
  for (const auto& l : lines) {
    auto kv = require_kv(l);
    if (kv.key != "order") fail("unknown key '" + kv.key + "' in [field]", kv.line, l.column);
    long n = parse_int(kv, kv.value);
    if (n < 1 || n > 1000) fail("cyclotomic order must be in 1..1000", kv.line, kv.column);
    c.doc.field = CyclotomicField::make(static_cast<unsigned>(n));
  }
  if (!c.doc.field) c.doc.field = CyclotomicField::make(1);
}

void parse_potential(Context& c, const std::vector<Line>& lines) {
  std::vector<std::string> names;
  std::vector<int> weights;
  std::optional<KeyValue> w, degree;
  int vars_line = 0;
  for (const auto& l : lines) {
    auto kv = require_kv(l);
    if (kv.key == "variables") {
      names = list_items(kv.value);
      vars_line = kv.line;
      for (std::size_t k = 0; k < names.size(); ++k) {
        const auto& n = names[k];
        bool ok = !n.empty() && (std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_');
        for (char ch : n) ok = ok && (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_');
        if (!ok || n == "z" || n == "t") fail("invalid variable name '" + n + "'", kv.line, item_column(kv, k));
      }
    } else if (kv.key == "weights") {
      for (const auto& item : list_items(kv.value)) weights.push_back(static_cast<int>(parse_int(kv, item)));
    } else if (kv.key == "W") {
      w = kv;
    } else if (kv.key == "degree") {
      degree = kv;
    } else {
      fail("unknown key '" + kv.key + "' in [potential]", kv.line, l.column);
    }
  }
  if (weights.empty()) weights.assign(names.size(), 1);
  if (weights.size() != names.size())
    fail("weights and variables differ in length", vars_line ? vars_line : (lines.empty() ? 0 : lines[0].number));
  for (int x : weights)
    if (x <= 0) fail("weights must be positive", vars_line);
  c.doc.ring = make_ring(c.doc.field, names, weights);
  if (w) c.doc.w = parse_poly(w->value, c.doc.ring, w->line, w->column);
  if (degree) c.doc.d = static_cast<int>(parse_int(*degree, degree->value));
  if (c.doc.w && !c.doc.d) {
    auto hw = c.doc.w->homogeneous_weight();
    if (!hw) fail("W is not quasi-homogeneous; give degree explicitly", w->line, w->column);
    c.doc.d = *hw;
  }
}

void parse_group(Context& c, const std::vector<Line>& lines) {
  const std::size_t dim = c.doc.ring->size();
  for (const auto& l : lines) {
    auto kv = require_kv(l);
    GroupElement g = group_element(kv, c.doc.field, dim);
    if (c.named.count(kv.key)) fail("duplicate group element '" + kv.key + "'", kv.line, l.column);
    c.named.emplace(kv.key, g);
    if (kv.key == "J") c.doc.j = g;
    else if (kv.key == "J_sqrt") c.doc.j_sqrt = g;
    else c.doc.group.emplace_back(kv.key, g);
  }
  if (!c.doc.j && c.doc.d && *c.doc.d > 0 && c.doc.field->order() % static_cast<unsigned>(*c.doc.d) == 0) {
    const long step = static_cast<long>(c.doc.field->order()) / *c.doc.d;
    ScalarMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = Scalar::zeta_power(c.doc.field, step * c.doc.ring->weights[i]);
    c.doc.j = GroupElement(std::move(m), c.doc.field);
    c.named.emplace("J", *c.doc.j);
  }
}

// NAME, NAME^k, products with '*', "identity", or a matrix literal.
GroupElement group_expression(const Context& c, const KeyValue& kv) {
  const std::size_t dim = c.doc.ring->size();
  if (!kv.value.empty() && kv.value.front() == '[') return group_element(kv, c.doc.field, dim);
  GroupElement out(ScalarMatrix::identity(dim), c.doc.field);
  for (const auto& factor : split_top_level(kv.value, '*')) {
    std::string f = trim(factor);
    long power = 1;
    if (auto caret = f.find('^'); caret != std::string::npos) {
      power = parse_int(kv, trim(f.substr(caret + 1)));
      f = trim(f.substr(0, caret));
    }
    if (f == "identity" || f == "1") continue;
    auto it = c.named.find(f);
    if (it == c.named.end()) fail("unknown group element '" + f + "'", kv.line, kv.column);
    GroupElement g = power < 0 ? it->second.inverse() : it->second;
    for (long k = 0; k < std::labs(power); ++k) out = out * g;
  }
  return out;
}

void parse_curve(Context& c, const std::vector<Line>& lines) {
  auto& s = c.doc.curve;
  const std::size_t dim = c.doc.ring->size();
  enum class Block { none, component, marking } block = Block::none;
  std::map<std::string, std::size_t> components, markings;
  std::vector<int> component_line;
  std::vector<bool> has_eta;
  std::vector<std::tuple<std::string, std::string, int, int>> pending_nodes;
  for (const auto& l : lines) {
    auto kv = key_value(l);
    if (!kv) {
      auto w = words(l.text);
      if (w[0] == "component") {
        if (w.size() != 2) fail("expected 'component NAME'", l.number, l.column);
        if (components.count(w[1])) fail("duplicate component '" + w[1] + "'", l.number, l.column);
        components[w[1]] = s.components.size();
        spin::Component comp;
        comp.name = w[1];
        comp.bundle.assign(dim, p1::Divisor{});
        s.components.push_back(std::move(comp));
        component_line.push_back(l.number);
        has_eta.push_back(false);
        block = Block::component;
      } else if (w[0] == "marking") {
        if (w.size() != 4) fail("expected 'marking NAME COMPONENT POINT'", l.number, l.column);
        if (markings.count(w[1])) fail("duplicate marking '" + w[1] + "'", l.number, l.column);
        auto it = components.find(w[2]);
        if (it == components.end()) fail("unknown component '" + w[2] + "'", l.number, l.column);
        const int col = l.column + static_cast<int>(l.text.rfind(w[3]));
        spin::Marking m{w[1], it->second, point_value(w[3], c.doc.field, l.number, col),
                        GroupElement(ScalarMatrix::identity(dim), c.doc.field), ScalarMatrix::identity(dim)};
        markings[w[1]] = s.markings.size();
        s.markings.push_back(std::move(m));
        block = Block::marking;
      } else if (w[0] == "node") {
        if (w.size() != 3) fail("expected 'node MARKING MARKING'", l.number, l.column);
        pending_nodes.emplace_back(w[1], w[2], l.number, l.column);
        block = Block::none;
      } else {
        fail("unexpected '" + w[0] + "' in [curve]", l.number, l.column);
      }
      continue;
    }
    if (block == Block::component) {
      auto& comp = s.components.back();
      auto key = words(kv->key);
      if (kv->key == "eta") {
        comp.eta = p1::parse_rational(kv->value, c.doc.field, kv->line, kv->column);
        has_eta.back() = true;
      } else if (kv->key == "D") {
        comp.d = divisor_value(*kv, c.doc.field);
      } else if (key.size() == 2 && key[0] == "bundle") {
        auto idx = c.doc.ring->index_of(key[1]);
        if (!idx) fail("unknown coordinate '" + key[1] + "'", kv->line, l.column);
        comp.bundle[*idx] = divisor_value(*kv, c.doc.field);
      } else {
        fail("unknown component key '" + kv->key + "'", kv->line, l.column);
      }
    } else if (block == Block::marking) {
      auto& m = s.markings.back();
      if (kv->key == "gamma") {
        m.gamma = group_expression(c, *kv);
      } else if (kv->key == "rigidification") {
        ScalarMatrix r = kv->value.front() == '[' ? matrix_value(*kv, c.doc.field) : group_expression(c, *kv).matrix();
        if (r.rows() != dim || r.cols() != dim) fail("rigidification has the wrong size", kv->line, kv->column);
        m.rigidification = std::move(r);
      } else {
        fail("unknown marking key '" + kv->key + "'", kv->line, l.column);
      }
    } else {
      fail("'" + kv->key + "' outside a component or marking block", kv->line, l.column);
    }
  }
  for (std::size_t k = 0; k < s.components.size(); ++k)
    if (!has_eta[k]) fail("component '" + s.components[k].name + "' has no eta", component_line[k]);
  for (const auto& [a, b, line, col] : pending_nodes) {
    auto ia = markings.find(a), ib = markings.find(b);
    if (ia == markings.end()) fail("unknown marking '" + a + "'", line, col);
    if (ib == markings.end()) fail("unknown marking '" + b + "'", line, col);
    s.nodes.push_back({ia->second, ib->second});
  }
  c.doc.has_curve = true;
}

void parse_koszul(Context& c, const std::vector<Line>& lines) {
  std::vector<Poly> alpha, beta;
  bool a = false, b = false;
  for (const auto& l : lines) {
    auto kv = require_kv(l);
    if (kv.key == "alpha") alpha = poly_list(kv, c.doc.ring), a = true;
    else if (kv.key == "beta") beta = poly_list(kv, c.doc.ring), b = true;
    else fail("unknown key '" + kv.key + "' in [koszul]", kv.line, l.column);
  }
  if (!a || !b) fail("[koszul] needs alpha and beta", lines.empty() ? 0 : lines[0].number);
  c.doc.koszul.emplace(std::move(alpha), std::move(beta));
}

void parse_dgscheme(Context& c, const std::vector<Line>& lines) {
  DgSchemePresentation x;
  x.even = c.doc.ring;
  std::vector<std::string> names;
  std::vector<int> weights;
  std::map<std::string, KeyValue> diffs;
  std::optional<KeyValue> f;
  int odd_line = 0;
  for (const auto& l : lines) {
    auto kv = require_kv(l);
    if (kv.key == "odd") {
      names = list_items(kv.value);
      odd_line = kv.line;
    } else if (kv.key == "weights") {
      for (const auto& item : list_items(kv.value)) weights.push_back(static_cast<int>(parse_int(kv, item)));
    } else if (kv.key == "f") {
      f = kv;
    } else if (kv.key.size() > 3 && kv.key.compare(0, 2, "d(") == 0 && kv.key.back() == ')') {
      diffs[trim(kv.key.substr(2, kv.key.size() - 3))] = kv;
    } else {
      fail("unknown key '" + kv.key + "' in [dgscheme]", kv.line, l.column);
    }
  }
  if (!weights.empty() && weights.size() != names.size()) fail("odd weights and names differ in length", odd_line);
  for (std::size_t k = 0; k < names.size(); ++k) {
    auto it = diffs.find(names[k]);
    Poly image(x.even);
    if (it != diffs.end()) image = parse_poly(it->second.value, x.even, it->second.line, it->second.column);
    int w = 0;
    if (!weights.empty()) w = weights[k];
    else if (auto hw = image.homogeneous_weight()) w = *hw;
    else if (!image.is_zero()) fail("d(" + names[k] + ") is not homogeneous; give weights", it->second.line);
    x.odd.push_back({names[k], w});
    x.differential.push_back(std::move(image));
  }
  for (const auto& [name, kv] : diffs)
    if (std::find(names.begin(), names.end(), name) == names.end())
      fail("d(" + name + ") for an undeclared odd generator", kv.line, kv.column);
  x.validate();
  if (f) c.doc.homotopy = parse_dg_function(f->value, x, f->line, f->column);
  c.doc.scheme = std::move(x);
}

void parse_points(Context& c, const std::vector<Line>& lines) {
  for (const auto& l : lines) {
    auto kv = require_kv(l);
    if (kv.key != "p") fail("expected 'p = ...' in [points]", kv.line, l.column);
    std::vector<Scalar> p;
    auto items = list_items(kv.value);
    for (std::size_t k = 0; k < items.size(); ++k)
      p.push_back(parse_scalar(items[k], c.doc.field, kv.line, item_column(kv, k)));
    if (p.size() != c.doc.ring->size()) fail("point has the wrong number of coordinates", kv.line, kv.column);
    c.doc.points.push_back(std::move(p));
  }
}

}  // namespace

Document parse_document(std::string_view text) {
  auto sections = split_sections(text);
  Context c;
  auto lines = [&](const char* name) -> const std::vector<Line>& {
    static const std::vector<Line> empty;
    auto it = sections.find(name);
    return it == sections.end() ? empty : it->second;
  };
  parse_field(c, lines("field"));
  parse_potential(c, lines("potential"));
  parse_group(c, lines("group"));
  auto& s = c.doc.curve;
  s.field = c.doc.field;
  s.ring = c.doc.ring;
  s.w = c.doc.w.value_or(Poly(c.doc.ring));
  s.d = c.doc.d.value_or(0);
  for (const auto& [name, g] : c.doc.group) s.group.push_back(g);
  s.j = c.doc.j;
  s.j_sqrt = c.doc.j_sqrt;
  if (sections.count("curve")) parse_curve(c, lines("curve"));
  if (sections.count("koszul")) parse_koszul(c, lines("koszul"));
  if (sections.count("dgscheme")) parse_dgscheme(c, lines("dgscheme"));
  if (sections.count("points")) parse_points(c, lines("points"));
  return std::move(c.doc);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Document read_document(const std::filesystem::path& path) { return parse_document(read_file(path)); }

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw PreconditionError("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw PreconditionError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw PreconditionError("cannot replace " + path.string() + ": " + ec.message());
  }
}

namespace {

std::string generators_line(const std::vector<Generator>& g) {
  std::string out;
  for (const auto& x : g) {
    if (x.name.find_first_of(" ,:\t") != std::string::npos)
      throw PreconditionError("generator name '" + x.name + "' cannot be written");
    out += " " + x.name + ":" + std::to_string(x.weight);
  }
  return out;
}

void write_matrix(std::ostream& os, const PolyMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << "[";
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << m(r, c).to_string();
    os << "]\n";
  }
}

}  // namespace

std::string write_mf(const MatrixFactorization& m, const std::vector<std::string>& notes) {
  std::ostringstream os;
  const auto& ring = m.ring;
  os << "matrix-factorization\n";
  os << "field " << (ring->field ? ring->field->order() : 1) << "\n";
  os << "variables";
  for (const auto& n : ring->names) os << " " << n;
  os << "\nweights";
  for (int w : ring->weights) os << " " << w;
  os << "\npotential " << m.potential.to_string() << "\n";
  os << "p0" << generators_line(m.p0) << "\n";
  os << "p1" << generators_line(m.p1) << "\n";
  for (const auto& n : notes) {
    if (n.find('\n') != std::string::npos) throw PreconditionError("notes must be single lines");
    os << "note " << n << "\n";
  }
  os << "delta0\n";
  write_matrix(os, m.delta0);
  os << "delta1\n";
  write_matrix(os, m.delta1);
  os << "end\n";
  return os.str();
}

MatrixFactorization parse_mf(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::pair<int, std::string>> lines;
  int number = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (!trim(raw).empty()) lines.emplace_back(number, raw);
  }
  std::size_t at = 0;
  auto next = [&](const std::string& keyword) -> std::pair<int, std::string> {
    if (at >= lines.size()) fail("unexpected end of file, expected '" + keyword + "'", number + 1);
    auto [n, l] = lines[at++];
    if (l.compare(0, keyword.size(), keyword) != 0 ||
        (l.size() > keyword.size() && l[keyword.size()] != ' '))
      fail("expected '" + keyword + "'", n);
    return {n, l.size() > keyword.size() ? l.substr(keyword.size() + 1) : std::string()};
  };
  next("matrix-factorization");
  auto [fline, ftext] = next("field");
  long order = 0;
  try {
    order = std::stol(trim(ftext));
  } catch (const std::exception&) {
    fail("bad field order", fline, 7);
  }
  if (order < 1 || order > 1000) fail("bad field order", fline, 7);
  FieldPtr field = CyclotomicField::make(static_cast<unsigned>(order));
  auto names = words(next("variables").second);
  auto [wline, wtext] = next("weights");
  std::vector<int> weights;
  for (const auto& w : words(wtext)) {
    try {
      weights.push_back(std::stoi(w));
    } catch (const std::exception&) {
      fail("bad weight '" + w + "'", wline);
    }
  }
  if (weights.size() != names.size()) fail("weights and variables differ in length", wline);
  RingPtr ring = make_ring(field, names, weights);
  auto [pline, ptext] = next("potential");
  MatrixFactorization m;
  m.ring = ring;
  m.potential = parse_poly(ptext, ring, pline, 11);
  auto gens = [&](const char* key) {
    auto [gl, gt] = next(key);
    std::vector<Generator> out;
    for (const auto& w : words(gt)) {
      auto colon = w.rfind(':');
      if (colon == std::string::npos) fail("expected name:weight", gl);
      try {
        out.push_back({w.substr(0, colon), std::stoi(w.substr(colon + 1))});
      } catch (const std::exception&) {
        fail("bad generator weight in '" + w + "'", gl);
      }
    }
    return out;
  };
  m.p0 = gens("p0");
  m.p1 = gens("p1");
  while (at < lines.size() && lines[at].second.compare(0, 5, "note ") == 0) ++at;
  auto matrix = [&](const char* key, std::size_t rows, std::size_t cols) {
    next(key);
    PolyMatrix out(ring, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (at >= lines.size()) fail(std::string("missing rows of ") + key, number + 1);
      auto [n, l] = lines[at++];
      std::string row = trim(l);
      if (row.size() < 2 || row.front() != '[' || row.back() != ']') fail("expected a bracketed row", n);
      auto entries = list_items(row.substr(1, row.size() - 2));
      if (entries.size() != cols)
        fail("row has " + std::to_string(entries.size()) + " entries, expected " + std::to_string(cols), n);
      std::size_t col = l.find('[') + 2;
      for (std::size_t c = 0; c < cols; ++c) {
        out(r, c) = parse_poly(entries[c], ring, n, static_cast<int>(col));
        col += entries[c].size() + 2;
      }
    }
    return out;
  };
  m.delta0 = matrix("delta0", m.p1.size(), m.p0.size());
  m.delta1 = matrix("delta1", m.p0.size(), m.p1.size());
  next("end");
  if (at != lines.size()) fail("trailing content after 'end'", lines[at].first);
  return m;
}

MatrixFactorization read_mf(const std::filesystem::path& path) { return parse_mf(read_file(path)); }

}  // namespace mfc::io
