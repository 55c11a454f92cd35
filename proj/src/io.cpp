#include "lfc/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "field_data.hpp"

namespace lfc {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

unsigned parse_unsigned(const std::string& s, const std::string& what) {
  const std::string t = trim(s);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; }))
    fail(ErrorKind::invalid_argument, "bad " + what + " '" + s + "'");
  try {
    return static_cast<unsigned>(std::stoul(t));
  } catch (const std::exception&) {
    fail(ErrorKind::invalid_argument, "bad " + what + " '" + s + "'");
  }
}

// Strip comments and split "key=value" lines.
std::vector<std::pair<std::string, std::string>> key_values(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) fail(ErrorKind::invalid_argument, "expected key=value, got '" + line + "'");
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::invalid_argument, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::invalid_argument, "cannot write '" + path + "'");
  out << text;
}

DigitLiteral parse_literal(const std::string& text) {
  DigitLiteral lit;
  std::string t = trim(text);
  if (!t.empty() && t.front() == '-') {
    lit.negative = true;
    t = trim(t.substr(1));
  }
  if (t.empty()) fail(ErrorKind::invalid_argument, "empty literal");
  for (const auto& comp : split(t, '|')) {
    std::vector<unsigned> digits;
    for (const auto& d : split(comp, ',')) digits.push_back(parse_unsigned(d, "digit"));
    lit.components.push_back(std::move(digits));
  }
  return lit;
}

FieldParams parse_field_spec(const std::string& text) {
  FieldParams fp;
  bool have_p = false;
  for (const auto& [key, value] : key_values(text)) {
    if (key == "characteristic") {
      if (value == "zero" || value == "0")
        fp.characteristic = Characteristic::zero;
      else if (value == "finite" || value == "p")
        fp.characteristic = Characteristic::finite;
      else
        fail(ErrorKind::invalid_argument, "characteristic must be zero or finite");
    } else if (key == "p") {
      fp.p = parse_unsigned(value, "p");
      have_p = true;
    } else if (key == "f") {
      fp.f = parse_unsigned(value, "f");
    } else if (key == "e") {
      fp.e = parse_unsigned(value, "e");
    } else if (key == "precision" || key == "N") {
      fp.precision = static_cast<int>(parse_unsigned(value, "precision"));
    } else if (key == "residue_poly") {
      fp.residue_poly.clear();
      for (const auto& c : split(value, ',')) fp.residue_poly.push_back(parse_unsigned(c, "coefficient"));
    } else if (key == "eisenstein") {
      fp.eisenstein_coeffs.clear();
      for (const auto& c : split(value, ';')) fp.eisenstein_coeffs.push_back(parse_literal(c));
    } else {
      fail(ErrorKind::invalid_argument, "unknown field spec key '" + key + "'");
    }
  }
  if (!have_p) fail(ErrorKind::invalid_argument, "field spec needs p");
  return fp;
}

Field load_field(const std::string& path) { return Field::make(parse_field_spec(read_text_file(path))); }

std::string format_element(const Element& x) {
  const auto* fd = x.field();
  if (fd == nullptr) return "?";
  const auto digits = x.digits();
  const std::size_t N = static_cast<std::size_t>(fd->N);
  std::ostringstream os;
  for (unsigned u = 0; u < fd->rank; ++u) {
    if (u) os << '|';
    std::size_t len = N;
    while (len > 1 && digits[u * N + len - 1] == 0) --len;
    for (std::size_t j = 0; j < len; ++j) os << (j ? "," : "") << digits[u * N + j];
  }
  return os.str();
}

std::string format_ball(const Ball& b) {
  std::ostringstream os;
  os << "B(";
  for (std::size_t i = 0; i < b.dim(); ++i) os << (i ? "; " : "") << format_element(b.center[i]);
  os << " ; lambda=" << b.lambda << ")";
  return os.str();
}

Polynomial parse_polynomial(const Field& field, const std::string& text) {
  std::size_t n = 0, v = 0;
  std::vector<Term> terms;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      auto eq = line.find('=');
      if (eq == std::string::npos)
        fail(ErrorKind::invalid_argument, "polynomial line " + std::to_string(lineno) + ": expected ':' or '='");
      const std::string key = trim(line.substr(0, eq));
      const unsigned val = parse_unsigned(line.substr(eq + 1), key);
      if (key == "n")
        n = val;
      else if (key == "v")
        v = val;
      else
        fail(ErrorKind::invalid_argument, "unknown polynomial header '" + key + "'");
      continue;
    }
    if (n == 0 || v == 0) fail(ErrorKind::invalid_argument, "polynomial needs n= and v= before terms");
    Term t;
    std::stringstream es(line.substr(0, colon));
    std::string tok;
    while (es >> tok) t.exps.push_back(parse_unsigned(tok, "exponent"));
    if (t.exps.size() != n * v)
      fail(ErrorKind::invalid_argument,
           "polynomial line " + std::to_string(lineno) + ": expected " + std::to_string(n * v) + " exponents");
    std::string coef = trim(line.substr(colon + 1));
    if (!coef.empty() && coef.front() == '[') {
      if (coef.back() != ']') fail(ErrorKind::invalid_argument, "unterminated literal '" + coef + "'");
      t.coef = field.from_literal(parse_literal(coef.substr(1, coef.size() - 2)));
    } else if (!coef.empty() && coef.front() == '-' && coef.size() > 1 && coef[1] == '[') {
      if (coef.back() != ']') fail(ErrorKind::invalid_argument, "unterminated literal '" + coef + "'");
      t.coef = -field.from_literal(parse_literal(coef.substr(2, coef.size() - 3)));
    } else {
      try {
        std::size_t used = 0;
        long long c = std::stoll(coef, &used);
        if (used != coef.size()) throw std::invalid_argument(coef);
        t.coef = field.from_int(c);
      } catch (const std::exception&) {
        fail(ErrorKind::invalid_argument, "bad coefficient '" + coef + "'");
      }
    }
    terms.push_back(std::move(t));
  }
  if (n == 0 || v == 0) fail(ErrorKind::invalid_argument, "polynomial needs n= and v=");
  return Polynomial(field, n, v, std::move(terms));
}

Polynomial load_polynomial(const Field& field, const std::string& path) {
  return parse_polynomial(field, read_text_file(path));
}

std::string format_polynomial(const Polynomial& p) {
  std::ostringstream os;
  os << "n=" << p.n() << "\nv=" << p.v() << "\n";
  for (const auto& t : p.terms()) {
    for (std::size_t i = 0; i < t.exps.size(); ++i) os << (i ? " " : "") << t.exps[i];
    os << " : [" << format_element(t.coef) << "]\n";
  }
  return os.str();
}

std::string format_certificate(const AvoidanceCertificate& c) {
  std::ostringstream os;
  os << "kind=" << c.kind << " L=" << c.lower_bound_exp << " mu=" << c.mu << " nu=" << c.nu
     << " lambda=" << c.lambda;
  if (c.kind == "poly")
    os << " A=" << c.A << " h=" << c.h << " H=" << c.height_bound << " delta_v=" << c.delta_valuation
       << " pivot=" << c.pivot;
  os << "  [|f| >= q^-" << c.lower_bound_exp << " on S_1 x ... x S_v]";
  return os.str();
}

namespace {

std::string item_line(const QueueItem& it) {
  std::ostringstream os;
  os << "l=" << it.ell << " k=" << it.k << " j0=" << it.j0 << " sigma=";
  for (std::size_t i = 0; i < it.sigma.size(); ++i) os << (i ? "," : "") << it.sigma[i];
  return os.str();
}

}  // namespace

std::string serialize_tree(const ConstructionTree& tree) {
  std::ostringstream os;
  os << "lfc-tree 1\n";
  os << "field " << tree.field().describe() << "\n";
  os << "schedule lambda0=" << tree.schedule().lambda0 << " gap=" << tree.schedule().gap << "\n";
  for (std::size_t i = 0; i < tree.registry().size(); ++i) {
    const auto& f = tree.registry()[i];
    os << "function " << i + 1 << " ";
    if (f.kind == FunctionEntry::Kind::polynomial) {
      os << "poly " << f.poly->to_string() << " chain=";
      for (std::size_t k = 0; k < f.chain.size(); ++k) os << (k ? "," : "") << f.chain[k];
    } else {
      os << "smooth " << f.smooth->name;
    }
    os << "\n";
  }
  os << "lambdas";
  for (int l : tree.lambdas()) os << " " << l;
  os << "\n";
  const auto& nodes = tree.nodes();
  os << "nodes " << nodes.size() << "\n";
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    const auto& nd = nodes[id];
    os << "node " << id << " stage=" << nd.stage << " parent="
       << (nd.parent ? std::to_string(*nd.parent) : std::string("-")) << " lambda=" << nd.ball.lambda
       << " center=";
    for (std::size_t c = 0; c < nd.ball.dim(); ++c) os << (c ? ";" : "") << format_element(nd.ball.center[c]);
    os << "\n";
  }
  os << "leaves " << tree.leaves().size() << "\n";
  for (std::size_t i = 0; i < tree.leaves().size(); ++i)
    os << (i ? " " : "") << tree.leaves()[i];
  os << "\n";
  os << "certificates " << tree.stages().size() << "\n";
  for (const auto& rec : tree.stages()) {
    os << "stage " << rec.j << " " << item_line(rec.item) << " mu=" << rec.mu << " nu=" << rec.nu
       << " lambda=" << rec.lambda << " growth=" << (rec.growth_inequality ? "yes" : "no") << " target="
       << rec.target << " | " << format_certificate(rec.cert) << "\n";
  }
  return os.str();
}

std::string serialize_simul(const SimulTree& tree, const LinearFormSpec& spec) {
  std::ostringstream os;
  os << "lfc-simul 1\n";
  os << "alpha";
  for (const auto& a : spec.alpha) os << " " << format_element(a);
  os << "\nC " << spec.C << "\nc_star " << spec.c_star << "\nc1";
  for (int c : spec.c1) os << " " << c;
  os << "\nlambda0 " << tree.lambda0 << "\n";
  for (std::size_t j = 0; j < tree.levels.size(); ++j) {
    os << "level " << j << " balls=" << tree.levels[j].size() << " radius=" << tree.levels[j].front().lambda
       << " translations=" << tree.translations[j] << "\n";
    for (const auto& b : tree.levels[j]) os << "  " << format_element(b.center[0]) << "\n";
  }
  return os.str();
}

}  // namespace lfc
