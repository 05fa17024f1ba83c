#include "nangle/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <unistd.h>

namespace nangle {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(line == 0 ? message
                                   : "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                                         message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

struct Line {
  std::size_t number;
  std::string raw;  ///< without the comment
  std::vector<Token> tokens;
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    Line l{number, raw, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i >= raw.size()) break;
      const std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      l.tokens.push_back({raw.substr(start, i - start), start + 1});
    }
    if (!l.tokens.empty()) out.push_back(std::move(l));
  }
  return out;
}

[[noreturn]] void fail_at(const Line& l, std::size_t column, const std::string& msg) {
  throw ParseError(l.number, column, msg);
}

const Token& token(const Line& l, std::size_t i, const std::string& what) {
  if (i >= l.tokens.size()) fail_at(l, l.raw.size() + 1, "expected " + what);
  return l.tokens[i];
}

int parse_int(const Line& l, const Token& t, const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
    fail_at(l, t.column, "expected a non-negative integer, got '" + text + "'");
  try {
    return std::stoi(text);
  } catch (const std::out_of_range&) {
    fail_at(l, t.column, "integer out of range");
  }
}

std::string value_after(const Line& l, const Token& t, const std::string& key) {
  if (t.text.rfind(key, 0) != 0) fail_at(l, t.column, "expected " + key + "...");
  return t.text.substr(key.size());
}

struct BasisRef {
  int g, h;
  std::size_t index;
};

struct Builder {
  int p = 0;
  std::vector<std::string> gens;
  std::map<std::string, int> gen_index;
  std::map<std::pair<int, int>, std::vector<std::string>> homs;
  std::map<std::string, BasisRef> basis;

  int generator(const Line& l, const Token& t) const {
    const auto it = gen_index.find(t.text);
    if (it == gen_index.end()) fail_at(l, t.column, "unknown generator '" + t.text + "'");
    return it->second;
  }
  const BasisRef& basis_element(const Line& l, std::size_t column, const std::string& name) const {
    const auto it = basis.find(name);
    if (it == basis.end()) fail_at(l, column, "unknown basis element '" + name + "'");
    return it->second;
  }
  std::size_t dim(int g, int h) const {
    const auto it = homs.find({g, h});
    return it == homs.end() ? 0 : it->second.size();
  }
};

// Linear combination starting at 1-based column `from` of the raw line, in Hom(g, h).
Vec parse_lincomb(const Builder& b, const Line& l, std::size_t from, int g, int h) {
  Vec v(b.dim(g, h), 0);
  const std::string& s = l.raw;
  std::size_t i = from - 1;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip();
  if (i >= s.size()) fail_at(l, i + 1, "expected a linear combination");
  bool first = true;
  while (true) {
    skip();
    int sign = 1;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      fail_at(l, i + 1, "expected + or -");
    }
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '+' && s[i] != '-') ++i;
    std::string term = s.substr(start, i - start);
    if (term.empty()) fail_at(l, start + 1, "expected a term");
    int coef = 1;
    if (const auto star = term.find('*'); star != std::string::npos) {
      const std::string c = term.substr(0, star);
      coef = parse_int(l, Token{c, start + 1}, c);
      term = term.substr(star + 1);
    } else if (std::all_of(term.begin(), term.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      if (parse_int(l, Token{term, start + 1}, term) != 0) fail_at(l, start + 1, "a bare constant must be 0");
      coef = 0;
      term.clear();
    }
    if (!term.empty()) {
      const BasisRef& r = b.basis_element(l, start + 1, term);
      if (r.g != g || r.h != h)
        fail_at(l, start + 1, "'" + term + "' is not in Hom(" + b.gens[g] + ", " + b.gens[h] + ")");
      v[r.index] = ((v[r.index] + sign * coef) % b.p + b.p) % b.p;
    }
    first = false;
    skip();
    if (i >= s.size()) break;
  }
  return v;
}

ObjectExpr parse_object(const Builder& b, const Line& l, std::size_t column, const std::string& text) {
  ObjectExpr x;
  if (text == "0") return x;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t plus = text.find('+', start);
    const std::string name = text.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
    const auto it = b.gen_index.find(name);
    if (it == b.gen_index.end()) fail_at(l, column + start, "unknown generator '" + name + "' in object");
    x.summands.push_back(it->second);
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  return x;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

std::vector<std::string> split_on(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = s.find(sep, start);
    out.push_back(s.substr(start, at == std::string::npos ? std::string::npos : at - start));
    if (at == std::string::npos) break;
    start = at + sep.size();
  }
  return out;
}

NSequence parse_seq(const Builder& b, const PresentedCategory& c, const SuspendedCategory& s, int n, const Line& l) {
  const std::size_t col = l.tokens[0].column + 3;
  const std::string body = l.raw.substr(col - 1);
  const auto halves = split_on(body, "::");
  if (halves.size() != 2) fail_at(l, col, "expected <objects> :: <maps>");
  const auto objs = split_on(halves[0], "|");
  const auto maps = split_on(halves[1], "|");
  if (static_cast<int>(objs.size()) != n || static_cast<int>(maps.size()) != n)
    fail_at(l, col, "expected " + std::to_string(n) + " objects and " + std::to_string(n) + " maps");
  NSequence seq;
  for (const auto& o : objs) seq.objects.push_back(parse_object(b, l, col, trim(o)));
  for (int i = 0; i < n; ++i) {
    const ObjectExpr& dom = seq.objects[i];
    const ObjectExpr cod = i + 1 < n ? seq.objects[i + 1] : apply_suspension(s, seq.objects[0], 1);
    Vec coords;
    const std::string m = trim(maps[i]);
    if (m != "-") {
      std::istringstream in(m);
      std::string t;
      while (in >> t) {
        const int v = parse_int(l, Token{t, col}, t);
        coords.push_back(v % c.modulus());
      }
    }
    if (coords.size() != hom_dim(c, dom, cod)) fail_at(l, col, "map " + std::to_string(i + 1) + " has the wrong number of coordinates");
    seq.maps.push_back(Morphism{dom, cod, coords});
  }
  return seq;
}

std::string lincomb_text(const PresentedCategory& c, int g, int h, const Vec& v) {
  std::string out;
  const auto& names = c.basis_names(g, h);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (v[i] != 1) out += std::to_string(v[i]) + "*";
    out += names[i];
  }
  return out.empty() ? "0" : out;
}

std::string object_text(const PresentedCategory& c, const ObjectExpr& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (int g : x.summands) out += (out.empty() ? "" : "+") + c.generator_name(g);
  return out;
}

std::string subcategory_text(const PresentedCategory& c, const Subcategory& s) {
  std::string out;
  for (int g : s.generators) out += " " + c.generator_name(g);
  return out;
}

}  // namespace

CategoryFile parse_category_file(const std::string& text) {
  const auto lines = split_lines(text);
  Builder b;
  CategoryFile f;
  bool have_n = false;
  std::vector<const Line*> by_kind[12];
  enum { kField, kN, kGen, kHom, kId, kComp, kRel, kSigmaGen, kSigmaHom, kAngles, kSeq, kSub };
  for (const auto& l : lines) {
    const std::string& head = l.tokens[0].text;
    if (head == "field") by_kind[kField].push_back(&l);
    else if (head.rfind("n=", 0) == 0) by_kind[kN].push_back(&l);
    else if (head == "gen") by_kind[kGen].push_back(&l);
    else if (head == "hom") by_kind[kHom].push_back(&l);
    else if (head == "id") by_kind[kId].push_back(&l);
    else if (head == "comp") by_kind[kComp].push_back(&l);
    else if (head == "rel") by_kind[kRel].push_back(&l);
    else if (head == "sigma") {
      const Token& k = token(l, 1, "gen or hom");
      if (k.text == "gen") by_kind[kSigmaGen].push_back(&l);
      else if (k.text == "hom") by_kind[kSigmaHom].push_back(&l);
      else fail_at(l, k.column, "expected gen or hom after sigma");
    } else if (head == "angles") by_kind[kAngles].push_back(&l);
    else if (head == "seq") by_kind[kSeq].push_back(&l);
    else if (head == "Z" || head == "D") by_kind[kSub].push_back(&l);
    else fail_at(l, l.tokens[0].column, "unknown statement '" + head + "'");
  }
  if (by_kind[kField].size() != 1) throw ParseError(by_kind[kField].empty() ? 1 : by_kind[kField][1]->number, 1,
                                                    "exactly one 'field p=<prime>' line is required");
  {
    const Line& l = *by_kind[kField][0];
    const Token& t = token(l, 1, "p=<prime>");
    b.p = parse_int(l, t, value_after(l, t, "p="));
    if (!is_supported_prime(b.p)) fail_at(l, t.column, "unsupported prime " + std::to_string(b.p));
    if (l.tokens.size() > 2) fail_at(l, l.tokens[2].column, "unexpected token");
  }
  for (const Line* l : by_kind[kN]) {
    if (have_n) fail_at(*l, 1, "duplicate n= line");
    f.n = parse_int(*l, l->tokens[0], value_after(*l, l->tokens[0], "n="));
    if (f.n < 3) fail_at(*l, 1, "n must be at least 3");
    have_n = true;
  }
  for (const Line* l : by_kind[kGen]) {
    const Token& t = token(*l, 1, "a generator name");
    if (b.gen_index.count(t.text)) fail_at(*l, t.column, "duplicate generator '" + t.text + "'");
    b.gen_index[t.text] = static_cast<int>(b.gens.size());
    b.gens.push_back(t.text);
    if (l->tokens.size() > 2) fail_at(*l, l->tokens[2].column, "unexpected token");
  }
  for (const Line* l : by_kind[kHom]) {
    const int g = b.generator(*l, token(*l, 1, "a generator"));
    const int h = b.generator(*l, token(*l, 2, "a generator"));
    const Token& dt = token(*l, 3, "dim=<d>");
    const int d = parse_int(*l, dt, value_after(*l, dt, "dim="));
    const Token& bt = token(*l, 4, "basis=<names>");
    const std::string list = value_after(*l, bt, "basis=");
    std::vector<std::string> names;
    if (!list.empty()) names = split_on(list, ",");
    if (static_cast<int>(names.size()) != d) fail_at(*l, bt.column, "basis has " + std::to_string(names.size()) + " names but dim=" + std::to_string(d));
    if (b.homs.count({g, h})) fail_at(*l, 1, "duplicate hom line");
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i].empty()) fail_at(*l, bt.column, "empty basis name");
      if (b.basis.count(names[i])) fail_at(*l, bt.column, "duplicate basis name '" + names[i] + "'");
      b.basis[names[i]] = {g, h, i};
    }
    b.homs[{g, h}] = names;
  }
  auto c = std::make_shared<PresentedCategory>(b.p, b.gens);
  const int G = static_cast<int>(b.gens.size());
  for (int g = 0; g < G; ++g)
    for (int h = 0; h < G; ++h) {
      const auto it = b.homs.find({g, h});
      c->set_hom(g, h, it == b.homs.end() ? std::vector<std::string>{} : it->second);
    }
  std::vector<bool> has_id(static_cast<std::size_t>(G), false);
  for (const Line* l : by_kind[kId]) {
    const int g = b.generator(*l, token(*l, 1, "a generator"));
    if (token(*l, 2, "=").text != "=") fail_at(*l, l->tokens[2].column, "expected =");
    token(*l, 3, "a linear combination");
    if (has_id[g]) fail_at(*l, 1, "duplicate identity for " + b.gens[g]);
    c->set_identity(g, parse_lincomb(b, *l, l->tokens[3].column, g, g));
    has_id[g] = true;
  }
  for (int g = 0; g < G; ++g)
    if (!has_id[g]) {
      if (c->hom_dim(g, g) == 0) throw ParseError(0, 0, "validation: Hom(" + b.gens[g] + ", " + b.gens[g] + ") is zero");
      throw ParseError(0, 0, "missing 'id " + b.gens[g] + " = ...' line");
    }
  auto composable = [&](const Line& l) {
    const Token& ta = token(l, 1, "a basis element");
    const Token& tb = token(l, 2, "a basis element");
    const BasisRef ra = b.basis_element(l, ta.column, ta.text);
    const BasisRef rb = b.basis_element(l, tb.column, tb.text);
    if (ra.h != rb.g) fail_at(l, tb.column, "'" + ta.text + "' and '" + tb.text + "' are not composable");
    if (token(l, 3, "=").text != "=") fail_at(l, l.tokens[3].column, "expected =");
    token(l, 4, "a linear combination");
    return std::pair{ra, rb};
  };
  std::set<std::tuple<int, int, int, std::size_t, std::size_t>> seen;
  for (const Line* l : by_kind[kComp]) {
    const auto [ra, rb] = composable(*l);
    if (!seen.insert({ra.g, ra.h, rb.h, ra.index, rb.index}).second) fail_at(*l, 1, "duplicate comp line");
    c->set_composite(ra.g, ra.h, rb.h, ra.index, rb.index, parse_lincomb(b, *l, l->tokens[4].column, ra.g, rb.h));
  }
  for (const Line* l : by_kind[kRel]) {
    const auto [ra, rb] = composable(*l);
    c->add_relation(ra.g, ra.h, rb.h, ra.index, rb.index, parse_lincomb(b, *l, l->tokens[4].column, ra.g, rb.h));
  }
  try {
    c->validate();
  } catch (const ValidationError& e) {
    throw ParseError(0, 0, std::string("validation: ") + e.what());
  }

  std::vector<int> perm(static_cast<std::size_t>(G));
  for (int g = 0; g < G; ++g) perm[g] = g;
  std::vector<FpMatrix> maps;
  if (by_kind[kSigmaGen].empty() && by_kind[kSigmaHom].empty()) {
    for (int g = 0; g < G; ++g)
      for (int h = 0; h < G; ++h) maps.push_back(FpMatrix::identity(b.p, c->hom_dim(g, h)));
  } else {
    std::vector<bool> set(static_cast<std::size_t>(G), false);
    for (const Line* l : by_kind[kSigmaGen]) {
      const int g = b.generator(*l, token(*l, 2, "a generator"));
      if (token(*l, 3, "->").text != "->") fail_at(*l, l->tokens[3].column, "expected ->");
      const int h = b.generator(*l, token(*l, 4, "a generator"));
      if (set[g]) fail_at(*l, 1, "duplicate sigma gen line");
      perm[g] = h;
      set[g] = true;
    }
    for (int g = 0; g < G; ++g)
      if (!set[g]) throw ParseError(0, 0, "missing 'sigma gen " + b.gens[g] + " -> ...' line");
    for (int g = 0; g < G; ++g)
      for (int h = 0; h < G; ++h) maps.emplace_back(b.p, c->hom_dim(perm[g], perm[h]), c->hom_dim(g, h));
    std::set<std::string> done;
    for (const Line* l : by_kind[kSigmaHom]) {
      const Token& t = token(*l, 2, "a basis element");
      const BasisRef r = b.basis_element(*l, t.column, t.text);
      if (token(*l, 3, "->").text != "->") fail_at(*l, l->tokens[3].column, "expected ->");
      token(*l, 4, "a linear combination");
      if (!done.insert(t.text).second) fail_at(*l, 1, "duplicate sigma hom line");
      const Vec v = parse_lincomb(b, *l, l->tokens[4].column, perm[r.g], perm[r.h]);
      FpMatrix& m = maps[static_cast<std::size_t>(r.g) * G + r.h];
      for (std::size_t i = 0; i < v.size(); ++i) m(i, r.index) = v[i];
    }
    for (const auto& [name, r] : b.basis)
      if (!done.count(name)) throw ParseError(0, 0, "missing 'sigma hom " + name + " -> ...' line");
  }
  try {
    f.structure = make_automorphism(c, perm, maps);
  } catch (const ValidationError& e) {
    throw ParseError(0, 0, std::string("validation: ") + e.what());
  }

  if (by_kind[kAngles].size() > 1) fail_at(*by_kind[kAngles][1], 1, "duplicate angles line");
  if (!by_kind[kAngles].empty()) {
    const Line& l = *by_kind[kAngles][0];
    const Token& t = token(l, 1, "split, wrap-exact or listed");
    if (t.text != "split" && t.text != "wrap-exact" && t.text != "listed")
      fail_at(l, t.column, "unknown angle class '" + t.text + "'");
    f.oracle = t.text;
  }
  for (const Line* l : by_kind[kSeq]) {
    if (f.oracle != "listed") fail_at(*l, 1, "seq lines need 'angles listed'");
    NSequence seq = parse_seq(b, *c, f.structure, f.n, *l);
    if (!is_valid_sequence(f.structure, seq)) fail_at(*l, 1, "not a valid n-Σ-sequence");
    f.listed.push_back(std::move(seq));
  }
  for (const Line* l : by_kind[kSub]) {
    std::vector<int> gens;
    for (std::size_t i = 1; i < l->tokens.size(); ++i) gens.push_back(b.generator(*l, l->tokens[i]));
    auto& slot = l->tokens[0].text == "Z" ? f.Z : f.D;
    if (slot) fail_at(*l, 1, "duplicate " + l->tokens[0].text + " line");
    slot = Subcategory(gens);
  }
  return f;
}

std::string serialize_category_file(const CategoryFile& f) {
  const SuspendedCategory& s = f.structure;
  const PresentedCategory& c = s.category();
  const int G = c.generator_count();
  std::ostringstream out;
  out << "field p=" << c.modulus() << "\n";
  out << "n=" << f.n << "\n";
  for (int g = 0; g < G; ++g) out << "gen " << c.generator_name(g) << "\n";
  for (int g = 0; g < G; ++g)
    for (int h = 0; h < G; ++h) {
      if (c.hom_dim(g, h) == 0) continue;
      out << "hom " << c.generator_name(g) << " " << c.generator_name(h) << " dim=" << c.hom_dim(g, h) << " basis=";
      const auto& names = c.basis_names(g, h);
      for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
      out << "\n";
    }
  for (int g = 0; g < G; ++g) out << "id " << c.generator_name(g) << " = " << lincomb_text(c, g, g, c.identity_coords(g)) << "\n";
  for (int g = 0; g < G; ++g)
    for (int h = 0; h < G; ++h)
      for (int k = 0; k < G; ++k)
        for (std::size_t a = 0; a < c.hom_dim(g, h); ++a)
          for (std::size_t bb = 0; bb < c.hom_dim(h, k); ++bb) {
            const Vec v = c.composite(g, h, k, a, bb);
            if (vec_is_zero(v)) continue;
            out << "comp " << c.basis_names(g, h)[a] << " " << c.basis_names(h, k)[bb] << " = "
                << lincomb_text(c, g, k, v) << "\n";
          }
  for (const auto& r : c.relations())
    out << "rel " << c.basis_names(r.g, r.h)[r.a] << " " << c.basis_names(r.h, r.k)[r.b] << " = "
        << lincomb_text(c, r.g, r.k, r.value) << "\n";
  for (int g = 0; g < G; ++g)
    out << "sigma gen " << c.generator_name(g) << " -> " << c.generator_name(s.sigma.object_image[g].summands[0]) << "\n";
  for (int g = 0; g < G; ++g)
    for (int h = 0; h < G; ++h) {
      const int sg = s.sigma.object_image[g].summands[0], sh = s.sigma.object_image[h].summands[0];
      const FpMatrix& m = s.sigma.map(g, h);
      for (std::size_t a = 0; a < c.hom_dim(g, h); ++a)
        out << "sigma hom " << c.basis_names(g, h)[a] << " -> " << lincomb_text(c, sg, sh, m.column(a)) << "\n";
    }
  out << "angles " << f.oracle << "\n";
  for (const auto& seq : f.listed) {
    out << "seq ";
    for (int i = 0; i < seq.n(); ++i) out << (i ? " | " : "") << object_text(c, seq.objects[i]);
    out << " ::";
    for (int i = 0; i < seq.n(); ++i) {
      out << (i ? " |" : "");
      if (seq.maps[i].coords.empty()) out << " -";
      for (int v : seq.maps[i].coords) out << " " << v;
    }
    out << "\n";
  }
  if (f.Z) out << "Z" << subcategory_text(c, *f.Z) << "\n";
  if (f.D) out << "D" << subcategory_text(c, *f.D) << "\n";
  return out.str();
}

CategoryFile export_corpus_entry(const CorpusEntry& e) {
  CategoryFile f;
  f.n = e.n;
  f.structure = e.structure;
  f.oracle = e.oracle;
  if (const auto* listed = dynamic_cast<const ListedClass*>(e.angles.get())) f.listed = listed->members();
  return f;
}

std::shared_ptr<const AngleClass> make_angle_class(const CategoryFile& f) {
  if (f.oracle == "listed") return std::make_shared<ListedClass>(f.structure, f.n, f.listed);
  return std::make_shared<HomExactClass>(f.structure, f.n, f.oracle);
}

Subcategory parse_subcategory(const PresentedCategory& c, const std::string& spec) {
  std::string s = spec;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::string name;
  std::vector<int> gens;
  while (in >> name) {
    if (name == "all") return Subcategory::all(c);
    if (name == "none" || name == "0") continue;
    const auto g = c.find_generator(name);
    if (!g) throw std::invalid_argument("unknown generator '" + name + "' in subcategory");
    gens.push_back(*g);
  }
  return Subcategory(gens);
}

namespace {

const std::pair<Task, const char*> kTasks[] = {
    {Task::validate_category, "validate-category"},
    {Task::check_axioms, "check-axioms"},
    {Task::validate_mutation_pair, "validate-mutation-pair"},
    {Task::build_quotient, "build-quotient"},
    {Task::verify_theorem, "verify-theorem"},
    {Task::verify_frobenius, "verify-frobenius"},
};

ObjectExpr object_from_json(const PresentedCategory& c, const Json& j) {
  ObjectExpr x;
  for (const auto& name : j) {
    const auto g = c.find_generator(name.get<std::string>());
    if (!g) throw std::invalid_argument("witness: unknown generator " + name.dump());
    x.summands.push_back(*g);
  }
  return x;
}

NSequence sequence_from_json(const PresentedCategory& c, const Json& j) {
  NSequence seq;
  for (const auto& o : j.at("objects")) seq.objects.push_back(object_from_json(c, o));
  for (const auto& m : j.at("maps")) {
    Morphism f{object_from_json(c, m.at("dom")), object_from_json(c, m.at("cod")), m.at("coords").get<Vec>()};
    if (f.coords.size() != hom_dim(c, f.dom, f.cod)) throw std::invalid_argument("witness: wrong coordinate count");
    for (int& v : f.coords) v = ((v % c.modulus()) + c.modulus()) % c.modulus();
    seq.maps.push_back(std::move(f));
  }
  if (seq.maps.size() != seq.objects.size()) throw std::invalid_argument("witness: malformed sequence");
  return seq;
}

Json functor_objects(const PresentedCategory& c, const FunctorData& F) {
  Json out = Json::object();
  for (int k = 0; k < c.generator_count(); ++k) out[c.generator_name(k)] = object_json(c, F.object_image[k]);
  return out;
}

AxiomReport build_quotient_task(const AngleClass& theta, const Subcategory& Z, const Subcategory& D,
                                const Budget& budget) {
  if (!D.subset_of(Z)) throw PreconditionError("D must be a subset of Z");
  AxiomReport rep;
  rep.task = "build-quotient";
  MutationPairResult mp = validate_mutation_pair(theta, Z, D, budget);
  rep.append(mp.report);
  if (!mp.witness) {
    rep.notes.push_back("no mutation-pair witness; the quotient was not built");
    return rep;
  }
  const PresentedCategory& c = theta.structure().category();
  auto q = std::make_shared<QuotientCategory>(theta.structure(), Z, D);
  const PresentedCategory& qc = q->category();
  Json names = Json::array(), dims = Json::array(), ideals = Json::array();
  for (int g : q->generators()) names.push_back(c.generator_name(g));
  for (int a = 0; a < qc.generator_count(); ++a) {
    Json row = Json::array();
    for (int b = 0; b < qc.generator_count(); ++b) row.push_back(qc.hom_dim(a, b));
    dims.push_back(row);
  }
  for (int g : Z.generators)
    for (int h : Z.generators)
      ideals.push_back(Json{{"from", c.generator_name(g)}, {"to", c.generator_name(h)}, {"basis", q->ideal_basis(g, h)}});
  rep.choices["quotient generators"] = names;
  rep.choices["quotient hom dims"] = dims;
  rep.choices["ideal"] = ideals;
  const QuotientFunctor T(q, theta, *mp.witness, budget);
  rep.choices["T"] = functor_objects(qc, T.structure().sigma);
  rep.choices["T'"] = functor_objects(qc, T.structure().sigma_inv);
  for (const auto& [label, F] : {std::pair{"T functorial", &T.structure().sigma}, std::pair{"T' functorial", &T.structure().sigma_inv}}) {
    AxiomResult r = AxiomResult::named(label);
    try {
      validate_functor(qc, *F, label);
      r.absorb(Verdict::pass);
    } catch (const ValidationError& e) {
      r.absorb(Verdict::fail, Witness{e.what(), Json::object()});
    }
    rep.add(r);
  }
  AxiomResult eq = AxiomResult::named("T' quasi-inverse to T");
  eq.absorb(T.equivalence_found() ? Verdict::pass
            : T.counit_search().outcome == SearchOutcome::none || T.unit_search().outcome == SearchOutcome::none
                ? Verdict::fail
                : Verdict::inconclusive);
  rep.add(eq);
  return rep;
}

AxiomReport validate_category_task(const CategoryFile& f) {
  const PresentedCategory& c = f.structure.category();
  AxiomReport rep;
  rep.task = "validate-category";
  AxiomResult laws = AxiomResult::named("associativity/unit consistency");
  laws.absorb(Verdict::pass);
  rep.add(laws);
  AxiomResult sigma = AxiomResult::named("suspension functor");
  sigma.absorb(Verdict::pass);
  rep.add(sigma);
  Json gens = Json::array(), dims = Json::array();
  for (int g = 0; g < c.generator_count(); ++g) {
    gens.push_back(c.generator_name(g));
    Json row = Json::array();
    for (int h = 0; h < c.generator_count(); ++h) row.push_back(c.hom_dim(g, h));
    dims.push_back(row);
  }
  rep.choices["generators"] = gens;
  rep.choices["hom dims"] = dims;
  rep.choices["angles"] = f.oracle;
  return rep;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

JobResult input_error(const JobConfig& cfg, const std::string& message) {
  Json j{{"task", to_string(cfg.task)},
         {"overall", "input error"},
         {"error", message},
         {"budgets", budget_json(cfg.budget)},
         {"seed", cfg.budget.seed}};
  return {3, dump(j)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

std::optional<Task> parse_task(const std::string& name) {
  for (const auto& [t, n] : kTasks)
    if (name == n) return t;
  return std::nullopt;
}

std::string to_string(Task t) {
  for (const auto& [k, n] : kTasks)
    if (k == t) return n;
  return "?";
}

MutationPairWitness parse_witness(const PresentedCategory& c, const Json& j, const Subcategory& Z,
                                  const Subcategory& D, int n) {
  const Json& src = j.contains("choices") ? j.at("choices") : j;
  MutationPairWitness w;
  w.Z = Z;
  w.D = D;
  w.n = n;
  for (const auto& [key, side] : {std::pair{"fixed angles", &w.left}, std::pair{"dual angles", &w.right}}) {
    const Json& list = src.at(key);
    if (list.size() != Z.generators.size()) throw std::invalid_argument(std::string("witness: ") + key + " do not match Z");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Json& a = list[i];
      if (a.contains("generator") && a["generator"] != c.generator_name(Z.generators[i]))
        throw std::invalid_argument(std::string("witness: ") + key + " are not in the order of Z");
      side->push_back(sequence_from_json(c, a.contains("angle") ? a.at("angle") : a));
    }
  }
  for (const auto* side : {&w.left, &w.right})
    for (const auto& a : *side)
      if (a.n() != n) throw std::invalid_argument("witness: sequence of the wrong length");
  return w;
}

JobResult run_job_text(const JobConfig& cfg, const std::string& text, const std::optional<std::string>& witness_text) {
  if (cfg.budget.cap_objects < 1 || cfg.budget.cap_solutions < 1 || cfg.budget.cap_instances < 1)
    return input_error(cfg, "caps must be positive");
  if (cfg.n != 0 && cfg.n < 3) return input_error(cfg, "n must be at least 3");
  try {
    CategoryFile f;
    try {
      f = parse_category_file(text);
    } catch (const ParseError& e) {
      const std::string msg = e.what();
      if (cfg.task != Task::validate_category || msg.rfind("validation: ", 0) != 0) throw;
      AxiomReport rep;
      rep.task = "validate-category";
      AxiomResult r = AxiomResult::named("presentation");
      r.absorb(Verdict::fail, Witness{msg.substr(12), Json::object()});
      rep.add(r);
      Json j = report_json(rep, cfg.budget);
      return {1, dump(j)};
    }
    if (cfg.n != 0) {
      if (!f.listed.empty() && cfg.n != f.n) return input_error(cfg, "--n does not match the listed sequences");
      f.n = cfg.n;
    }
    const PresentedCategory& c = f.structure.category();
    const auto theta = make_angle_class(f);
    const Subcategory Z = cfg.Z ? parse_subcategory(c, *cfg.Z) : f.Z ? *f.Z : Subcategory::all(c);
    const Subcategory D = cfg.D ? parse_subcategory(c, *cfg.D) : f.D ? *f.D : Subcategory::none();
    AxiomReport rep;
    switch (cfg.task) {
      case Task::validate_category:
        rep = validate_category_task(f);
        break;
      case Task::check_axioms:
        rep = check_axioms(*theta, cfg.budget, cfg.exec);
        rep.task = "check-axioms";
        break;
      case Task::validate_mutation_pair:
        if (!D.subset_of(Z)) throw PreconditionError("D must be a subset of Z");
        rep = validate_mutation_pair(*theta, Z, D, cfg.budget).report;
        rep.task = "validate-mutation-pair";
        break;
      case Task::build_quotient:
        rep = build_quotient_task(*theta, Z, D, cfg.budget);
        break;
      case Task::verify_theorem: {
        if (!D.subset_of(Z)) throw PreconditionError("D must be a subset of Z");
        std::optional<MutationPairWitness> w;
        if (witness_text) w = parse_witness(c, Json::parse(*witness_text), Z, D, f.n);
        rep = verify_quotient_theorem(theta, Z, D, cfg.budget, cfg.exec, w ? &*w : nullptr);
        break;
      }
      case Task::verify_frobenius:
        rep = verify_frobenius_corollary(theta, Z, cfg.budget, cfg.exec);
        break;
    }
    Json j = report_json(rep, cfg.budget);
    j["config"] = Json{{"n", f.n}, {"angles", f.oracle}};
    const Verdict v = rep.overall();
    return {v == Verdict::pass ? 0 : v == Verdict::fail ? 1 : 2, dump(j)};
  } catch (const ParseError& e) {
    return input_error(cfg, e.what());
  } catch (const Json::exception& e) {
    return input_error(cfg, std::string("witness: ") + e.what());
  } catch (const ValidationError& e) {
    return input_error(cfg, e.what());
  } catch (const std::invalid_argument& e) {
    return input_error(cfg, e.what());
  }
}

void write_file_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

JobResult run_job(const JobConfig& cfg) {
  JobResult r;
  try {
    const std::string text = read_file(cfg.input);
    std::optional<std::string> witness;
    if (cfg.witness) witness = read_file(*cfg.witness);
    r = run_job_text(cfg, text, witness);
  } catch (const std::invalid_argument& e) {
    r = input_error(cfg, e.what());
  }
  if (!cfg.output.empty()) write_file_atomically(cfg.output, r.report);
  return r;
}

}  // namespace nangle
