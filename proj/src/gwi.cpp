#include "taut/gwi.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "taut/errors.hpp"

namespace taut {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  void skip_space() {
    while (at_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[at_]))) ++at_;
  }
  bool done() {
    skip_space();
    return at_ >= s_.size();
  }
  char peek() {
    skip_space();
    return at_ < s_.size() ? s_[at_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++at_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("gwi parse error at offset " + std::to_string(at_) + ": " + what + " in '" +
                     std::string(s_) + "'");
  }

  std::string digits() {
    const std::size_t start = at_;
    while (at_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[at_]))) ++at_;
    if (start == at_) fail("expected a number");
    return std::string(s_.substr(start, at_ - start));
  }
  int nat() {
    const std::string d = digits();
    if (d.size() > 9) fail("number too large");
    return std::stoi(d);
  }
  Rational unsigned_rational() {
    skip_space();
    std::string text = digits();
    if (at_ < s_.size() && s_[at_] == '/') {
      ++at_;
      text += "/" + digits();
    }
    return parse_rational(text);
  }

  DecoratedGraph graph() {
    DecoratedGraph g;
    std::map<int, int> internal_ids;
    if (peek() != '<') fail("expected '<'");
    while (peek() == '<') {
      ++at_;
      struct Item {
        bool internal;
        int id;
        int psi;
      };
      std::vector<Item> items;
      while (peek() != '>') {
        Item it{false, 0, 0};
        if (peek() == 'e') {
          ++at_;
          it.internal = true;
        }
        if (at_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[at_]))) fail("expected a label");
        it.id = nat();
        if (at_ < s_.size() && s_[at_] == '^') {
          ++at_;
          it.psi = nat();
        }
        items.push_back(it);
        if (peek() == '\0') fail("unterminated bracket");
      }
      ++at_;
      if (at_ >= s_.size() || s_[at_] != '_') fail("expected '_' after '>'");
      ++at_;
      const int genus = nat();
      std::vector<int> kappa;
      if (at_ < s_.size() && s_[at_] == '[') {
        ++at_;
        do {
          if (peek() != 'k') fail("expected 'k'");
          ++at_;
          kappa.push_back(nat());
        } while (accept(','));
        expect(']');
      }
      const int v = g.add_vertex(genus, std::move(kappa));
      for (const auto& it : items) {
        if (it.internal)
          g.half_edges.push_back(HalfEdge{v, Label::internal(it.id), it.psi});
        else
          g.add_leg(v, it.id, it.psi);
      }
    }
    return g;
  }

  LinearForm linear_form() {
    LinearForm f;
    bool first = true;
    while (true) {
      Rational sign = 1;
      if (accept('-'))
        sign = -1;
      else if (!first && !accept('+'))
        break;
      else if (first)
        accept('+');
      Rational q = 1;
      if (peek() != 'c') {
        q = unsigned_rational();
        expect('*');
      }
      if (peek() != 'c') fail("expected unknown 'c<nat>'");
      ++at_;
      const int index = nat();
      f += LinearForm::unknown(index, sign * q);
      first = false;
      if (peek() == ')') break;
    }
    return f;
  }

  std::string_view s_;
  std::size_t at_ = 0;
};

template <class Coeff, class CoeffParser>
Combination<Coeff> parse_terms(std::string_view text, CoeffParser&& coeff) {
  Parser p(text);
  Combination<Coeff> out;
  if (p.done()) p.fail("empty sum");
  if (p.peek() == '0') {
    const std::size_t save = p.at_;
    p.digits();
    if (p.done()) return out;
    p.at_ = save;
  }
  bool first = true;
  while (!p.done()) {
    Rational sign = 1;
    if (p.accept('-'))
      sign = -1;
    else if (!p.accept('+') && !first)
      p.fail("expected '+' or '-'");
    first = false;
    Coeff c = coeff(p);
    c *= sign;
    DecoratedGraph g = p.graph();
    out.add(g, c);
  }
  return out;
}

std::string item(const std::string& name, int psi) { return psi == 0 ? name : name + "^" + std::to_string(psi); }

std::string coefficient_prefix(const Rational& c, bool first) {
  const Rational a = abs(c);
  std::string out;
  if (first)
    out = sgn(c) < 0 ? (a == 1 ? "-1*" : "-" + to_string(a) + "*") : (a == 1 ? "" : to_string(a) + "*");
  else
    out = std::string(sgn(c) < 0 ? " - " : " + ") + (a == 1 ? "" : to_string(a) + "*");
  return out;
}

}  // namespace

DecoratedGraph parse_graph(std::string_view text) {
  Parser p(text);
  DecoratedGraph g = p.graph();
  if (!p.done()) p.fail("trailing text");
  return g;
}

FormalSum parse_sum(std::string_view text) {
  return parse_terms<Rational>(text, [](Parser& p) {
    if (p.peek() == '<') return Rational(1);
    Rational q = p.unsigned_rational();
    p.expect('*');
    return q;
  });
}

SymbolicSum parse_symbolic_sum(std::string_view text) {
  return parse_terms<LinearForm>(text, [](Parser& p) {
    LinearForm f;
    if (p.accept('(')) {
      f = p.linear_form();
      p.expect(')');
    } else if (p.peek() == 'c') {
      ++p.at_;
      f = LinearForm::unknown(p.nat());
    } else {
      p.fail("expected a symbolic coefficient");
    }
    p.expect('*');
    return f;
  });
}

std::string to_gwi(const DecoratedGraph& g) {
  std::map<int, int> rename;
  for (auto [a, b] : g.edges()) rename.emplace(g.half_edges[a].label.id, static_cast<int>(rename.size()));
  std::string out;
  for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
    std::vector<std::pair<int, int>> legs;
    std::vector<std::pair<int, int>> internal;
    for (const auto& h : g.half_edges) {
      if (h.vertex != v) continue;
      if (h.label.is_external()) {
        legs.emplace_back(h.label.id, h.psi);
      } else {
        auto it = rename.find(h.label.id);
        internal.emplace_back(it == rename.end() ? h.label.id : it->second, h.psi);
      }
    }
    std::sort(legs.begin(), legs.end());
    std::sort(internal.begin(), internal.end());
    if (v > 0) out += ' ';
    out += '<';
    bool first = true;
    for (auto [l, p] : legs) {
      if (!first) out += ' ';
      out += item(std::to_string(l), p);
      first = false;
    }
    for (auto [e, p] : internal) {
      if (!first) out += ' ';
      out += item("e" + std::to_string(e), p);
      first = false;
    }
    out += ">_" + std::to_string(g.vertices[v].genus);
    const auto& kappa = g.vertices[v].kappa;
    if (!kappa.empty()) {
      out += '[';
      for (std::size_t i = 0; i < kappa.size(); ++i) out += (i ? ",k" : "k") + std::to_string(kappa[i]);
      out += ']';
    }
  }
  return out;
}

std::string to_gwi(const CanonicalForm& form) { return to_gwi(to_graph(form)); }

std::string to_gwi(const FormalSum& s) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : s) {
    out += coefficient_prefix(c, first) + to_gwi(k);
    first = false;
  }
  return out;
}

std::string to_string(const LinearForm& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [i, q] : f.terms()) {
    out += coefficient_prefix(q, first) + "c" + std::to_string(i);
    first = false;
  }
  // "-1*c2" reads worse than "-c2" inside a form.
  if (out.rfind("-1*", 0) == 0) out.erase(1, 2);
  return out;
}

std::string to_gwi(const SymbolicSum& s) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, f] : s) {
    if (!first) out += " + ";
    const auto& t = f.terms();
    if (t.size() == 1 && t.begin()->second == 1)
      out += "c" + std::to_string(t.begin()->first);
    else
      out += "(" + to_string(f) + ")";
    out += "*" + to_gwi(k);
    first = false;
  }
  return out;
}

GwiDocument read_gwi_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  GwiDocument doc;
  std::string line;
  while (std::getline(in, line)) {
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    line = line.substr(start);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        std::string key = line.substr(1, colon - 1);
        std::string value = line.substr(colon + 1);
        auto trim = [](std::string& x) {
          x.erase(0, x.find_first_not_of(' '));
          x.erase(x.find_last_not_of(' ') + 1);
        };
        trim(key);
        trim(value);
        if (!key.empty() && key.find(' ') == std::string::npos) doc.headers.emplace(key, value);
      }
      continue;
    }
    doc.lines.push_back(line);
  }
  return doc;
}

FormalSum read_sum_file(const std::filesystem::path& path) {
  const auto doc = read_gwi_file(path);
  std::string joined;
  for (const auto& l : doc.lines) joined += l + " ";
  if (joined.empty()) throw InputError(path.string() + " contains no sum");
  return parse_sum(joined);
}

}  // namespace taut
