#include "amalgam/path_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace amalgam {

Quiver::Quiver(std::string name, int vertex_count, std::vector<Arrow> arrows)
    : name_(std::move(name)), vertex_count_(vertex_count), arrows_(std::move(arrows)) {
  if (vertex_count_ < 0) throw std::invalid_argument("quiver vertex count must be non-negative");
  for (std::size_t a = 0; a < arrows_.size(); ++a) {
    const Arrow& arr = arrows_[a];
    if (arr.name.empty()) throw std::invalid_argument("arrow " + std::to_string(a) + " has an empty name");
    if (arr.source < 0 || arr.source >= vertex_count_ || arr.target < 0 || arr.target >= vertex_count_) {
      throw std::invalid_argument("arrow '" + arr.name + "' has an endpoint outside the vertex range");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (arrows_[b].name == arr.name) throw std::invalid_argument("duplicate arrow name '" + arr.name + "'");
    }
  }
}

Quiver& Quiver::with_involution(const std::vector<std::pair<std::string, std::string>>& half_and_star) {
  std::vector<int> star(arrows_.size(), -1);
  std::vector<bool> half(arrows_.size(), false);
  for (const auto& [h, s] : half_and_star) {
    int a = arrow_index(h);
    int b = arrow_index(s);
    if (a == b) throw std::invalid_argument("involution has a fixed point at '" + h + "'");
    if (star[static_cast<std::size_t>(a)] != -1 || star[static_cast<std::size_t>(b)] != -1) {
      throw std::invalid_argument("arrow paired twice in involution: '" + h + "' / '" + s + "'");
    }
    if (arrows_[static_cast<std::size_t>(a)].source != arrows_[static_cast<std::size_t>(b)].target ||
        arrows_[static_cast<std::size_t>(a)].target != arrows_[static_cast<std::size_t>(b)].source) {
      throw std::invalid_argument("'" + s + "' does not reverse '" + h + "'");
    }
    star[static_cast<std::size_t>(a)] = b;
    star[static_cast<std::size_t>(b)] = a;
    half[static_cast<std::size_t>(a)] = true;
  }
  for (std::size_t a = 0; a < star.size(); ++a) {
    if (star[a] == -1) throw std::invalid_argument("arrow '" + arrows_[a].name + "' is not paired by the involution");
  }
  star_ = std::move(star);
  in_half_ = std::move(half);
  has_involution_ = true;
  return *this;
}

int Quiver::arrow_index(std::string_view name) const {
  for (std::size_t a = 0; a < arrows_.size(); ++a) {
    if (arrows_[a].name == name) return static_cast<int>(a);
  }
  throw std::out_of_range("no arrow named '" + std::string(name) + "' in quiver " + name_);
}

int Quiver::star(int a) const {
  if (!has_involution()) throw std::logic_error("quiver " + name_ + " has no involution");
  return star_.at(static_cast<std::size_t>(a));
}

bool Quiver::in_half(int a) const {
  if (!has_involution()) throw std::logic_error("quiver " + name_ + " has no involution");
  return in_half_.at(static_cast<std::size_t>(a));
}

std::vector<int> Quiver::half() const {
  std::vector<int> out;
  for (int a = 0; a < arrow_count(); ++a) {
    if (in_half(a)) out.push_back(a);
  }
  return out;
}

bool operator==(const Quiver& a, const Quiver& b) {
  if (a.vertex_count_ != b.vertex_count_ || a.arrows_.size() != b.arrows_.size() || a.star_ != b.star_ ||
      a.in_half_ != b.in_half_ || a.has_involution_ != b.has_involution_) {
    return false;
  }
  for (std::size_t k = 0; k < a.arrows_.size(); ++k) {
    const Arrow& x = a.arrows_[k];
    const Arrow& y = b.arrows_[k];
    if (x.name != y.name || x.source != y.source || x.target != y.target) return false;
  }
  return true;
}

int path_end(const Quiver& q, const Path& p) {
  return p.arrows.empty() ? p.start : q.arrow(p.arrows.back()).target;
}

namespace {

void check_path(const Quiver& q, const Path& p) {
  if (p.start < 0 || p.start >= q.vertex_count()) throw std::invalid_argument("path starts outside the quiver");
  int at = p.start;
  for (std::size_t k = 0; k < p.arrows.size(); ++k) {
    int a = p.arrows[k];
    if (a < 0 || a >= q.arrow_count()) throw std::invalid_argument("path uses an unknown arrow");
    if (q.arrow(a).source != at) {
      throw std::invalid_argument("arrow '" + q.arrow(a).name + "' at position " + std::to_string(k) +
                                  " does not continue the path");
    }
    at = q.arrow(a).target;
  }
}

void require_same(const QuiverPtr& a, const QuiverPtr& b) {
  if (a != b && !(*a == *b)) throw std::invalid_argument("path algebra elements live on different quivers");
}

void require_involution(const Quiver& q) {
  if (!q.has_involution()) throw std::logic_error("quiver " + q.name() + " has no involution");
}

}  // namespace

PathElement::PathElement(QuiverPtr quiver, Path path, Cyclotomic coeff) : quiver_(std::move(quiver)) {
  check_path(*quiver_, path);
  add_term(path, coeff);
}

PathElement PathElement::idempotent(QuiverPtr quiver, int vertex) {
  return PathElement(std::move(quiver), Path{vertex, {}});
}

PathElement PathElement::arrow(QuiverPtr quiver, std::string_view name) {
  int a = quiver->arrow_index(name);
  int start = quiver->arrow(a).source;
  return PathElement(std::move(quiver), Path{start, {a}});
}

PathElement PathElement::one(QuiverPtr quiver) {
  PathElement out(quiver);
  for (int v = 0; v < quiver->vertex_count(); ++v) out.add_term(Path{v, {}}, 1);
  return out;
}

PathElement PathElement::word(QuiverPtr quiver, const std::vector<std::string>& names) {
  if (names.empty()) throw std::invalid_argument("word needs at least one arrow");
  Path p;
  for (const auto& n : names) p.arrows.push_back(quiver->arrow_index(n));
  p.start = quiver->arrow(p.arrows.front()).source;
  return PathElement(std::move(quiver), std::move(p));
}

Cyclotomic PathElement::coeff(const Path& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Cyclotomic() : it->second;
}

void PathElement::add_term(const Path& p, const Cyclotomic& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PathElement& PathElement::operator+=(const PathElement& other) {
  require_same(quiver_, other.quiver_);
  for (const auto& [p, c] : other.terms_) add_term(p, c);
  return *this;
}

PathElement& PathElement::operator-=(const PathElement& other) {
  require_same(quiver_, other.quiver_);
  for (const auto& [p, c] : other.terms_) add_term(p, -c);
  return *this;
}

PathElement& PathElement::operator*=(const Cyclotomic& scalar) {
  if (scalar.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, c] : terms_) c *= scalar;
  return *this;
}

PathElement PathElement::operator-() const {
  PathElement out = *this;
  return out *= Cyclotomic(-1);
}

PathElement PathElement::corner(int u, int v) const {
  PathElement out(quiver_);
  for (const auto& [p, c] : terms_) {
    if (p.start == u && path_end(*quiver_, p) == v) out.terms_.emplace(p, c);
  }
  return out;
}

bool operator==(const PathElement& a, const PathElement& b) {
  return (a.quiver_ == b.quiver_ || *a.quiver_ == *b.quiver_) && a.terms_ == b.terms_;
}

PathElement operator+(PathElement a, const PathElement& b) { return a += b; }
PathElement operator-(PathElement a, const PathElement& b) { return a -= b; }
PathElement operator*(const Cyclotomic& c, PathElement x) { return x *= c; }

PathElement operator*(const PathElement& x, const PathElement& y) {
  require_same(x.quiver(), y.quiver());
  const Quiver& q = *x.quiver();
  PathElement out(x.quiver());
  for (const auto& [p, c] : x.terms()) {
    int end = path_end(q, p);
    for (const auto& [r, d] : y.terms()) {
      if (r.start != end) continue;
      Path joined{p.start, p.arrows};
      joined.arrows.insert(joined.arrows.end(), r.arrows.begin(), r.arrows.end());
      out.add_term(joined, c * d);
    }
  }
  return out;
}

PathElement multiply(const PathElement& x, const PathElement& y) { return x * y; }

PathElement power(const PathElement& x, unsigned exponent) {
  PathElement out = PathElement::one(x.quiver());
  for (unsigned k = 0; k < exponent; ++k) out = out * x;
  return out;
}

std::string to_string(const PathElement& x) {
  if (x.is_zero()) return "0";
  const Quiver& q = *x.quiver();
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : x.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_compact_string() << ") * ";
    if (p.is_idempotent()) {
      os << "e" << (p.start + 1);
    } else {
      for (std::size_t k = 0; k < p.arrows.size(); ++k) {
        if (k > 0) os << ".";
        os << q.arrow(p.arrows[k]).name;
      }
    }
  }
  return os.str();
}

namespace {

class ElementParser {
public:
  ElementParser(QuiverPtr q, std::string_view text) : q_(std::move(q)), text_(text) {}

  PathElement parse() {
    PathElement out(q_);
    skip();
    if (text_.substr(pos_) == "0") return out;
    bool first = true;
    while (true) {
      skip();
      if (pos_ >= text_.size()) break;
      Cyclotomic sign = 1;
      if (text_[pos_] == '+' || text_[pos_] == '-') {
        if (text_[pos_] == '-') sign = -1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-' between terms");
      }
      first = false;
      Cyclotomic coeff = 1;
      if (pos_ < text_.size() && text_[pos_] == '(') {
        coeff = Cyclotomic::parse(balanced());
        skip();
        expect('*');
        skip();
      } else if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        coeff = Cyclotomic::parse(number());
        skip();
        expect('*');
        skip();
      }
      out.add_term(path(), sign * coeff);
    }
    if (first) fail("empty element");
    return out;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("path element parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view number() {
    std::size_t begin = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) ++pos_;
    return text_.substr(begin, pos_ - begin);
  }

  std::string_view balanced() {
    std::size_t open = pos_;
    int depth = 0;
    for (; pos_ < text_.size(); ++pos_) {
      if (text_[pos_] == '(') ++depth;
      if (text_[pos_] == ')' && --depth == 0) {
        ++pos_;
        return text_.substr(open + 1, pos_ - open - 2);
      }
    }
    fail("unbalanced parenthesis");
  }

  std::string identifier() {
    std::size_t begin = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*' || c == '\'') {
        ++pos_;
      } else {
        break;
      }
    }
    if (begin == pos_) fail("expected a vertex idempotent or an arrow name");
    return std::string(text_.substr(begin, pos_ - begin));
  }

  Path path() {
    std::string first = identifier();
    std::vector<std::string> names{first};
    while (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      names.push_back(identifier());
    }
    if (names.size() == 1 && is_idempotent_name(names[0]) && !has_arrow(names[0])) {
      int v = std::stoi(names[0].substr(1)) - 1;
      if (v < 0 || v >= q_->vertex_count()) fail("vertex " + names[0] + " out of range");
      return Path{v, {}};
    }
    Path p;
    for (const auto& n : names) {
      if (!has_arrow(n)) {
        throw std::out_of_range("path element parse error at offset " + std::to_string(pos_) + ": unknown arrow '" +
                                n + "'");
      }
      p.arrows.push_back(q_->arrow_index(n));
    }
    p.start = q_->arrow(p.arrows.front()).source;
    check_path(*q_, p);
    return p;
  }

  static bool is_idempotent_name(const std::string& name) {
    return name.size() > 1 && name[0] == 'e' &&
           std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  }

  bool has_arrow(const std::string& name) const {
    for (const auto& a : q_->arrows()) {
      if (a.name == name) return true;
    }
    return false;
  }

  QuiverPtr q_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

PathElement parse_element(QuiverPtr quiver, std::string_view text) {
  return ElementParser(std::move(quiver), text).parse();
}

Necklace make_necklace(const Quiver& q, std::vector<int> word) {
  if (word.empty()) throw std::invalid_argument("necklace word must be non-empty");
  Path p{q.arrow(word.front()).source, word};
  check_path(q, p);
  if (path_end(q, p) != p.start) throw std::invalid_argument("necklace word is not a closed path");
  std::vector<int> best = word;
  std::vector<int> rotated = word;
  for (std::size_t k = 1; k < word.size(); ++k) {
    std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
    if (rotated < best) best = rotated;
  }
  return Necklace{std::move(best), -1};
}

Necklace necklace_from_names(const Quiver& q, const std::vector<std::string>& names) {
  std::vector<int> word;
  for (const auto& n : names) word.push_back(q.arrow_index(n));
  return make_necklace(q, std::move(word));
}

NecklaceSum single(const Necklace& n, const Cyclotomic& c) {
  NecklaceSum out;
  if (!c.is_zero()) out.emplace(n, c);
  return out;
}

void accumulate(NecklaceSum& into, const NecklaceSum& x, const Cyclotomic& scale) {
  for (const auto& [n, c] : x) {
    Cyclotomic add = c * scale;
    if (add.is_zero()) continue;
    auto [it, inserted] = into.try_emplace(n, add);
    if (!inserted) {
      it->second += add;
      if (it->second.is_zero()) into.erase(it);
    }
  }
}

NecklaceSum close_up(const PathElement& x) {
  const Quiver& q = *x.quiver();
  NecklaceSum out;
  for (const auto& [p, c] : x.terms()) {
    if (path_end(q, p) != p.start) continue;
    Necklace n = p.is_idempotent() ? Necklace{{}, p.start} : make_necklace(q, p.arrows);
    accumulate(out, single(n, c));
  }
  return out;
}

Necklace necklace_power(const Quiver& q, const Necklace& n, unsigned k) {
  if (n.word.empty() || k == 0) throw std::invalid_argument("necklace_power needs a non-empty word and k >= 1");
  std::vector<int> word;
  for (unsigned j = 0; j < k; ++j) word.insert(word.end(), n.word.begin(), n.word.end());
  return make_necklace(q, std::move(word));
}

std::string to_string(const Quiver& q, const NecklaceSum& x) {
  if (x.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, c] : x) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_compact_string() << ") * [";
    if (n.word.empty()) {
      os << "e" << (n.vertex + 1);
    } else {
      for (std::size_t k = 0; k < n.word.size(); ++k) {
        if (k > 0) os << ".";
        os << q.arrow(n.word[k]).name;
      }
    }
    os << "]";
  }
  return os.str();
}

PathElement necklace_derivative(const QuiverPtr& q, const Necklace& n, int arrow) {
  PathElement out(q);
  const std::size_t len = n.word.size();
  for (std::size_t pos = 0; pos < len; ++pos) {
    if (n.word[pos] != arrow) continue;
    Path p{q->arrow(arrow).target, {}};
    for (std::size_t k = 1; k < len; ++k) p.arrows.push_back(n.word[(pos + k) % len]);
    out.add_term(p, 1);
  }
  return out;
}

PathElement necklace_derivative(const QuiverPtr& q, const NecklaceSum& n, int arrow) {
  PathElement out(q);
  for (const auto& [neck, c] : n) out += c * necklace_derivative(q, neck, arrow);
  return out;
}

NecklaceSum necklace_bracket(const QuiverPtr& q, const NecklaceSum& n, const NecklaceSum& m) {
  require_involution(*q);
  PathElement total(q);
  for (int a : q->half()) {
    int as = q->star(a);
    total += necklace_derivative(q, n, a) * necklace_derivative(q, m, as);
    total -= necklace_derivative(q, n, as) * necklace_derivative(q, m, a);
  }
  return close_up(total);
}

PathElement moment_element(const QuiverPtr& q) {
  require_involution(*q);
  PathElement m(q);
  for (int a : q->half()) {
    int as = q->star(a);
    m.add_term(Path{q->arrow(a).source, {a, as}}, 1);
    m.add_term(Path{q->arrow(as).source, {as, a}}, -1);
  }
  return m;
}

Derivation symplectic_derivation(const QuiverPtr& q, const NecklaceSum& n) {
  require_involution(*q);
  Derivation d(static_cast<std::size_t>(q->arrow_count()), PathElement(q));
  for (int a : q->half()) {
    int as = q->star(a);
    d[static_cast<std::size_t>(a)] = -necklace_derivative(q, n, as);
    d[static_cast<std::size_t>(as)] = necklace_derivative(q, n, a);
  }
  return d;
}

PathElement apply_derivation(const Derivation& d, const PathElement& x) {
  const QuiverPtr& q = x.quiver();
  if (d.size() != static_cast<std::size_t>(q->arrow_count())) {
    throw std::invalid_argument("derivation table does not match the quiver");
  }
  PathElement out(q);
  for (const auto& [p, c] : x.terms()) {
    const std::size_t len = p.arrows.size();
    for (std::size_t k = 0; k < len; ++k) {
      const PathElement& image = d[static_cast<std::size_t>(p.arrows[k])];
      if (image.is_zero()) continue;
      Path prefix{p.start, std::vector<int>(p.arrows.begin(), p.arrows.begin() + static_cast<std::ptrdiff_t>(k))};
      int mid = q->arrow(p.arrows[k]).target;
      Path suffix{mid, std::vector<int>(p.arrows.begin() + static_cast<std::ptrdiff_t>(k + 1), p.arrows.end())};
      out += c * (PathElement(q, prefix) * image * PathElement(q, suffix));
    }
  }
  return out;
}

Derivation derivation_commutator(const Derivation& d1, const Derivation& d2) {
  if (d1.size() != d2.size()) throw std::invalid_argument("derivation tables differ in size");
  Derivation out;
  out.reserve(d1.size());
  for (std::size_t a = 0; a < d1.size(); ++a) {
    out.push_back(apply_derivation(d1, d2[a]) - apply_derivation(d2, d1[a]));
  }
  return out;
}

std::vector<PathElement> derivation_orbit(const Derivation& d, const PathElement& x, int nil_bound) {
  if (nil_bound < 0) throw std::invalid_argument("nil_bound must be non-negative");
  std::vector<PathElement> orbit{x};
  PathElement current = x;
  for (int j = 0; j <= nil_bound; ++j) {
    current = apply_derivation(d, current);
    if (current.is_zero()) return orbit;
    orbit.push_back(current);
  }
  throw std::runtime_error("derivation is not nilpotent on the element within " + std::to_string(nil_bound) +
                           " iterations");
}

PathElement flow_automorphism(const Derivation& d, const Cyclotomic& t, const PathElement& x, int nil_bound) {
  std::vector<PathElement> orbit = derivation_orbit(d, x, nil_bound);
  PathElement out(x.quiver());
  Cyclotomic factor = 1;
  for (std::size_t j = 0; j < orbit.size(); ++j) {
    if (j > 0) factor = factor * t / Cyclotomic(static_cast<long>(j));
    out += factor * orbit[j];
  }
  return out;
}

QuiverPtr hexagon_quiver() {
  static const QuiverPtr hex = [] {
    std::vector<Arrow> arrows;
    for (int i = 0; i < 6; ++i) arrows.push_back({"s" + std::to_string(i + 1), i, (i + 1) % 6});
    for (int i = 0; i < 6; ++i) arrows.push_back({"t" + std::to_string(i + 1), (i + 1) % 6, i});
    Quiver q("hexagon", 6, std::move(arrows));
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int i = 1; i <= 6; ++i) pairs.emplace_back("s" + std::to_string(i), "t" + std::to_string(i));
    q.with_involution(pairs);
    return std::make_shared<const Quiver>(std::move(q));
  }();
  return hex;
}

QuiverPtr dinfty_quiver() {
  static const QuiverPtr q = [] {
    Quiver d("dinfty", 4, {{"s1", 0, 1}, {"t1", 1, 0}, {"s2", 2, 3}, {"t2", 3, 2}});
    d.with_involution({{"s1", "t1"}, {"s2", "t2"}});
    return std::make_shared<const Quiver>(std::move(d));
  }();
  return q;
}

QuiverPtr calogero_quiver() {
  static const QuiverPtr q = [] {
    Quiver c("calogero", 2, {{"a", 0, 1}, {"a*", 1, 0}, {"b", 1, 1}, {"b*", 1, 1}});
    c.with_involution({{"a", "a*"}, {"b", "b*"}});
    return std::make_shared<const Quiver>(std::move(c));
  }();
  return q;
}

Necklace hexagon_c(const Quiver& hex, int i) {
  if (i < 1 || i > 6) throw std::out_of_range("hexagon necklace index must be in 1..6");
  return necklace_from_names(hex, {"s" + std::to_string(i), "t" + std::to_string(i)});
}

Necklace hexagon_s(const Quiver& hex) { return necklace_from_names(hex, {"s1", "s2", "s3", "s4", "s5", "s6"}); }

Necklace hexagon_t(const Quiver& hex) { return necklace_from_names(hex, {"t6", "t5", "t4", "t3", "t2", "t1"}); }

std::string to_string(GroupTag tag) {
  switch (tag) {
    case GroupTag::Dinfty: return "Dinfty";
    case GroupTag::ProjModular: return "ProjModular";
    case GroupTag::Modular: return "Modular";
    case GroupTag::Braid3: return "Braid3";
  }
  return "?";
}

GroupTag group_tag_from_string(std::string_view text) {
  for (GroupTag t : {GroupTag::Dinfty, GroupTag::ProjModular, GroupTag::Modular, GroupTag::Braid3}) {
    if (to_string(t) == text) return t;
  }
  throw std::invalid_argument("unknown group tag '" + std::string(text) + "'");
}

PhiMap phi_map(GroupTag group) {
  if (group == GroupTag::Dinfty) {
    QuiverPtr q = dinfty_quiver();
    return {parse_element(q, "e1 - e2 + e3 - e4 + s1 + s2"), parse_element(q, "e1 - e2 - e3 + e4 + t1 + t2")};
  }
  if (group == GroupTag::ProjModular) {
    QuiverPtr q = hexagon_quiver();
    return {parse_element(q, "e1 - e2 + e3 - e4 + e5 - e6 + (i*rho) * s1 + (i*rho^2) * s3 + (i) * s5 + t2 + t4 + t6"),
            parse_element(q,
                          "e1 + (rho) * e2 + (rho^2) * e3 + e4 + (rho) * e5 + (rho^2) * e6"
                          " + s2 + (rho) * s4 + (rho^2) * s6 + (i) * t1 + (i) * t3 + (i) * t5")};
  }
  throw std::invalid_argument("phi_map is defined for Dinfty and ProjModular only");
}

}  // namespace amalgam
