#include "rectpath/costexpr.hpp"

#include <cctype>
#include <sstream>

namespace rectpath {

const char* objective_name(Objective o) {
  switch (o) {
    case Objective::MLS: return "mls";
    case Objective::SML: return "sml";
    case Objective::Cost: return "cost";
    default: return "ml";
  }
}

namespace {

// Strip all whitespace.
std::string squeeze(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

// Parse "<int>" fully.
std::optional<i64> parse_int(const std::string& s) {
  if (s.empty()) return std::nullopt;
  size_t pos = 0;
  try {
    i64 v = std::stoll(s, &pos);
    if (pos != s.size()) return std::nullopt;
    return v;
  } catch (...) {
    return std::nullopt;
  }
}

// Parse a term "a", "b", "K*a", "K*b"; returns (coef_a, coef_b).
std::optional<std::pair<i64, i64>> parse_term(const std::string& t) {
  if (t.empty()) return std::nullopt;
  char var = t.back();
  if (var != 'a' && var != 'b') return std::nullopt;
  i64 coef = 1;
  std::string head = t.substr(0, t.size() - 1);
  if (!head.empty()) {
    if (head.back() != '*') return std::nullopt;
    auto v = parse_int(head.substr(0, head.size() - 1));
    if (!v) return std::nullopt;
    coef = *v;
  }
  if (var == 'a') return std::make_pair(coef, i64(0));
  return std::make_pair(i64(0), coef);
}

}  // namespace

std::optional<CostFunction> CostFunction::parse(const std::string& expr) {
  std::string s = squeeze(expr);
  CostFunction f;
  if (s.rfind("klink:", 0) == 0) {
    auto v = parse_int(s.substr(6));
    if (!v || *v < 0) return std::nullopt;
    f.kind = Kind::KLink;
    f.bound = *v;
    return f;
  }
  if (s.rfind("llen:", 0) == 0) {
    auto v = parse_int(s.substr(5));
    if (!v || *v < 0) return std::nullopt;
    f.kind = Kind::LLen;
    f.bound = *v;
    return f;
  }
  // Linear: sum of one or two '+'-separated terms.
  f.kind = Kind::Linear;
  f.ca = f.cb = 0;
  size_t start = 0;
  int terms = 0;
  while (start <= s.size()) {
    size_t plus = s.find('+', start);
    std::string t = s.substr(start, plus == std::string::npos ? plus : plus - start);
    auto term = parse_term(t);
    if (!term) return std::nullopt;
    f.ca += term->first;
    f.cb += term->second;
    if (++terms > 2) return std::nullopt;
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  if (terms == 0) return std::nullopt;
  if (f.ca < 0 || f.cb < 0) return std::nullopt;  // must be non-decreasing
  return f;
}

std::string CostFunction::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Linear: os << ca << "*a+" << cb << "*b"; break;
    case Kind::KLink: os << "klink:" << bound; break;
    default: os << "llen:" << bound; break;
  }
  return os.str();
}

}  // namespace rectpath
