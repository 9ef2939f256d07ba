#pragma once
// Cost functions over (length, links) for the minimum-cost objective.
//
// Supported expression forms (integer parameters only):
//   "a+K*b"    linear combination length + K*links  (also "a+b", "K*a+b",
//              "J*a+K*b"); `a` stands for length, `b` for links
//   "klink:K"  minimize length subject to links <= K (infinite otherwise)
//   "llen:L"   minimize links subject to length <= L (infinite otherwise)
// All forms are non-decreasing in each argument.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "rectpath/geom.hpp"

namespace rectpath {

// The four path-optimization objectives.
//   MLS: lexicographic (length, links); SML: (links, length);
//   Cost: minimum f(length, links) for a monotone f; ML: minimum links.
enum class Objective { MLS, SML, Cost, ML };
const char* objective_name(Objective o);

struct CostFunction {
  enum class Kind { Linear, KLink, LLen } kind = Kind::Linear;
  i64 ca = 1;     // linear: coefficient of length
  i64 cb = 1;     // linear: coefficient of links
  i64 bound = 0;  // klink/llen bound

  static constexpr i64 kInf = std::numeric_limits<i64>::max();

  i64 operator()(i64 length, i64 links) const {
    switch (kind) {
      case Kind::Linear: return ca * length + cb * links;
      case Kind::KLink: return links <= bound ? length : kInf;
      default: return length <= bound ? i64(links) : kInf;
    }
  }
  i64 operator()(Measure m) const { return (*this)(m.len, m.links); }

  std::string str() const;
  // Parses the grammar above; nullopt on malformed/non-monotone input.
  static std::optional<CostFunction> parse(const std::string& expr);
};

}  // namespace rectpath
