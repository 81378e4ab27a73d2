#include "hkq/poly.hpp"

#include <sstream>

namespace hkq {

std::string Poly::str() const {
  if (is_zero()) return "0";
  const char* name = var_ == Var::x ? "x" : var_ == Var::t ? "t" : "p";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rat& c = c_[k];
    if (c == 0) continue;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    Rat ac = c > 0 ? c : Rat(-c);
    if (k == 0 || ac != 1) os << ac.get_str();
    if (k > 0) {
      if (ac != 1) os << "*";
      os << name;
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

}  // namespace hkq
