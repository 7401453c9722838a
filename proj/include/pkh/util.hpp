#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

namespace pkh {

// Laurent polynomial in one variable with integer coefficients.
class LaurentPoly {
 public:
  std::map<int, mpz_class> coeff;  // exponent -> coefficient, no zeros

  void add_term(int exp, const mpz_class& c) {
    auto it = coeff.find(exp);
    mpz_class v = (it == coeff.end()) ? c : it->second + c;
    if (v == 0)
      coeff.erase(exp);
    else
      coeff[exp] = v;
  }
  LaurentPoly operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (auto& [e, c] : o.coeff) r.add_term(e, c);
    return r;
  }
  LaurentPoly operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (auto& [e1, c1] : coeff)
      for (auto& [e2, c2] : o.coeff) r.add_term(e1 + e2, c1 * c2);
    return r;
  }
  LaurentPoly pow(int k) const {
    LaurentPoly r = one();
    for (int i = 0; i < k; ++i) r = r * (*this);
    return r;
  }
  static LaurentPoly one() {
    LaurentPoly p;
    p.coeff[0] = 1;
    return p;
  }
  static LaurentPoly monomial(int exp, const mpz_class& c = 1) {
    LaurentPoly p;
    if (c != 0) p.coeff[exp] = c;
    return p;
  }
  bool operator==(const LaurentPoly& o) const { return coeff == o.coeff; }

  std::string str(const std::string& var = "q") const {
    if (coeff.empty()) return "0";
    std::string s;
    for (auto& [e, c] : coeff) {
      mpz_class a = c > 0 ? c : mpz_class(-c);
      if (!s.empty())
        s += c > 0 ? " + " : " - ";
      else if (c < 0)
        s += "-";
      std::string term;
      if (a != 1 || e == 0) term += a.get_str();
      if (e != 0) {
        if (!term.empty()) term += "*";
        term += var;
        if (e != 1) term += "^" + std::to_string(e);
      }
      s += term;
    }
    return s;
  }
};

// exterior monomial helpers: subsets of an ordered generator set as bitmasks

inline int popcount(unsigned x) { return __builtin_popcount(x); }

// sign of y_A ^ y_B as a reordering into ascending order; 0 if A and B meet
inline int wedge_sign(unsigned a, unsigned b) {
  if (a & b) return 0;
  int inv = 0;
  for (unsigned bb = b; bb; bb &= bb - 1) {
    int i = __builtin_ctz(bb);
    inv += popcount(a >> (i + 1));
  }
  return (inv & 1) ? -1 : 1;
}

// sign of the contraction y_p* applied to y_U (p must be in U)
inline int contraction_sign(unsigned u, int p) {
  int before = popcount(u & ((1u << p) - 1));
  return (before & 1) ? -1 : 1;
}

// half-integers are carried around doubled; print 2x as x or x/2
inline std::string half_str(int doubled) {
  if (doubled % 2 == 0) return std::to_string(doubled / 2);
  return std::to_string(doubled) + "/2";
}

}  // namespace pkh
