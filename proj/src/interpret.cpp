#include <stdexcept>

#include "copycat/goi.hpp"

namespace copycat {

namespace {

struct StandardBasis {
  Element S = derived_standard(Derived::Ss);
  Element K = derived_standard(Derived::Ks);
  Element B = derived_standard(Derived::Bs);
  Element C = derived_standard(Derived::Cs);
  Element I = derived_standard(Derived::Is);
  Element W = derived_standard(Derived::Ws);

  const Element& operator[](cl::Comb c) const {
    switch (c) {
      case cl::Comb::S: return S;
      case cl::Comb::K: return K;
      case cl::Comb::B: return B;
      case cl::Comb::C: return C;
      case cl::Comb::I: return I;
      case cl::Comb::W: return W;
    }
    throw std::logic_error("unreachable");
  }
};

Element interpret(const cl::Term& t, const StandardBasis& basis) {
  if (t.is_var()) throw std::invalid_argument("cannot interpret free variable '" + t.name() + "'");
  if (t.is_const()) return basis[t.comb()];
  return std_app(interpret(t.fun(), basis), interpret(t.arg(), basis));
}

}  // namespace

Element interpret_cl(const cl::Term& t) {
  static const StandardBasis basis;
  return interpret(t, basis);
}

}  // namespace copycat
