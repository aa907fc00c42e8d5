// The q-shuffle of e2 and e3, its sigma-dual form, and the q-series check
// zeta_q(e2) zeta_q(e3) = zeta_q(e2 sh_q e3).
#include <iostream>

#include "qsh/qsh.hpp"

int main() {
  using namespace qsh;
  const NCPoly e2 = parse_poly("e2"), e3 = parse_poly("e3");

  const NCPoly sh = named_product("qshuffle", e2, e3);
  const NCPoly st = named_product("qstuffle", e2, e3);
  std::cout << "e2 sh_q e3 = " << sh << "\n";
  std::cout << "e2 *_q e3  = " << st << "\n";

  const NCPoly dual = sigma(named_product("qstuffle", sigma(e2), sigma(e3)));
  std::cout << "sigma(sigma e2 *_q sigma e3) == e2 sh_q e3: " << std::boolalpha << (dual == sh) << "\n";

  const int order = 12;
  ZetaQ zq(order);
  std::cout << "zeta_q(e2) zeta_q(e3) = " << to_text(zq(e2) * zq(e3)) << "\n";
  std::cout << "zeta_q(e2 sh_q e3)    = " << to_text(zq(sh)) << "\n";
}
