// Prints the double shuffle relations of weights 4 to 6 and checks each one
// against the dual formulation ds(u, v) = -tau(D(tau u, tau v)).
#include <cstdio>

#include "qsh/qsh.hpp"

int main() {
  using namespace qsh;
  for (int weight = 4; weight <= 6; ++weight) {
    std::printf("weight %d\n", weight);
    for (const auto& r : enumerate_ds_relations(weight)) {
      const bool dual = verify_ds_identity(r.u, r.v).passed();
      std::printf("  ds(%s, %s) = %s   |zeta| ~ %.1e%s\n", to_text(r.u).c_str(), to_text(r.v).c_str(),
                  to_text(r.relation).c_str(), r.residual, dual ? "" : "   (dual form disagrees)");
    }
  }
}
