// Prints the two ice partition functions for a few partitions and checks
// that each one factors as a deformed denominator times a Schur polynomial.

#include <iostream>

#include "ice/ice.hpp"

int main() {
  for (const char* text : {"0,0", "1,0", "1,1,0"}) {
    auto lambda = ice::Partition::parse(text);
    auto s = ice::schur_bialternant(lambda);
    std::cout << "lambda = (" << lambda.to_string() << ")\n";
    std::cout << "  s_lambda  = " << ice::to_text(s) << '\n';
    for (auto kind : {ice::IceKind::Gamma, ice::IceKind::Delta}) {
      auto z = ice::partition_function(kind, lambda);
      bool factors = z == ice::deformed_denominator(kind, lambda.n()) * s;
      std::cout << "  Z(" << ice::name(kind) << ") = " << ice::to_text(z) << (factors ? "" : "  [does not factor]")
                << '\n';
    }
  }
}
