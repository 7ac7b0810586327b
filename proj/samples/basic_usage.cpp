// Milnor number and the twisted de Rham dimensions of the E6 singularity.

#include <iostream>

#include "tdw/checks.hpp"
#include "tdw/parser.hpp"

int main() {
  const auto f = tdw::parse_polynomial("x^3 + y^4");
  std::cout << "f = " << tdw::to_string(f) << "\n";

  const auto mu = tdw::milnor_number(f);
  std::cout << "Milnor number: " << mu.value << " (" << tdw::to_string(mu.scope) << ")\n";

  const auto v = tdw::check_kontsevich_barannikov(f);
  std::cout << "twisted dims:";
  for (auto d : v.left.dims) std::cout << ' ' << d;
  std::cout << "\nkoszul dims: ";
  for (auto d : v.right.dims) std::cout << ' ' << d;
  std::cout << "\nequal: " << (v.equal ? "yes" : "no")
            << ", certified: " << (v.certified ? "yes" : "no") << "\n";
}
