// KIEs of the three isotope pairs between 275 and 325 K, followed by the
// apparent Arrhenius parameters at 288 K.

#include <cstdio>

#include "qtst/qtst.hpp"

int main() {
  using namespace qtst;
  const double w0 = 3000.0, wb = 1000.0;
  std::printf("%6s %10s %10s %10s\n", "T/K", "kH/kD", "kH/kT", "kD/kT");
  for (double T = 275.0; T <= 325.0; T += 5.0) {
    std::printf("%6.0f %10.4f %10.4f %10.4f\n", T, kie_qtst(w0, wb, T, Isotope::H, Isotope::D).ratio,
                kie_qtst(w0, wb, T, Isotope::H, Isotope::T).ratio, kie_qtst(w0, wb, T, Isotope::D, Isotope::T).ratio);
  }
  for (auto [l, h] : {std::pair{Isotope::H, Isotope::T}, std::pair{Isotope::D, Isotope::T}}) {
    const auto a = apparent_arrhenius(w0, wb, 288.0, l, h);
    std::printf("%s: A ratio %.3f, dE %.2f kJ/mol\n", to_string(IsotopePair{l, h}).c_str(), a.prefactor_ratio, a.dE);
  }
}
