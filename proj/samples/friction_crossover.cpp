// How Drude friction lowers the effective barrier frequency and the crossover
// temperature, and what that does to the quantum-corrected rate at 300 K.

#include <cstdio>

#include "qtst/qtst.hpp"

int main() {
  using namespace qtst;
  const BarrierSystem sys{3000.0, 1000.0, 40.0, Isotope::H};
  std::printf("%8s %8s %10s %8s %12s %10s\n", "gamma", "omega_D", "mu", "T0/K", "k(300K)/s^-1", "c_qm");
  for (double wD : {50.0, 5000.0}) {
    for (double g : {0.0, 250.0, 1000.0, 4000.0}) {
      const spectral::Drude m{g, wD};
      const auto eb = effective_barrier_frequency(sys, m);
      const auto r = quantum_rate(sys, m, 300.0);
      std::printf("%8.0f %8.0f %10.3f %8.2f %12.4e %10.3f\n", g, wD, eb.mu, eb.T0, r.rate.per_second, r.c_qm);
    }
  }
}
