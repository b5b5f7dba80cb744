// WKB transmission through three barriers of the same 40 kJ/mol height.

#include <cstdio>

#include "qtst/qtst.hpp"

int main() {
  using namespace qtst::wkb;
  const Potential1D barriers[] = {Parabolic{40.0, 1000.0, 1.0}, Eckart{40.0, 0.5, 1.0}, Cubic{3000.0, 40.0, 1.0}};
  const char* names[] = {"parabolic", "eckart", "cubic"};
  std::printf("%6s %14s %14s %14s\n", "E/Eb", names[0], names[1], names[2]);
  for (double f = 0.1; f < 0.95; f += 0.1) {
    std::printf("%6.2f", f);
    for (const auto& U : barriers) std::printf(" %14.6e", transmission(U, f * 40.0));
    std::printf("\n");
  }
}
