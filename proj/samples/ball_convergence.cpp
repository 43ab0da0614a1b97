// How the zonotopal ball approximants converge: support deviation and gamma_2, gamma_3.

#include <cstdio>

#include "mvhr/ball.hpp"
#include "mvhr/valg.hpp"

using namespace mvhr;

int main() {
  std::printf("%-4s %-6s %-22s %-22s\n", "n", "m", "delta", "gamma_n");
  for (std::size_t m : {8u, 16u, 32u, 64u}) {
    auto b = make_ball(2, m);
    std::printf("%-4d %-6zu %-22s %-22s\n", 2, m, to_decimal(b->delta, 10).c_str(),
                to_decimal(gamma_n(2, b->body), 10).c_str());
  }
  for (std::size_t m : {3u, 6u, 9u, 12u}) {
    auto b = make_ball(3, m, 1);
    std::printf("%-4d %-6zu %-22s %-22s\n", 3, m, to_decimal(b->delta, 10).c_str(),
                to_decimal(gamma_n(3, b->body), 10).c_str());
  }
}
