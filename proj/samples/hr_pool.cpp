// Primitive Gram form on a pool of boxes in R^4, relative to the axis-cube ball.

#include <iostream>

#include "mvhr/hrcheck.hpp"
#include "mvhr/instances.hpp"

using namespace mvhr;

int main(int argc, char** argv) {
  std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 7;
  Rng rng(seed);
  std::vector<Zonotope> pool;
  for (int i = 0; i < 5; ++i) pool.push_back(random_box(rng, 4));
  CheckReport r = check_hr_psd(pool, 4, 4, 0);
  std::cout << "verdict      " << verdict_name(r.verdict) << '\n'
            << "kernel dim   " << r.extras["kernel_dim"] << " of " << r.extras["pairs"] << '\n'
            << "min form     " << to_string(r.deficit) << '\n'
            << "eigenvalues  " << r.extras["eigenvalues"].dump() << '\n';
  return r.ok() ? 0 : 1;
}
