#include "planesearch/random.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace planesearch {

std::uint64_t RandomSource::mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : engine_(mix(mix(seed) ^ mix(stream + 0x5bd1e995ULL))) {}

// Distributions are written out by hand rather than through <random> so the
// sequences do not depend on the standard library implementation.
double RandomSource::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double RandomSource::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double RandomSource::normal() {
  // Marsaglia polar method, one value per call.
  for (;;) {
    const double a = 2.0 * uniform() - 1.0;
    const double b = 2.0 * uniform() - 1.0;
    const double s = a * a + b * b;
    if (s > 0.0 && s < 1.0) return a * std::sqrt(-2.0 * std::log(s) / s);
  }
}

Vector RandomSource::uniform_point(int dim) {
  Vector x(dim);
  for (int k = 0; k < dim; ++k) x(k) = uniform();
  return x;
}

Vector RandomSource::normal_vector(int dim) {
  Vector x(dim);
  for (int k = 0; k < dim; ++k) x(k) = normal();
  return x;
}

std::string RandomSource::state() const {
  std::ostringstream out;
  out << engine_;
  return out.str();
}

void RandomSource::set_state(const std::string& state) {
  std::istringstream in(state);
  in >> engine_;
  if (!in) throw std::invalid_argument("RandomSource: malformed engine state");
}

}  // namespace planesearch
