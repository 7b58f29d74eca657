#include "planesearch/gallery/enhance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace planesearch::gallery {

EnhanceParams EnhanceParams::neutral() {
  EnhanceParams p;
  p.values.fill(0.5);
  return p;
}

EnhanceParams EnhanceParams::from_vector(const Vector& x) {
  if (x.size() != size) throw std::invalid_argument("EnhanceParams: expected 12 values");
  EnhanceParams p;
  for (int k = 0; k < size; ++k) p.values[static_cast<std::size_t>(k)] = x(k);
  return p;
}

Vector EnhanceParams::to_vector() const {
  Vector x(size);
  for (int k = 0; k < size; ++k) x(k) = values[static_cast<std::size_t>(k)];
  return x;
}

namespace {

double luminance(const Rgb& c) { return 0.299 * c[0] + 0.587 * c[1] + 0.114 * c[2]; }

}  // namespace

// Every step is written as c + delta with delta exactly zero at neutral
// settings, so neutral parameters reproduce the input bit for bit.
Rgb apply_enhancement(const Rgb& rgb, const EnhanceParams& params) {
  for (double c : rgb)
    if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("apply_enhancement: pixel outside [0,1]");
  for (double p : params.values)
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("apply_enhancement: parameter outside [0,1]");

  Rgb c = rgb;
  const double shift = 0.6 * (params.brightness() - 0.5);
  for (double& x : c) x += shift;

  const double contrast = std::exp2(2.0 * (params.contrast() - 0.5)) - 1.0;
  for (double& x : c) x += (x - 0.5) * contrast;

  const double saturation = std::exp2(2.0 * (params.saturation() - 0.5)) - 1.0;
  const double l1 = luminance(c);
  for (double& x : c) x += (x - l1) * saturation;

  const double l2 = luminance(c);
  const double w_sh = (1.0 - l2) * (1.0 - l2);
  const double w_mid = 2.0 * l2 * (1.0 - l2);
  const double w_hl = l2 * l2;
  for (int ch = 0; ch < 3; ++ch) {
    const auto channel = static_cast<Channel>(ch);
    c[static_cast<std::size_t>(ch)] += 0.4 * (w_sh * (params.balance(Region::shadows, channel) - 0.5) +
                                              w_mid * (params.balance(Region::midtones, channel) - 0.5) +
                                              w_hl * (params.balance(Region::highlights, channel) - 0.5));
  }

  for (double& x : c) x = std::clamp(x, 0.0, 1.0);
  return c;
}

}  // namespace planesearch::gallery
