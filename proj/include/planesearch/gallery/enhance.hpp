#pragma once

// Reference photo-enhancement pipeline with 12 parameters in [0,1], all
// neutral at 0.5. Clients rendering previews must reproduce these formulas.
//
//  1. brightness  c += 0.6 (b - 0.5)
//  2. contrast    c = 0.5 + (c - 0.5) 2^(2 (k - 0.5))
//  3. saturation  L = 0.299 R + 0.587 G + 0.114 B;  c = L + (c - L) 2^(2 (s - 0.5))
//  4. balance     L recomputed; w_sh = (1 - L)^2, w_mid = 2 L (1 - L), w_hl = L^2;
//                 c += 0.4 sum_region w_region (p_region,channel - 0.5)
//  5. clamp to [0, 1]

#include "planesearch/types.hpp"

#include <array>

namespace planesearch::gallery {

enum class Region { shadows = 0, midtones = 1, highlights = 2 };
enum class Channel { red = 0, green = 1, blue = 2 };

/// brightness, contrast, saturation, then balance[region][channel] row-major.
struct EnhanceParams {
  static constexpr int size = 12;
  std::array<double, size> values;

  static EnhanceParams neutral();
  static EnhanceParams from_vector(const Vector& x);
  Vector to_vector() const;

  double brightness() const { return values[0]; }
  double contrast() const { return values[1]; }
  double saturation() const { return values[2]; }
  double balance(Region region, Channel channel) const {
    return values[3 + 3 * static_cast<int>(region) + static_cast<int>(channel)];
  }
  double& balance(Region region, Channel channel) {
    return values[3 + 3 * static_cast<int>(region) + static_cast<int>(channel)];
  }

  bool operator==(const EnhanceParams&) const = default;
};

using Rgb = std::array<double, 3>;

Rgb apply_enhancement(const Rgb& rgb, const EnhanceParams& params);

}  // namespace planesearch::gallery
