// Writes reference (pixel, params) -> output vectors for client renderers.
//
//   enhance_golden --count 1200 --seed 7 --out tests/data/enhance_golden.json

#include "planesearch/gallery/image.hpp"
#include "planesearch/json_io.hpp"
#include "planesearch/random.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace planesearch;
using namespace planesearch::gallery;

namespace {

Json make_vector(const std::array<int, 3>& pixel, const EnhanceParams& params) {
  const Rgb in{pixel[0] / 255.0, pixel[1] / 255.0, pixel[2] / 255.0};
  const Rgb out = apply_enhancement(in, params);
  Json p = Json::array();
  for (double v : params.values) p.push_back(v);
  return {{"rgb", pixel},
          {"params", std::move(p)},
          {"expected", out},
          {"expected_8bit", {quantize(out[0]), quantize(out[1]), quantize(out[2])}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate golden vectors for the enhancement pipeline"};
  int count = 1200;
  std::uint64_t seed = 7;
  std::string out_path;
  app.add_option("--count", count, "Number of random vectors")->check(CLI::Range(1, 10'000'000));
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--out", out_path, "Output JSON file")->required();
  CLI11_PARSE(app, argc, argv);

  RandomSource rng(seed);
  Json vectors = Json::array();

  // Fixed cases first: neutral, single-parameter extremes, pure colors.
  const std::array<std::array<int, 3>, 6> fixed_pixels{{{0, 0, 0}, {255, 255, 255}, {128, 128, 128},
                                                         {255, 0, 0}, {0, 255, 0}, {20, 90, 200}}};
  for (const auto& px : fixed_pixels) {
    vectors.push_back(make_vector(px, EnhanceParams::neutral()));
    for (int k = 0; k < EnhanceParams::size; ++k)
      for (double extreme : {0.0, 1.0}) {
        EnhanceParams p = EnhanceParams::neutral();
        p.values[static_cast<std::size_t>(k)] = extreme;
        vectors.push_back(make_vector(px, p));
      }
  }
  for (int n = 0; n < count; ++n) {
    std::array<int, 3> px;
    for (int& c : px) c = static_cast<int>(rng.next_u64() % 256);
    EnhanceParams p;
    for (double& v : p.values) v = rng.uniform();
    vectors.push_back(make_vector(px, p));
  }

  const Json doc{{"format", "rgb is 8-bit input; expected is the unquantized output in [0,1]; expected_8bit rounds "
                            "expected * 255 to nearest"},
                 {"vectors", std::move(vectors)}};
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "enhance_golden: cannot open " << out_path << "\n";
    return 1;
  }
  out << doc.dump(1) << "\n";
  return 0;
}
