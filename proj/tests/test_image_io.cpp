#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "pixelport/errors.hpp"
#include "pixelport/image_io.hpp"

using namespace pixelport;
using namespace pixelport::io;

namespace {

ComplexGrid random_grid(int w, int h, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 3.0);
  ComplexGrid g(w, h);
  for (auto& v : g.values) v = {n(rng), n(rng)};
  return g;
}

ComplexGrid read_text(const std::string& text) {
  std::istringstream in(text);
  return read_complex_image(in);
}

}  // namespace

TEST(ImageIo, ReImRoundTripIsExact) {
  const ComplexGrid g = random_grid(7, 4, 1);
  std::ostringstream out;
  write_complex_image(out, g, ImageEncoding::ReIm, {"a comment", "seed=1"});
  const ComplexGrid back = read_text(out.str());
  EXPECT_EQ(back.width, 7);
  EXPECT_EQ(back.height, 4);
  EXPECT_EQ(back.values, g.values);
}

TEST(ImageIo, WriteReadWriteFixpoint) {
  std::ostringstream first;
  write_complex_image(first, random_grid(5, 6, 2), ImageEncoding::ReIm);
  std::ostringstream second;
  write_complex_image(second, read_text(first.str()), ImageEncoding::ReIm);
  EXPECT_EQ(first.str(), second.str());
}

TEST(ImageIo, AmpPhaseSettlesAfterOnePass) {
  // polar() and abs()/arg() do not invert each other bit for bit, so the
  // first re-read can move the last digit; after that the text is stable.
  std::ostringstream first;
  write_complex_image(first, random_grid(5, 6, 2), ImageEncoding::AmpPhase);
  std::string prev = first.str();
  std::string next;
  for (int pass = 0; pass < 4; ++pass) {
    std::ostringstream out;
    write_complex_image(out, read_text(prev), ImageEncoding::AmpPhase);
    next = out.str();
    if (next == prev) break;
    prev = next;
  }
  EXPECT_EQ(next, prev);
  const ComplexGrid a = read_text(first.str()), b = read_text(next);
  for (std::size_t k = 0; k < a.values.size(); ++k) EXPECT_LT(std::abs(a.values[k] - b.values[k]), 1e-14);
}

TEST(ImageIo, AmpPhaseValues) {
  const ComplexGrid g = read_text(
      "PIXELPORT_COMPLEX_IMAGE 1\n2 1\namp_phase\n"
      "1, 2\n"
      "0, 1.5707963267948966\n");
  EXPECT_EQ(g.at(0, 0), Amplitude(1.0));
  EXPECT_NEAR(g.at(1, 0).real(), 0.0, 1e-15);
  EXPECT_EQ(g.at(1, 0).imag(), 2.0);
}

TEST(ImageIo, PhaseWrapsIntoHalfOpenInterval) {
  ComplexGrid g(1, 1);
  g.at(0, 0) = {-1.0, 0.0};
  std::ostringstream out;
  write_complex_image(out, g, ImageEncoding::AmpPhase);
  const std::string text = out.str();
  EXPECT_NE(text.find("-3.1415926535897931"), std::string::npos);
}

TEST(ImageIo, CommentsAndBlankLinesIgnored) {
  const ComplexGrid g = read_text(
      "# header comment\n\nPIXELPORT_COMPLEX_IMAGE 1\n# size\n1 2\nre_im\n1,2\n# mid\n3,4\n\n");
  EXPECT_EQ(g.at(0, 1), Amplitude(3.0, 4.0));
}

TEST(ImageIo, Errors) {
  const char* bad[] = {
      "",
      "NOT_AN_IMAGE\n1 1\nre_im\n1,2\n",
      "PIXELPORT_COMPLEX_IMAGE 1\n0 1\nre_im\n",
      "PIXELPORT_COMPLEX_IMAGE 1\n1 1 1\nre_im\n1,2\n",
      "PIXELPORT_COMPLEX_IMAGE 1\n1 1\nhsv\n1,2\n",
      "PIXELPORT_COMPLEX_IMAGE 1\n2 1\nre_im\n1,2,3\n",
      "PIXELPORT_COMPLEX_IMAGE 1\n1 2\nre_im\n1,2\n",
      "PIXELPORT_COMPLEX_IMAGE 1\n1 1\nre_im\n1,2\n3,4\n",
      "PIXELPORT_COMPLEX_IMAGE 1\n1 1\nre_im\n1,x\n",
      "PIXELPORT_COMPLEX_IMAGE 1\n1 1\nre_im\n1,nan\n",
      "PIXELPORT_COMPLEX_IMAGE 1\n1 1\namp_phase\n-1\n0\n",
      "PIXELPORT_COMPLEX_IMAGE 1\n1 1\namp_phase\n1\n4\n",
  };
  for (const char* text : bad) EXPECT_THROW(read_text(text), IoError) << text;
  EXPECT_THROW(read_complex_image(std::filesystem::path("/nonexistent/x.cimg")), IoError);
}

TEST(ImageIo, WriteRejectsInconsistentGrid) {
  ComplexGrid g(2, 2);
  g.values.pop_back();
  std::ostringstream out;
  EXPECT_THROW(write_complex_image(out, g, ImageEncoding::ReIm), DimensionError);
}

TEST(ImageIo, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) EXPECT_EQ(std::stod(format_double(v)), v);
}

TEST(FidelityMapCsv, Layout) {
  const auto g = GridGeometry::centered(2, 2, 1.0);
  const SqueezingProfile prof = SqueezingProfile::uniform(g, 1.0);
  const FidelityMap map{g, {0.6, 0.7, 0.8, 0.9}, 0.75};
  std::ostringstream out;
  write_fidelity_map(out, map, prof, {"k=v"});
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# k=v");
  std::getline(in, line);
  EXPECT_EQ(line, "# image_fidelity=0.75");
  std::getline(in, line);
  EXPECT_EQ(line, "col,row,x,y,r,fidelity");
  std::getline(in, line);
  EXPECT_EQ(line, "0,0,-0.5,-0.5,1,0.59999999999999998");
  const SqueezingProfile other = SqueezingProfile::uniform(GridGeometry::centered(2, 1, 1.0), 1.0);
  EXPECT_THROW(write_fidelity_map(out, map, other), DimensionError);
}

TEST(KeyValues, Parsing) {
  std::istringstream in("# comment\n a = 1 \n\nb=two # trailing\nempty=\n");
  const auto kv = parse_key_values(in);
  EXPECT_EQ(kv.at("a"), "1");
  EXPECT_EQ(kv.at("b"), "two");
  EXPECT_EQ(kv.at("empty"), "");
  std::istringstream dup("a=1\na=2\n");
  EXPECT_THROW(parse_key_values(dup), ConfigError);
  std::istringstream no_eq("just words\n");
  EXPECT_THROW(parse_key_values(no_eq), ConfigError);
  std::istringstream no_key("=3\n");
  EXPECT_THROW(parse_key_values(no_key), ConfigError);
  EXPECT_THROW(parse_key_values(std::filesystem::path("/nonexistent/cfg")), IoError);
}
