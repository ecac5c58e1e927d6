#include "pixelport/image_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "pixelport/errors.hpp"

namespace pixelport::io {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Next line that is neither blank nor a comment.
bool next_content_line(std::istream& in, std::string& line, int& line_no) {
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    line = trim(raw);
    if (!line.empty() && line[0] != '#') return true;
  }
  return false;
}

std::vector<double> parse_row(const std::string& line, std::size_t expected, int line_no) {
  std::vector<double> out;
  out.reserve(expected);
  std::size_t pos = 0;
  while (pos <= line.size()) {
    auto comma = line.find(',', pos);
    if (comma == std::string::npos) comma = line.size();
    const std::string field = trim(std::string_view(line).substr(pos, comma - pos));
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) {
      throw IoError("line " + std::to_string(line_no) + ": bad number '" + field + "'");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  if (out.size() != expected) {
    throw IoError("line " + std::to_string(line_no) + ": expected " + std::to_string(expected) +
                  " values, found " + std::to_string(out.size()));
  }
  return out;
}

void write_comments(std::ostream& out, const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
}

}  // namespace

std::string_view encoding_name(ImageEncoding e) {
  return e == ImageEncoding::ReIm ? "re_im" : "amp_phase";
}

ImageEncoding parse_encoding(std::string_view name) {
  if (name == "re_im") return ImageEncoding::ReIm;
  if (name == "amp_phase") return ImageEncoding::AmpPhase;
  throw IoError("unknown image encoding '" + std::string(name) + "'");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ComplexGrid read_complex_image(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_content_line(in, line, line_no) || line != kImageMagic) {
    throw IoError("missing '" + std::string(kImageMagic) + "' header");
  }
  if (!next_content_line(in, line, line_no)) throw IoError("missing width/height line");
  int width = 0, height = 0;
  {
    std::istringstream ss(line);
    std::string extra;
    if (!(ss >> width >> height) || (ss >> extra) || width < 1 || height < 1) {
      throw IoError("line " + std::to_string(line_no) + ": bad width/height '" + line + "'");
    }
  }
  if (!next_content_line(in, line, line_no)) throw IoError("missing encoding line");
  const ImageEncoding encoding = parse_encoding(line);

  ComplexGrid grid(width, height);
  const auto w = static_cast<std::size_t>(width);
  auto require_row = [&] {
    if (!next_content_line(in, line, line_no)) {
      throw IoError("payload ended early: header declares " + std::to_string(width) + "x" +
                    std::to_string(height));
    }
  };
  if (encoding == ImageEncoding::ReIm) {
    for (int j = 0; j < height; ++j) {
      require_row();
      const auto row = parse_row(line, 2 * w, line_no);
      for (int i = 0; i < width; ++i) grid.at(i, j) = {row[2 * i], row[2 * i + 1]};
    }
  } else {
    std::vector<double> amp(grid.values.size());
    for (int j = 0; j < height; ++j) {
      require_row();
      const auto row = parse_row(line, w, line_no);
      for (int i = 0; i < width; ++i) {
        if (row[i] < 0.0) throw IoError("line " + std::to_string(line_no) + ": negative amplitude");
        amp[j * w + i] = row[i];
      }
    }
    for (int j = 0; j < height; ++j) {
      require_row();
      const auto row = parse_row(line, w, line_no);
      for (int i = 0; i < width; ++i) {
        if (std::abs(row[i]) > std::numbers::pi + 1e-12) {
          throw IoError("line " + std::to_string(line_no) + ": phase outside [-pi, pi)");
        }
        grid.at(i, j) = std::polar(amp[j * w + i], row[i]);
      }
    }
  }
  if (next_content_line(in, line, line_no)) {
    throw IoError("line " + std::to_string(line_no) + ": data beyond declared " +
                  std::to_string(width) + "x" + std::to_string(height) + " payload");
  }
  return grid;
}

ComplexGrid read_complex_image(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  try {
    return read_complex_image(in);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_complex_image(std::ostream& out, const ComplexGrid& image, ImageEncoding encoding,
                         const std::vector<std::string>& comments) {
  if (image.width < 1 || image.height < 1 ||
      image.values.size() != static_cast<std::size_t>(image.width) * image.height) {
    throw DimensionError("image shape does not match its payload");
  }
  write_comments(out, comments);
  out << kImageMagic << '\n' << image.width << ' ' << image.height << '\n' << encoding_name(encoding) << '\n';
  if (encoding == ImageEncoding::ReIm) {
    for (int j = 0; j < image.height; ++j) {
      for (int i = 0; i < image.width; ++i) {
        if (i) out << ',';
        out << format_double(image.at(i, j).real()) << ',' << format_double(image.at(i, j).imag());
      }
      out << '\n';
    }
    return;
  }
  for (int j = 0; j < image.height; ++j) {
    for (int i = 0; i < image.width; ++i) out << (i ? "," : "") << format_double(std::abs(image.at(i, j)));
    out << '\n';
  }
  for (int j = 0; j < image.height; ++j) {
    for (int i = 0; i < image.width; ++i) {
      double phase = std::arg(image.at(i, j));
      if (phase >= std::numbers::pi) phase = -std::numbers::pi;
      out << (i ? "," : "") << format_double(phase);
    }
    out << '\n';
  }
}

void write_complex_image(const std::filesystem::path& path, const ComplexGrid& image,
                         ImageEncoding encoding, const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  write_complex_image(out, image, encoding, comments);
}

void write_fidelity_map(std::ostream& out, const FidelityMap& map, const SqueezingProfile& profile,
                        const std::vector<std::string>& comments) {
  if (!(map.geometry == profile.geometry) || map.per_pixel_fidelity.size() != map.geometry.size()) {
    throw DimensionError("fidelity map and squeezing profile grids differ");
  }
  write_comments(out, comments);
  out << "# image_fidelity=" << format_double(map.image_fidelity) << '\n';
  out << "col,row,x,y,r,fidelity\n";
  for (std::size_t k = 0; k < map.geometry.size(); ++k) {
    const PixelIndex p = map.geometry.unflat(k);
    const Vec2 c = pixel_center(p, map.geometry);
    out << p.i << ',' << p.j << ',' << format_double(c.x) << ',' << format_double(c.y) << ','
        << format_double(profile.r[k]) << ',' << format_double(map.per_pixel_fidelity[k]) << '\n';
  }
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    if (!kv.emplace(key, value).second) {
      throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  return kv;
}

std::map<std::string, std::string> parse_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  return parse_key_values(in);
}

}  // namespace pixelport::io
