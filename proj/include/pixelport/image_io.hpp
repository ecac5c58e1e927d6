#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pixelport/cv_teleport.hpp"
#include "pixelport/pixel_modes.hpp"

namespace pixelport::io {

// Complex image text format:
//
//   # optional comment lines (anywhere; ignored on read)
//   PIXELPORT_COMPLEX_IMAGE 1
//   <width> <height>
//   re_im | amp_phase
//   payload
//
// re_im payload: `height` rows of 2*width comma-separated numbers re,im,re,im,...
// amp_phase payload: `height` rows of amplitudes (>= 0) followed by `height`
// rows of phases in [-pi, pi).

inline constexpr std::string_view kImageMagic = "PIXELPORT_COMPLEX_IMAGE 1";

enum class ImageEncoding { ReIm, AmpPhase };

std::string_view encoding_name(ImageEncoding e);
ImageEncoding parse_encoding(std::string_view name);

/// Shortest text that reads back to the same double ("%.17g").
std::string format_double(double v);

ComplexGrid read_complex_image(std::istream& in);
ComplexGrid read_complex_image(const std::filesystem::path& path);

void write_complex_image(std::ostream& out, const ComplexGrid& image, ImageEncoding encoding,
                         const std::vector<std::string>& comments = {});
void write_complex_image(const std::filesystem::path& path, const ComplexGrid& image,
                         ImageEncoding encoding, const std::vector<std::string>& comments = {});

/// CSV: col,row,x,y,r,fidelity (pixel centers from the map geometry).
void write_fidelity_map(std::ostream& out, const FidelityMap& map, const SqueezingProfile& profile,
                        const std::vector<std::string>& comments = {});

/// Flat key=value text. '#' starts a comment; blank lines are skipped.
/// Throws ConfigError on malformed lines or duplicate keys.
std::map<std::string, std::string> parse_key_values(std::istream& in);
std::map<std::string, std::string> parse_key_values(const std::filesystem::path& path);

}  // namespace pixelport::io
